#ifndef COVSTAT_FOUR_VECTOR_HPP
#define COVSTAT_FOUR_VECTOR_HPP

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace covstat {

/// Plain spatial 3-vector, used for boost velocities and spatial slices.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

/// Contravariant Minkowski 4-vector with metric signature (+,-,-,-).
/// Components are stored contravariant; covariant components are obtained
/// by applying the metric on demand (see lower()).
struct FourVector {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr FourVector() = default;
    constexpr FourVector(double t_, double x_, double y_, double z_) : t(t_), x(x_), y(y_), z(z_) {}

    Vec3 spatial() const { return {x, y, z}; }

    FourVector operator+(const FourVector& o) const { return {t + o.t, x + o.x, y + o.y, z + o.z}; }
    FourVector operator-(const FourVector& o) const { return {t - o.t, x - o.x, y - o.y, z - o.z}; }
    FourVector operator*(double s) const { return {t * s, x * s, y * s, z * s}; }
    FourVector operator-() const { return {-t, -x, -y, -z}; }
    FourVector& operator+=(const FourVector& o) {
        t += o.t;
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
};

inline FourVector operator*(double s, const FourVector& a) { return a * s; }

/// Minkowski contraction a^mu b_mu with the fixed (+,-,-,-) metric.
inline constexpr double dot(const FourVector& a, const FourVector& b) {
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

/// Apply the metric: maps contravariant components to covariant ones
/// (and vice versa, the metric being its own inverse here).
inline constexpr FourVector lower(const FourVector& a) { return {a.t, -a.x, -a.y, -a.z}; }

/// Euclidean magnitude of the component tuple, for error normalization only.
inline double component_norm(const FourVector& a) {
    return std::sqrt(a.t * a.t + a.x * a.x + a.y * a.y + a.z * a.z);
}

/// Pure (active) Lorentz boost of a 4-vector by velocity v, |v| < 1 in units of c.
/// Preserves the Minkowski dot product of any pair of vectors.
inline FourVector boost(const FourVector& a, const Vec3& v) {
    const double v2 = v.norm2();
    if (v2 >= 1.0) throw std::domain_error("boost: |velocity| must be < 1");
    const double gamma = 1.0 / std::sqrt(1.0 - v2);
    const Vec3 r = a.spatial();
    const double vr = dot(v, r);
    // (gamma-1)/v^2 written as gamma^2/(gamma+1), which stays finite as v -> 0.
    const double k = gamma * gamma / (gamma + 1.0);
    const Vec3 rp = r + v * (k * vr + gamma * a.t);
    return {gamma * (a.t + vr), rp.x, rp.y, rp.z};
}

inline std::ostream& operator<<(std::ostream& os, const FourVector& a) {
    return os << "(" << a.t << ", " << a.x << ", " << a.y << ", " << a.z << ")";
}

} // namespace covstat

#endif // COVSTAT_FOUR_VECTOR_HPP
