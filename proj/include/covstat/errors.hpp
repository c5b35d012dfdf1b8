#ifndef COVSTAT_ERRORS_HPP
#define COVSTAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace covstat {

/// Two independent numerical routes disagreed beyond the allowed bound.
class accuracy_error : public std::runtime_error {
public:
    explicit accuracy_error(const std::string& what) : std::runtime_error(what) {}
};

/// An integrand or phase function produced a non-finite value.
class evaluation_error : public std::runtime_error {
public:
    explicit evaluation_error(const std::string& what) : std::runtime_error(what) {}
};

/// A bracket matrix (or projection Jacobian) is singular or numerically unusable.
class singular_matrix_error : public std::runtime_error {
public:
    explicit singular_matrix_error(const std::string& what) : std::runtime_error(what) {}
};

/// Newton projection onto the constraint manifold failed to converge.
class projection_error : public std::runtime_error {
public:
    explicit projection_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace covstat

#endif // COVSTAT_ERRORS_HPP
