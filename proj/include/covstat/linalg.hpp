#ifndef COVSTAT_LINALG_HPP
#define COVSTAT_LINALG_HPP

#include <cmath>
#include <vector>

#include "covstat/errors.hpp"

namespace covstat {

/// Small dense square matrix with LU solve, sized for constraint systems
/// (a handful of particles, so O(n^3) with partial pivoting is plenty).
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    Matrix transposed() const {
        Matrix t(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Solve A x = rhs by LU with partial pivoting. Throws on singularity.
    std::vector<double> solve(std::vector<double> rhs) const;

    /// Full inverse (via n solves). Throws on singularity.
    Matrix inverse() const;

    /// 1-norm condition number ||A||_1 ||A^{-1}||_1.
    double condition_number() const;

    double norm1() const {
        double best = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            double col = 0.0;
            for (std::size_t i = 0; i < n_; ++i) col += std::fabs((*this)(i, j));
            best = std::max(best, col);
        }
        return best;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

} // namespace covstat

#endif // COVSTAT_LINALG_HPP
