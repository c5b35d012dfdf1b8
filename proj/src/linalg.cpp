#include "covstat/linalg.hpp"

#include <algorithm>

namespace covstat {

std::vector<double> Matrix::solve(std::vector<double> rhs) const {
    const std::size_t n = n_;
    std::vector<double> lu = a_;
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::fabs(lu[piv[k] * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::fabs(lu[piv[i] * n + k]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0) throw singular_matrix_error("Matrix::solve: exactly singular matrix");
        std::swap(piv[k], piv[p]);
        const double pivot = lu[piv[k] * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu[piv[i] * n + k] / pivot;
            lu[piv[i] * n + k] = f;
            for (std::size_t j = k + 1; j < n; ++j) lu[piv[i] * n + j] -= f * lu[piv[k] * n + j];
        }
    }

    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = rhs[piv[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu[piv[i] * n + j] * y[j];
        y[i] = s;
    }
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= lu[piv[ii] * n + j] * x[j];
        x[ii] = s / lu[piv[ii] * n + ii];
    }
    return x;
}

Matrix Matrix::inverse() const {
    Matrix inv(n_);
    std::vector<double> e(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
        e[j] = 1.0;
        const std::vector<double> col = solve(e);
        e[j] = 0.0;
        for (std::size_t i = 0; i < n_; ++i) inv(i, j) = col[i];
    }
    return inv;
}

double Matrix::condition_number() const {
    return norm1() * inverse().norm1();
}

} // namespace covstat
