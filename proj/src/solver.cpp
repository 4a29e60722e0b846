#include "bspapa/solver.hpp"

#include <cfloat>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace bspapa {

std::vector<double> solve_regularized(const Matrix& a, double delta, std::span<const double> e) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("solve_regularized: matrix is not square");
    if (e.size() != n) throw std::invalid_argument("solve_regularized: right-hand side length mismatch");
    if (!(delta >= 0.0)) throw std::invalid_argument("solve_regularized: regularization must be nonnegative");

    Matrix lu = a;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        lu(i, i) += delta;
    }
    for (double v : lu.data()) scale = std::max(scale, std::abs(v));
    const double tiny = scale * static_cast<double>(n) * DBL_EPSILON;

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot_row = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(pivot_row, k))) pivot_row = i;

        const double pivot = lu(pivot_row, k);
        if (!(std::abs(pivot) > tiny))
            throw SingularSystemError("solve_regularized: singular system, pivot " + std::to_string(pivot) +
                                          " at column " + std::to_string(k),
                                      std::abs(pivot));
        if (pivot_row != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot_row, j));
            std::swap(perm[k], perm[pivot_row]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = lu(i, k) / pivot;
            lu(i, k) = factor;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= factor * lu(k, j);
        }
    }

    // forward substitution with unit-lower L, then back substitution with U
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = e[perm[i]];
        for (std::size_t j = 0; j < i; ++j) acc -= lu(i, j) * z[j];
        z[i] = acc;
    }
    for (std::size_t i = n; i-- > 0;) {
        double acc = z[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= lu(i, j) * z[j];
        z[i] = acc / lu(i, i);
    }
    return z;
}

}  // namespace bspapa
