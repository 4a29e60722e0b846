#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bspapa/matrix.hpp"

namespace bspapa {

/// Raised when the regularized system is singular to working precision.
class SingularSystemError : public std::runtime_error {
public:
    SingularSystemError(const std::string& what, double pivot)
        : std::runtime_error(what), pivot_(pivot) {}

    double pivot() const noexcept { return pivot_; }

private:
    double pivot_;
};

/// Solves (A + delta I) z = e with LU factorization and partial pivoting.
/// A need not be symmetric.
std::vector<double> solve_regularized(const Matrix& a, double delta, std::span<const double> e);

}  // namespace bspapa
