#pragma once
#include <cmath>
#include <cstddef>
#include <vector>

#include "graphnls/errors.hpp"

namespace graphnls::detail {

// Gaussian elimination with partial pivoting for a tridiagonal system.
// Safe for indefinite matrices (fill-in is one extra superdiagonal).
// sub[0] and sup[n-1] are unused.
inline std::vector<double> pivoted_tridiagonal_solve(std::vector<double> sub, std::vector<double> diag,
                                                     std::vector<double> sup, std::vector<double> rhs) {
    const std::size_t n = diag.size();
    std::vector<double> sup2(n, 0.0); // second superdiagonal created by row swaps
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (std::abs(sub[k + 1]) > std::abs(diag[k])) {
            std::swap(diag[k], sub[k + 1]);
            std::swap(sup[k], diag[k + 1]);
            std::swap(sup2[k], sup[k + 1]);
            std::swap(rhs[k], rhs[k + 1]);
        }
        if (diag[k] == 0.0) throw SolverError("pivoted_tridiagonal_solve: singular matrix");
        const double m = sub[k + 1] / diag[k];
        diag[k + 1] -= m * sup[k];
        sup[k + 1] -= m * sup2[k];
        rhs[k + 1] -= m * rhs[k];
    }
    if (diag[n - 1] == 0.0) throw SolverError("pivoted_tridiagonal_solve: singular matrix");
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    if (n >= 2) x[n - 2] = (rhs[n - 2] - sup[n - 2] * x[n - 1]) / diag[n - 2];
    for (std::size_t i = n >= 3 ? n - 3 : 0; n >= 3; --i) {
        x[i] = (rhs[i] - sup[i] * x[i + 1] - sup2[i] * x[i + 2]) / diag[i];
        if (i == 0) break;
    }
    return x;
}

} // namespace graphnls::detail
