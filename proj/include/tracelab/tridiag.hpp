#pragma once
#include <vector>

namespace tracelab {

// Number of eigenvalues of the symmetric tridiagonal matrix (diag, off)
// strictly below x, by counting negative pivots of the LDL^T factorization of
// T - xI.  off2 holds the squared off-diagonal entries.  Pivots are floored at
// 1e-300 in magnitude so the recurrence cannot divide by zero.
int sturm_count_below(const std::vector<double>& diag,
                      const std::vector<double>& off2, double x);

// All eigenvalues, ascending, each located to absolute tolerance tol by
// Sturm-count bisection on the Gershgorin interval.  off must have size
// diag.size()-1 (size 0 is allowed for a 1x1 matrix).
std::vector<double> tridiag_eigenvalues(const std::vector<double>& diag,
                                        const std::vector<double>& off,
                                        double tol = 1e-10);

}  // namespace tracelab
