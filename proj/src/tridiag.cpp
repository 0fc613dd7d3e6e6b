#include "tracelab/tridiag.hpp"

#include <algorithm>
#include <cmath>

#include "tracelab/errors.hpp"

namespace tracelab {

namespace {
constexpr double PIVOT_FLOOR = 1e-300;
}

int sturm_count_below(const std::vector<double>& diag,
                      const std::vector<double>& off2, double x) {
  int count = 0;
  double d = diag[0] - x;
  if (d < 0) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    if (std::fabs(d) < PIVOT_FLOOR) d = (d < 0) ? -PIVOT_FLOOR : PIVOT_FLOOR;
    d = (diag[i] - x) - off2[i - 1] / d;
    if (d < 0) ++count;
  }
  return count;
}

std::vector<double> tridiag_eigenvalues(const std::vector<double>& diag,
                                        const std::vector<double>& off,
                                        double tol) {
  const std::size_t n = diag.size();
  if (n == 0) throw InvalidArgument("tridiag: empty diagonal");
  if (off.size() + 1 != n)
    throw InvalidArgument("tridiag: off-diagonal size must be L-1");
  if (!(tol > 0)) throw InvalidArgument("tridiag: tolerance must be positive");
  if (n == 1) return {diag[0]};

  std::vector<double> off2(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) off2[i] = off[i] * off[i];

  // Gershgorin bounds with a little slack
  double lo = diag[0], hi = diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0;
    if (i > 0) r += std::fabs(off[i - 1]);
    if (i + 1 < n) r += std::fabs(off[i]);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  double slack = 1e-6 * std::max(1.0, hi - lo) + tol;
  lo -= slack;
  hi += slack;

  struct Task {
    double lo, hi;
    int clo, chi;  // sturm counts at the endpoints
  };
  std::vector<Task> stack;
  stack.push_back({lo, hi, sturm_count_below(diag, off2, lo),
                   sturm_count_below(diag, off2, hi)});

  std::vector<double> out;
  out.reserve(n);
  while (!stack.empty()) {
    Task t = stack.back();
    stack.pop_back();
    int k = t.chi - t.clo;
    if (k <= 0) continue;
    double width = t.hi - t.lo;
    double mid = 0.5 * (t.lo + t.hi);
    if (width < tol || mid <= t.lo || mid >= t.hi) {
      // interval resolved (or at floating-point resolution); k eigenvalues here
      for (int j = 0; j < k; ++j) out.push_back(mid);
      continue;
    }
    int cm = sturm_count_below(diag, off2, mid);
    cm = std::clamp(cm, t.clo, t.chi);  // keep counts consistent under clamping
    // push right first so the left half is processed first (ascending output)
    if (t.chi - cm > 0) stack.push_back({mid, t.hi, cm, t.chi});
    if (cm - t.clo > 0) stack.push_back({t.lo, mid, t.clo, cm});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tracelab
