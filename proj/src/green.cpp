#include "tracelab/green.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "tracelab/errors.hpp"

namespace tracelab {

namespace {

void validate(const EscapeParams& ep) {
  if (!(ep.r_escape > 1.0) || !std::isfinite(ep.r_escape))
    throw InvalidArgument("escape radius must be finite and > 1");
  if (ep.n_max < 1) throw InvalidArgument("n_max must be >= 1");
  if (!(ep.tol > 0.0) || !std::isfinite(ep.tol))
    throw InvalidArgument("tol must be finite and > 0");
}

double require_lambda(const TraceMap& tm) {
  if (!tm.abelian)
    throw NotHyperbolic("Green functions need a hyperbolic substitution");
  return tm.abelian->lambda;
}

SurfacePoint step(const TraceMap& tm, const SurfacePoint& p, bool forward,
                  int n) {
  try {
    return forward ? trace_map_apply(tm, p) : trace_map_apply_inverse(tm, p);
  } catch (const ExponentOverflow& e) {
    throw ExponentOverflow(std::string(e.what()) + " at iterate " +
                           std::to_string(n));
  }
}

GreenResult green_impl(const TraceMap& tm, const SurfacePoint& p,
                       const EscapeParams& ep, bool forward) {
  double lambda = require_lambda(tm);
  validate(ep);
  const double log_r = std::log(ep.r_escape);
  SurfacePoint q = p;
  double lam_n = 1.0;
  double g = 0.0, prev_g = 0.0;
  bool have_prev = false, escaped = false;
  int streak = 0;
  for (int n = 1; n <= ep.n_max; ++n) {
    q = step(tm, q, forward, n);
    lam_n *= lambda;
    double ln = log_norm(q);
    g = std::max(0.0, ln) / lam_n;
    if (ln > log_r) {
      escaped = true;
      if (have_prev &&
          std::fabs(g - prev_g) < ep.tol * std::max(1.0, std::fabs(prev_g))) {
        if (++streak >= 3) return {g, n, GreenStatus::Converged};
      } else {
        streak = 0;
      }
      have_prev = true;
      prev_g = g;
    } else {
      escaped = false;
      have_prev = false;
      streak = 0;
    }
  }
  if (!escaped) return {0.0, ep.n_max, GreenStatus::BoundedOrbit};
  return {g, ep.n_max, GreenStatus::Inconclusive};
}

}  // namespace

GreenResult green_plus(const TraceMap& tm, const SurfacePoint& p,
                       const EscapeParams& ep) {
  return green_impl(tm, p, ep, true);
}

GreenResult green_minus(const TraceMap& tm, const SurfacePoint& p,
                        const EscapeParams& ep) {
  if (!tm.inverse)
    throw InverseWordsUnavailable("backward Green function needs an inverse");
  return green_impl(tm, p, ep, false);
}

bool in_filled_julia(const TraceMap& tm, const SurfacePoint& p,
                     const EscapeParams& ep) {
  return green_plus(tm, p, ep).status == GreenStatus::BoundedOrbit;
}

namespace {

double residual_impl(const TraceMap& tm, const SurfacePoint& p, double alpha,
                     double beta, int extra_steps, const EscapeParams& ep) {
  validate(ep);
  if (extra_steps < 0) throw InvalidArgument("extra_steps must be >= 0");
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw InvalidArgument("decay constants must be positive");
  const double log_r = std::log(ep.r_escape);
  SurfacePoint q = p;
  int n = 0;
  while (log_norm(q) <= log_r) {
    if (n >= ep.n_max)
      throw NoEscapeDetected("orbit stayed bounded within the budget");
    q = step(tm, q, true, ++n);
  }
  for (int i = 0; i < extra_steps; ++i) q = step(tm, q, true, ++n);

  auto lg = [](const ScaledComplex& c) {
    return c.is_zero() ? -std::numeric_limits<double>::infinity()
                       : c.log_abs();
  };
  std::array<double, 3> l = {lg(q.x), lg(q.y), lg(q.z)};
  int top = int(std::max_element(l.begin(), l.end()) - l.begin());
  double lmax = l[top];
  std::array<double, 2> rest;
  int j = 0;
  for (int i = 0; i < 3; ++i)
    if (i != top) rest[j++] = l[i];
  double lsecond = std::max(rest[0], rest[1]);
  if (!(lsecond - lmax < std::log(0.1)))
    throw NotNearInfinity("dominance ratio " +
                          std::to_string(std::exp(lsecond - lmax)));
  if (!std::isfinite(rest[0]) || !std::isfinite(rest[1]))
    throw NumericalError("degenerate chart coordinate at infinity");

  // minus-log chart coordinates; the faster-decaying one pairs with the
  // larger constant
  double u = lmax - std::max(rest[0], rest[1]);  // slower
  double v = lmax - std::min(rest[0], rest[1]);  // faster
  double cv = std::max(alpha, beta), cu = std::min(alpha, beta);
  double est_u = u / cu, est_v = v / cv;
  return std::fabs(est_u - est_v) / std::max(est_u, est_v);
}

}  // namespace

double local_asymptotics_residual(const TraceMap& tm, const SurfacePoint& p,
                                  int extra_steps, const EscapeParams& ep) {
  if (!tm.abelian)
    throw NotHyperbolic("local asymptotics need a hyperbolic substitution");
  return residual_impl(tm, p, tm.abelian->alpha, tm.abelian->beta, extra_steps,
                       ep);
}

double local_asymptotics_residual(const TraceMap& tm, const SurfacePoint& p,
                                  double alpha, double beta, int extra_steps,
                                  const EscapeParams& ep) {
  return residual_impl(tm, p, alpha, beta, extra_steps, ep);
}

double holder_estimate(const std::vector<std::pair<double, double>>& probes) {
  if (probes.size() < 20)
    throw InsufficientProbes("need at least 20 (delta, value) probes, got " +
                             std::to_string(probes.size()));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [delta, value] : probes) {
    if (!(delta > 0.0) || !std::isfinite(delta) || !(value > 0.0) ||
        !std::isfinite(value))
      throw InvalidArgument("probes must have positive finite delta and value");
    double lx = std::log(delta), ly = std::log(value);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double n = double(probes.size());
  double den = sxx - sx * sx / n;
  if (den < 1e-12)
    throw InsufficientProbes("probe deltas do not span a range");
  return (sxy - sx * sy / n) / den;
}

}  // namespace tracelab
