#pragma once
#include <utility>
#include <vector>

#include "tracelab/surface.hpp"

namespace tracelab {

struct EscapeParams {
  double r_escape = 1e3;  // orbit counts as escaped beyond this sup-norm
  int n_max = 60;         // iteration budget
  double tol = 1e-9;      // relative Cauchy tolerance on the renormalized log
};

enum class GreenStatus { Converged, BoundedOrbit, Inconclusive };

struct GreenResult {
  double value = 0.0;
  int iterations = 0;
  GreenStatus status = GreenStatus::Inconclusive;
};

// Dynamical Green function G(p) = lim lambda^-n log+ ||f^n(p)||, computed by
// iterating until the renormalized logs settle (three consecutive increments
// under tol after escape).  Bounded orbits report value 0.  Exponent
// overflows are rethrown with the iterate index attached.
GreenResult green_plus(const TraceMap& tm, const SurfacePoint& p,
                       const EscapeParams& ep = {});
// same limit along the inverse map (spectral radius is shared)
GreenResult green_minus(const TraceMap& tm, const SurfacePoint& p,
                        const EscapeParams& ep = {});

// bounded forward orbit within the budget
bool in_filled_julia(const TraceMap& tm, const SurfacePoint& p,
                     const EscapeParams& ep = {});

// Consistency residual of the two-sided local asymptotics at the attracting
// vertex: the transverse chart coordinates decay like exp(-c lambda^k theta)
// with {c} = {alpha, beta} paired by magnitude; the residual is the relative
// disagreement of the two theta estimates.  The point is iterated to escape
// plus extra_steps more first (NoEscapeDetected if it stays bounded,
// NotNearInfinity if no coordinate dominates 10x at the evaluation point).
double local_asymptotics_residual(const TraceMap& tm, const SurfacePoint& p,
                                  int extra_steps = 5,
                                  const EscapeParams& ep = {});
// same, with explicit decay constants (negative controls)
double local_asymptotics_residual(const TraceMap& tm, const SurfacePoint& p,
                                  double alpha, double beta,
                                  int extra_steps = 5,
                                  const EscapeParams& ep = {});

// Least-squares slope of log(value) against log(delta) over (delta, value)
// probes; needs at least 20 well-spread probes (InsufficientProbes).
double holder_estimate(const std::vector<std::pair<double, double>>& probes);

}  // namespace tracelab
