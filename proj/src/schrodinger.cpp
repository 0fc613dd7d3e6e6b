#include "tracelab/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "tracelab/errors.hpp"
#include "tracelab/parallel.hpp"
#include "tracelab/tridiag.hpp"

namespace tracelab {
namespace {

// letter transfer matrix M(t) = [[E - kappa t, -1],[1, 0]], t in {0,1}
ScaledMat2 letter_matrix(Complex E, double kappa, int t) {
  return {ScaledComplex::from(E - kappa * double(t)),
          ScaledComplex::from(-1.0), ScaledComplex::from(1.0),
          ScaledComplex()};
}

}  // namespace

int OperatorFamily::v(std::size_t i) const {
  if (i >= prefix.size())
    throw IndexOutOfRange("potential index " + std::to_string(i) +
                          " beyond materialized prefix of length " +
                          std::to_string(prefix.size()));
  return prefix[i] == 'a' ? 1 : 0;
}

OperatorFamily operator_family(const Substitution& sub, double kappa,
                               std::size_t length, std::size_t cap) {
  if (!std::isfinite(kappa))
    throw InvalidArgument("coupling constant must be finite");
  OperatorFamily fam;
  fam.sub = sub;
  fam.kappa = kappa;
  fam.prefix = invariant_word_prefix(sub, length, cap);
  return fam;
}

SurfacePoint schrodinger_point(Complex E, double kappa) {
  Complex x = E - kappa;
  Complex y = E;
  Complex z = E * (E - kappa) - 2.0;
  return surface_point(x, y, z, Complex(4.0 + kappa * kappa, 0.0));
}

ScaledMat2 transfer_product(const OperatorFamily& fam, Complex E,
                            std::size_t N) {
  if (N > fam.prefix.size())
    throw PrefixTooShort("transfer product over " + std::to_string(N) +
                         " sites, but only " +
                         std::to_string(fam.prefix.size()) +
                         " are materialized");
  ScaledMat2 ma = letter_matrix(E, fam.kappa, 1);
  ScaledMat2 mb = letter_matrix(E, fam.kappa, 0);
  ScaledMat2 p = ScaledMat2::identity();
  for (std::size_t i = 0; i < N; ++i)
    p = (fam.prefix[i] == 'a' ? ma : mb) * p;
  return p;
}

double lyapunov_direct(const OperatorFamily& fam, Complex E, std::size_t N) {
  if (N == 0) throw InvalidArgument("lyapunov_direct needs at least one site");
  ScaledMat2 t = transfer_product(fam, E, N);
  auto col_log = [](const ScaledComplex& p, const ScaledComplex& q) {
    ScaledComplex n2 = p * p.conj() + q * q.conj();
    return n2.is_zero() ? -std::numeric_limits<double>::infinity()
                        : 0.5 * n2.log_abs();
  };
  return std::max(col_log(t.a, t.c), col_log(t.b, t.d)) / double(N);
}

double lyapunov_green(const OperatorFamily& fam, Complex E,
                      const EscapeParams& ep) {
  TraceMap tm = trace_map(fam.sub, fam.D());
  if (!tm.abelian)
    throw NotHyperbolic("substitution matrix is not hyperbolic");
  GreenResult g = green_plus(tm, schrodinger_point(E, fam.kappa), ep);
  return g.value / (tm.abelian->alpha + tm.abelian->beta);
}

std::vector<double> dirichlet_eigenvalues(const OperatorFamily& fam,
                                          std::size_t L, std::size_t offset) {
  if (L == 0) throw InvalidArgument("Dirichlet block must be nonempty");
  if (offset + L > fam.prefix.size() || offset + L < offset)
    throw PrefixTooShort("Dirichlet block [" + std::to_string(offset) + ", " +
                         std::to_string(offset + L) + ") exceeds prefix of " +
                         std::to_string(fam.prefix.size()) + " sites");
  std::vector<double> diag(L);
  for (std::size_t i = 0; i < L; ++i)
    diag[i] = fam.kappa * double(fam.v(offset + i));
  std::vector<double> off(L - 1, 1.0);
  return tridiag_eigenvalues(diag, off);
}

SpectralMeasure density_of_states(const OperatorFamily& fam, std::size_t L,
                                  std::size_t windows, int workers) {
  if (L == 0 || windows == 0)
    throw InvalidArgument("window length and count must be positive");
  if (windows > fam.prefix.size() / L)
    throw PrefixTooShort("density of states needs " +
                         std::to_string(L * windows) + " sites, prefix has " +
                         std::to_string(fam.prefix.size()));
  std::vector<std::vector<double>> slots(windows);
  unsigned w = workers <= 0 ? 1u : unsigned(workers);
  parallel_for(windows, w, [&](std::size_t i) {
    slots[i] = dirichlet_eigenvalues(fam, L, i * L);
  });
  std::vector<double> atoms;
  atoms.reserve(L * windows);
  for (const auto& s : slots) atoms.insert(atoms.end(), s.begin(), s.end());
  std::vector<double> weights(atoms.size(), 1.0 / double(L * windows));
  return SpectralMeasure(std::move(atoms), std::move(weights));
}

double lyapunov_thouless(const SpectralMeasure& dos, Complex E) {
  if (!dos.is_probability())
    throw NotProbability("Thouless formula needs a probability measure");
  double g = log_potential(dos, E);
  if (std::isinf(g))
    throw AtAtom("Thouless formula evaluated on a spectrum atom");
  return g;
}

SpectrumEstimate spectrum_escape(const OperatorFamily& fam, double lo,
                                 double hi, double step,
                                 const EscapeParams& ep) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo || !(step > 0.0))
    throw InvalidArgument("energy grid needs lo <= hi and step > 0");
  TraceMap tm = trace_map(fam.sub, fam.D());
  std::vector<double> bounded;
  std::size_t n = std::size_t((hi - lo) / step * (1 + 1e-12)) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    double e = std::min(lo + double(i) * step, hi);
    if (in_filled_julia(tm, schrodinger_point(Complex(e, 0.0), fam.kappa), ep))
      bounded.push_back(e);
  }
  SpectrumEstimate est;
  est.inner = IntervalSet::from_samples(std::move(bounded), step);
  std::vector<Interval> inflated;
  inflated.reserve(est.inner.size());
  for (const Interval& iv : est.inner.parts())
    inflated.push_back({iv.lo - step, iv.hi + step});
  est.outer = IntervalSet(std::move(inflated));
  return est;
}

namespace {

struct TracePair {
  ScaledComplex h;   // tr T_ell(E)
  ScaledComplex dh;  // d/dE tr T_ell(E)
};

// For real E all entries stay exactly real (imaginary parts are never mixed
// in), so mantissa signs below are exact.
ScaledComplex trace_at(const OperatorFamily& fam, std::size_t ell, double E) {
  ScaledMat2 ma = letter_matrix(Complex(E, 0.0), fam.kappa, 1);
  ScaledMat2 mb = letter_matrix(Complex(E, 0.0), fam.kappa, 0);
  ScaledMat2 p = ScaledMat2::identity();
  for (std::size_t i = 0; i < ell; ++i)
    p = (fam.prefix[i] == 'a' ? ma : mb) * p;
  return p.trace();
}

// Every letter matrix has dM/dE = [[1,0],[0,0]], so the product rule gives
// (M P)' = M P' + [[P.a, P.b],[0,0]].
TracePair trace_and_derivative(const OperatorFamily& fam, std::size_t ell,
                               double E) {
  ScaledMat2 ma = letter_matrix(Complex(E, 0.0), fam.kappa, 1);
  ScaledMat2 mb = letter_matrix(Complex(E, 0.0), fam.kappa, 0);
  ScaledMat2 p = ScaledMat2::identity();
  ScaledMat2 dp{};
  for (std::size_t i = 0; i < ell; ++i) {
    const ScaledMat2& m = fam.prefix[i] == 'a' ? ma : mb;
    ScaledMat2 nd = m * dp;
    nd.a = nd.a + p.a;
    nd.b = nd.b + p.b;
    dp = nd;
    p = m * p;
  }
  return {p.trace(), dp.trace()};
}

int sign_of(const ScaledComplex& s) {
  if (s.is_zero()) return 0;
  double r = s.mantissa().real();
  return r > 0.0 ? 1 : (r < 0.0 ? -1 : 0);
}

template <class SignFn>
double bisect_sign_change(const SignFn& sign_at, double lo, double hi,
                          int sign_lo) {
  for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
    double mid = 0.5 * (lo + hi);
    int sm = sign_at(mid);
    if (sm == 0) return mid;
    if (sm == sign_lo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> mixed_bc_eigenvalues(const OperatorFamily& fam,
                                         std::size_t ell, double target,
                                         double scan_step) {
  if (ell == 0) throw InvalidArgument("transfer length must be positive");
  if (ell > fam.prefix.size())
    throw PrefixTooShort("transfer length " + std::to_string(ell) +
                         " exceeds prefix of " +
                         std::to_string(fam.prefix.size()) + " sites");
  if (!(scan_step > 0.0) || !std::isfinite(target))
    throw InvalidArgument("scan step must be positive and target finite");

  const double lo = std::min(0.0, fam.kappa) - 2.5;
  const double hi = std::max(0.0, fam.kappa) + 2.5;
  const ScaledComplex starget = ScaledComplex::from(target);
  const double log_touch =
      std::log(1e-7 * std::max(1.0, std::fabs(target)));

  auto fsign = [&](double e) { return sign_of(trace_at(fam, ell, e) - starget); };
  auto gsign = [&](double e) {
    return sign_of(trace_and_derivative(fam, ell, e).dh);
  };

  std::vector<double> crossing, tangential;
  auto scan = [&](double a, double b, double step) {
    if (b <= a) return;
    std::size_t n = std::size_t((b - a) / step * (1 + 1e-12)) + 1;
    int pf = 0, pg = 0;      // last nonzero signs seen
    double ef = a, eg = a;   // where they were seen
    for (std::size_t i = 0; i <= n; ++i) {
      double e = std::min(a + double(i) * step, b);
      TracePair tp = trace_and_derivative(fam, ell, e);
      int sf = sign_of(tp.h - starget);
      int sg = sign_of(tp.dh);
      if (sf == 0) {
        crossing.push_back(e);
      } else {
        if (pf != 0 && sf != pf)
          crossing.push_back(bisect_sign_change(fsign, ef, e, pf));
        pf = sf;
        ef = e;
      }
      if (sg != 0) {
        if (pg != 0 && sg != pg) {
          double ec = bisect_sign_change(gsign, eg, e, pg);
          // a critical point only counts when the level is actually touched
          ScaledComplex d = trace_at(fam, ell, ec) - starget;
          if (d.is_zero() || d.log_abs() < log_touch) tangential.push_back(ec);
        }
        pg = sg;
        eg = e;
      }
      if (e >= b) break;
    }
  };

  scan(lo, hi, scan_step);

  auto assemble = [&]() {
    std::vector<double> cur = crossing;
    cur.insert(cur.end(), tangential.begin(), tangential.end());
    std::sort(cur.begin(), cur.end());
    std::vector<double> uniq;
    for (double r : cur)
      if (uniq.empty() || r - uniq.back() > 1e-9) uniq.push_back(r);
    return uniq;
  };

  // Tangential roots cluster toward the extreme ones faster than the base
  // step resolves sign changes of the derivative; rescan both ends finely.
  if (!crossing.empty() || !tangential.empty()) {
    std::vector<double> cur = assemble();
    double wing = 6.0 * scan_step;
    double fine = scan_step / 50.0;
    scan(std::max(lo, cur.front() - wing), std::min(hi, cur.front() + wing),
         fine);
    scan(std::max(lo, cur.back() - wing), std::min(hi, cur.back() + wing),
         fine);
  }

  // Completeness sweep: root spacing varies slowly along a band, so a gap
  // much wider than both flanking gaps either is a genuine spectral gap or
  // hides roots the base step aliased over (oscillation period ~ step).
  // Suspicious gaps are rescanned at a step fine against the local spacing;
  // genuine gaps rescan to nothing and the sweep converges.
  for (int pass = 0; pass < 4; ++pass) {
    std::vector<double> cur = assemble();
    if (cur.size() < 4) break;
    std::size_t before = cur.size();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      double g = cur[i + 1] - cur[i];
      double ref = g;
      if (i > 0) ref = cur[i] - cur[i - 1];
      if (i + 2 < cur.size())
        ref = std::min(ref, cur[i + 2] - cur[i + 1]);
      if (ref >= g || g <= 1.5 * scan_step || g <= 1.9 * ref) continue;
      double fine = std::max(ref / 8.0, scan_step / 400.0);
      scan(cur[i], cur[i + 1], fine);
    }
    if (assemble().size() == before) break;
  }

  // Merge: a crossing within the suppression radius of a tangential root is
  // the same touch point seen through numerical dips across the level.
  std::sort(tangential.begin(), tangential.end());
  const double suppress = 1e-8;
  std::vector<double> roots = tangential;
  for (double c : crossing) {
    auto it = std::lower_bound(tangential.begin(), tangential.end(), c);
    bool dup = (it != tangential.end() && *it - c < suppress) ||
               (it != tangential.begin() && c - *(it - 1) < suppress);
    if (!dup) roots.push_back(c);
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots)
    if (out.empty() || r - out.back() > 1e-9) out.push_back(r);
  return out;
}

double capacity_check(const SpectralMeasure& dos, Complex E0) {
  if (dos.empty()) throw InvalidArgument("capacity check needs a nonempty measure");
  if (!dos.is_probability())
    throw NotProbability("capacity check needs a probability measure");
  double r = std::abs(E0);
  if (!(r >= 100.0 * dos.max_abs_atom()))
    throw InvalidArgument("reference energy must satisfy |E0| >= 100 max|atom|");
  return log_potential(dos, E0) - std::log(r);
}

double holder_estimate_ids(const SpectralMeasure& dos,
                           const std::vector<double>& deltas) {
  if (!dos.is_probability())
    throw NotProbability("IDS Holder estimate needs a probability measure");
  if (deltas.size() < 4)
    throw InsufficientProbes("IDS Holder estimate needs at least 4 widths");
  const std::vector<double>& a = dos.atoms();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double d : deltas) {
    if (!(d > 0.0) || !std::isfinite(d))
      throw InvalidArgument("window widths must be positive and finite");
    // sup_E mass((E, E+d]) over windows flush against each atom; always
    // positive because the window contains at least its anchor atom
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      double m = dos.cdf(a[i] + d) - dos.cdf_left(a[i]);
      if (m > best) best = m;
    }
    double x = std::log(d), y = std::log(best);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = double(deltas.size());
  double den = n * sxx - sx * sx;
  if (std::fabs(den) < 1e-12)
    throw InvalidArgument("window widths must not be all equal");
  return (n * sxy - sx * sy) / den;
}

}  // namespace tracelab
