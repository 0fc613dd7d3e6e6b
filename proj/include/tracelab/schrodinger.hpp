#pragma once
#include <cstddef>
#include <vector>

#include "tracelab/green.hpp"
#include "tracelab/intervals.hpp"
#include "tracelab/measure.hpp"
#include "tracelab/surface.hpp"

namespace tracelab {

// Discrete Schrodinger operator (Hu)(n) = u(n+1) + u(n-1) + kappa v(n) u(n)
// with v the letter-a indicator of the invariant word of a positive
// substitution.  The prefix is materialized once, up to `length` letters.
struct OperatorFamily {
  Substitution sub;
  double kappa = 0.0;
  Word prefix;

  std::size_t length() const { return prefix.size(); }
  // potential value at site i (0 or 1), IndexOutOfRange past the prefix
  int v(std::size_t i) const;
  Complex D() const { return Complex(4.0 + kappa * kappa, 0.0); }
};

OperatorFamily operator_family(const Substitution& sub, double kappa,
                               std::size_t length,
                               std::size_t cap = WORD_CAP);

// spectral locus point s(E) = (E - kappa, E, E(E - kappa) - 2) on S_{4+k^2}
SurfacePoint schrodinger_point(Complex E, double kappa);

// M(v(N-1)) ... M(v(0)) with M(t) = [[E - kappa t, -1],[1, 0]]
// (PrefixTooShort when N exceeds the materialized prefix)
ScaledMat2 transfer_product(const OperatorFamily& fam, Complex E,
                            std::size_t N);

// (1/N) log of the largest transfer-matrix column norm; always >= 0
double lyapunov_direct(const OperatorFamily& fam, Complex E, std::size_t N);

// Lyapunov exponent through the dictionary: G_+(s(E)) / (alpha + beta)
double lyapunov_green(const OperatorFamily& fam, Complex E,
                      const EscapeParams& ep = {});

// eigenvalues of the L x L Dirichlet block starting at site offset
std::vector<double> dirichlet_eigenvalues(const OperatorFamily& fam,
                                          std::size_t L,
                                          std::size_t offset = 0);

// Normalized eigenvalue counting measure over `windows` consecutive Dirichlet
// blocks of length L (atoms weighted 1/(L*windows)).  Deterministic for any
// worker count.
SpectralMeasure density_of_states(const OperatorFamily& fam, std::size_t L,
                                  std::size_t windows, int workers = 1);

// Thouless formula: gamma(E) = integral of log|E - E'| against the DOS
// (AtAtom on atoms, NotProbability unless the measure has mass 1)
double lyapunov_thouless(const SpectralMeasure& dos, Complex E);

struct SpectrumEstimate {
  IntervalSet inner;  // through the bounded-orbit samples
  IntervalSet outer;  // the same, inflated by one grid step
};

// Classify grid energies by bounded/escaping orbit of s(E) and assemble
// inner/outer interval hulls of the non-escaping set.
SpectrumEstimate spectrum_escape(const OperatorFamily& fam, double lo,
                                 double hi, double step,
                                 const EscapeParams& ep = {});

// Real solutions of tr T_ell(E) = target.  Finds both transversal roots
// (sign changes) and tangential ones (critical points of the trace where the
// level is touched); near-extremal clusters are re-scanned at a finer step.
std::vector<double> mixed_bc_eigenvalues(const OperatorFamily& fam,
                                         std::size_t ell, double target,
                                         double scan_step = 1e-3);

// log_potential(dos, E0) - log|E0|, which tends to 0 at large |E0| for any
// probability measure; requires |E0| >= 100 * max|atom|
double capacity_check(const SpectralMeasure& dos, Complex E0);

// Holder exponent of the integrated density of states: least-squares slope of
// ln(sup_E [k(E + delta) - k(E)]) against ln delta.  The sup over windows of
// width delta is exact for an atomic measure (attained flush against an
// atom).  Needs a probability measure and at least 4 widths.
double holder_estimate_ids(const SpectralMeasure& dos,
                           const std::vector<double>& deltas);

}  // namespace tracelab
