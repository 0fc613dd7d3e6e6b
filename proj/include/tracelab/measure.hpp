#pragma once
#include <complex>
#include <functional>
#include <vector>

namespace tracelab {

// Purely atomic measure on the real line: sorted atoms with positive weights.
// Duplicate atom positions are allowed.  Used for densities of states and
// eigenvalue counting measures.
class SpectralMeasure {
 public:
  SpectralMeasure() = default;
  // sorts by atom position; weights must be positive and finite
  SpectralMeasure(std::vector<double> atoms, std::vector<double> weights);
  // counting measure with equal weights summing to 1
  static SpectralMeasure uniform_on(std::vector<double> points);

  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  double total_mass() const { return total_; }
  bool is_probability(double tol = 1e-9) const;

  // right-continuous CDF: mass of atoms <= x
  double cdf(double x) const;
  // mass of atoms < x
  double cdf_left(double x) const;
  double mean() const;
  double max_abs_atom() const;

  SpectralMeasure normalized() const;
  // merge adjacent atoms into at most max_atoms mass/mean preserving buckets;
  // cheap approximation for potential evaluation far from the support
  SpectralMeasure condensed(std::size_t max_atoms) const;

 private:
  std::vector<double> atoms_;
  std::vector<double> weights_;
  std::vector<double> cum_;  // cum_[i] = sum of weights_[0..i]
  double total_ = 0;
};

// sup-distance between the CDFs of two probability measures
// (throws NotProbability if either total mass is off by more than 1e-9)
double kolmogorov_distance(const SpectralMeasure& m1, const SpectralMeasure& m2);

// sup-distance between the CDF of a probability measure and a continuous CDF
double kolmogorov_vs_cdf(const SpectralMeasure& m,
                         const std::function<double(double)>& cdf);

// sum of w_j * ln|e - a_j|; returns -infinity if e lies within 1e-14 of an
// atom (the AtAtom sentinel; callers that cannot absorb it should test with
// std::isinf before use)
double log_potential(const SpectralMeasure& m, std::complex<double> e);

}  // namespace tracelab
