#include "tracelab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tracelab/errors.hpp"

namespace tracelab {

SpectralMeasure::SpectralMeasure(std::vector<double> atoms,
                                 std::vector<double> weights) {
  if (atoms.size() != weights.size())
    throw InvalidArgument("measure: atoms/weights size mismatch");
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return atoms[i] < atoms[j]; });
  atoms_.reserve(atoms.size());
  weights_.reserve(atoms.size());
  cum_.reserve(atoms.size());
  double run = 0;
  for (std::size_t k : order) {
    double a = atoms[k], w = weights[k];
    if (!std::isfinite(a) || !std::isfinite(w) || w <= 0)
      throw InvalidArgument("measure: atoms finite, weights positive required");
    atoms_.push_back(a);
    weights_.push_back(w);
    run += w;
    cum_.push_back(run);
  }
  total_ = run;
}

SpectralMeasure SpectralMeasure::uniform_on(std::vector<double> points) {
  if (points.empty()) throw InvalidArgument("measure: no points");
  std::vector<double> w(points.size(), 1.0 / double(points.size()));
  return SpectralMeasure(std::move(points), std::move(w));
}

bool SpectralMeasure::is_probability(double tol) const {
  return std::fabs(total_ - 1.0) <= tol;
}

double SpectralMeasure::cdf(double x) const {
  auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
  if (it == atoms_.begin()) return 0.0;
  return cum_[std::size_t(it - atoms_.begin()) - 1];
}

double SpectralMeasure::cdf_left(double x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x);
  if (it == atoms_.begin()) return 0.0;
  return cum_[std::size_t(it - atoms_.begin()) - 1];
}

double SpectralMeasure::mean() const {
  if (empty()) throw EmptySet("measure: mean of empty measure");
  double s = 0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) s += atoms_[i] * weights_[i];
  return s / total_;
}

double SpectralMeasure::max_abs_atom() const {
  if (empty()) throw EmptySet("measure: empty measure");
  return std::max(std::fabs(atoms_.front()), std::fabs(atoms_.back()));
}

SpectralMeasure SpectralMeasure::normalized() const {
  if (empty() || total_ <= 0) throw EmptySet("measure: cannot normalize");
  std::vector<double> w(weights_);
  for (double& x : w) x /= total_;
  return SpectralMeasure(atoms_, std::move(w));
}

SpectralMeasure SpectralMeasure::condensed(std::size_t max_atoms) const {
  if (max_atoms == 0) throw InvalidArgument("measure: condensed(0)");
  if (size() <= max_atoms) return *this;
  std::vector<double> a, w;
  a.reserve(max_atoms);
  w.reserve(max_atoms);
  // equal-count buckets; each bucket keeps its mass and center of mass
  for (std::size_t b = 0; b < max_atoms; ++b) {
    std::size_t i0 = b * size() / max_atoms;
    std::size_t i1 = (b + 1) * size() / max_atoms;
    if (i1 <= i0) continue;
    double mass = 0, moment = 0;
    for (std::size_t i = i0; i < i1; ++i) {
      mass += weights_[i];
      moment += weights_[i] * atoms_[i];
    }
    a.push_back(moment / mass);
    w.push_back(mass);
  }
  return SpectralMeasure(std::move(a), std::move(w));
}

double kolmogorov_distance(const SpectralMeasure& m1, const SpectralMeasure& m2) {
  if (!m1.is_probability() || !m2.is_probability())
    throw NotProbability("kolmogorov: both measures must have mass 1");
  const auto& a1 = m1.atoms();
  const auto& a2 = m2.atoms();
  double best = 0, f1 = 0, f2 = 0;
  std::size_t i = 0, j = 0;
  const auto& w1 = m1.weights();
  const auto& w2 = m2.weights();
  while (i < a1.size() || j < a2.size()) {
    double x;
    if (j >= a2.size() || (i < a1.size() && a1[i] <= a2[j]))
      x = a1[i];
    else
      x = a2[j];
    while (i < a1.size() && a1[i] == x) f1 += w1[i++];
    while (j < a2.size() && a2[j] == x) f2 += w2[j++];
    best = std::max(best, std::fabs(f1 - f2));
  }
  return best;
}

double kolmogorov_vs_cdf(const SpectralMeasure& m,
                         const std::function<double(double)>& cdf) {
  if (!m.is_probability())
    throw NotProbability("kolmogorov: measure must have mass 1");
  const auto& a = m.atoms();
  const auto& w = m.weights();
  double best = 0, f = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double k = cdf(a[i]);
    best = std::max(best, std::fabs(f - k));  // left limit of the step
    f += w[i];
    while (i + 1 < a.size() && a[i + 1] == a[i]) {
      ++i;
      f += w[i];
    }
    best = std::max(best, std::fabs(f - k));  // right value of the step
  }
  return best;
}

double log_potential(const SpectralMeasure& m, std::complex<double> e) {
  if (m.empty()) throw EmptySet("log_potential: empty measure");
  const auto& a = m.atoms();
  const auto& w = m.weights();
  const double x = e.real(), y = e.imag();
  // AtAtom sentinel: evaluation point within 1e-14 of an atom
  if (std::fabs(y) < 1e-14) {
    auto it = std::lower_bound(a.begin(), a.end(), x);
    for (auto p : {it, it == a.begin() ? it : it - 1}) {
      if (p != a.end() && std::hypot(x - *p, y) < 1e-14)
        return -std::numeric_limits<double>::infinity();
    }
  }
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double dx = x - a[i];
    s += w[i] * std::log(dx * dx + y * y);
  }
  return 0.5 * s;
}

}  // namespace tracelab
