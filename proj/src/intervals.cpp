#include "tracelab/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "tracelab/errors.hpp"

namespace tracelab {

IntervalSet::IntervalSet(std::vector<Interval> parts) {
  for (const auto& iv : parts) {
    if (!(iv.lo <= iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi))
      throw InvalidArgument("interval set: need finite lo <= hi");
  }
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& iv : parts) {
    if (!parts_.empty() && iv.lo <= parts_.back().hi)
      parts_.back().hi = std::max(parts_.back().hi, iv.hi);
    else
      parts_.push_back(iv);
  }
}

IntervalSet IntervalSet::from_samples(std::vector<double> points, double gap) {
  if (!(gap >= 0)) throw InvalidArgument("from_samples: gap must be >= 0");
  std::sort(points.begin(), points.end());
  std::vector<Interval> parts;
  double tol = gap * (1.0 + 1e-9) + 1e-12;
  for (double p : points) {
    if (!std::isfinite(p)) throw InvalidArgument("from_samples: non-finite point");
    if (!parts.empty() && p - parts.back().hi <= tol)
      parts.back().hi = p;
    else
      parts.push_back({p, p});
  }
  IntervalSet s;
  s.parts_ = std::move(parts);
  return s;
}

double IntervalSet::min() const {
  if (empty()) throw EmptySet("interval set: min of empty set");
  return parts_.front().lo;
}

double IntervalSet::max() const {
  if (empty()) throw EmptySet("interval set: max of empty set");
  return parts_.back().hi;
}

double IntervalSet::total_length() const {
  double s = 0;
  for (const auto& iv : parts_) s += iv.hi - iv.lo;
  return s;
}

bool IntervalSet::contains(double x, double tol) const {
  for (const auto& iv : parts_) {
    if (x >= iv.lo - tol && x <= iv.hi + tol) return true;
    if (iv.lo - tol > x) break;
  }
  return false;
}

bool IntervalSet::subset_of(const IntervalSet& other, double tol) const {
  for (const auto& iv : parts_) {
    // the whole of iv must sit inside a single interval of other (enlarged by
    // tol); intervals of other are disjoint, so check the one containing iv.lo
    bool ok = false;
    for (const auto& jv : other.parts_) {
      if (iv.lo >= jv.lo - tol && iv.hi <= jv.hi + tol) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

double IntervalSet::distance_to(double x) const {
  if (empty()) throw EmptySet("interval set: distance to empty set");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& iv : parts_) {
    if (x < iv.lo)
      best = std::min(best, iv.lo - x);
    else if (x > iv.hi)
      best = std::min(best, x - iv.hi);
    else
      return 0.0;
  }
  return best;
}

std::size_t IntervalSet::box_count(double eps) const {
  if (empty()) throw EmptySet("box_count: empty set");
  if (!(eps > 0)) throw InvalidArgument("box_count: eps must be positive");
  // snap coordinates that sit on a grid line to it before flooring
  auto snapped_floor = [eps](double x) -> std::int64_t {
    double s = x / eps;
    double r = std::nearbyint(s);
    if (std::fabs(s - r) < 1e-9) s = r;
    return std::int64_t(std::floor(s));
  };
  std::size_t count = 0;
  std::int64_t last = std::numeric_limits<std::int64_t>::min();
  for (const auto& iv : parts_) {
    std::int64_t klo = snapped_floor(iv.lo);
    double s = iv.hi / eps;
    double r = std::nearbyint(s);
    std::int64_t khi;
    if (std::fabs(s - r) < 1e-9)
      khi = std::int64_t(r) - 1;  // right endpoint on a grid line
    else
      khi = std::int64_t(std::floor(s));
    if (khi < klo) khi = klo;  // degenerate interval on a grid line
    klo = std::max(klo, last + 1);
    if (khi >= klo) {
      count += std::size_t(khi - klo + 1);
      last = khi;
    }
  }
  return count;
}

namespace {
// one-sided Hausdorff: sup over x in A of dist(x, B)
double hausdorff_one_sided(const IntervalSet& A, const IntervalSet& B) {
  double best = 0;
  // candidates: endpoints of A, and midpoints of gaps of B clipped into A
  std::vector<double> candidates;
  for (const auto& iv : A.parts()) {
    candidates.push_back(iv.lo);
    candidates.push_back(iv.hi);
  }
  const auto& bp = B.parts();
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    double mid = 0.5 * (bp[i].hi + bp[i + 1].lo);
    if (A.contains(mid)) candidates.push_back(mid);
  }
  for (double x : candidates) best = std::max(best, B.distance_to(x));
  return best;
}
}  // namespace

double hausdorff_distance(const IntervalSet& A, const IntervalSet& B) {
  if (A.empty() || B.empty())
    throw EmptySet("hausdorff: both sets must be nonempty");
  return std::max(hausdorff_one_sided(A, B), hausdorff_one_sided(B, A));
}

double box_dimension(const IntervalSet& set, const std::vector<double>& eps_range) {
  if (eps_range.size() < 2)
    throw InvalidArgument("box_dimension: need at least two scales");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double eps : eps_range) {
    double x = std::log(1.0 / eps);
    double y = std::log(double(set.box_count(eps)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = double(eps_range.size());
  double denom = n * sxx - sx * sx;
  if (std::fabs(denom) < 1e-12)
    throw InvalidArgument("box_dimension: degenerate eps range");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace tracelab
