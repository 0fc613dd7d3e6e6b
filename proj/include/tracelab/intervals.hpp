#pragma once
#include <cstddef>
#include <vector>

namespace tracelab {

struct Interval {
  double lo, hi;  // lo <= hi; degenerate intervals (lo == hi) are allowed
};

// Finite union of closed intervals, kept sorted and disjoint.
class IntervalSet {
 public:
  IntervalSet() = default;
  // sorts and merges overlapping or touching intervals
  explicit IntervalSet(std::vector<Interval> parts);
  // merge sample points into intervals: consecutive points at distance <= gap
  // (plus a tiny float guard) fall into the same interval
  static IntervalSet from_samples(std::vector<double> points, double gap);

  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }
  const std::vector<Interval>& parts() const { return parts_; }
  double min() const;
  double max() const;
  double total_length() const;

  bool contains(double x, double tol = 0.0) const;
  // every point of *this lies within tol of other
  bool subset_of(const IntervalSet& other, double tol = 1e-12) const;
  // distance from x to the set (0 inside)
  double distance_to(double x) const;

  // Number of grid boxes [k*eps, (k+1)*eps) meeting the set.  A right endpoint
  // sitting on a grid line (within 1e-9*eps) does not open a new box, so
  // [0,1] at eps=0.1 counts 10 boxes.
  std::size_t box_count(double eps) const;

 private:
  std::vector<Interval> parts_;
};

// symmetric Hausdorff distance between two nonempty interval sets
double hausdorff_distance(const IntervalSet& A, const IntervalSet& B);

// least-squares slope of ln(box_count) against ln(1/eps)
double box_dimension(const IntervalSet& set, const std::vector<double>& eps_range);

}  // namespace tracelab
