#pragma once

#include <algorithm>
#include <cmath>

namespace crossing {

// Closed real interval [lo, hi]. Degenerate (lo == hi) is fine; lo > hi is not.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double x) { return {x, x}; }

  double width() const { return hi - lo; }
  double center() const { return 0.5 * (lo + hi); }
  bool valid() const { return lo <= hi; }

  bool contains(double x, double tol = 0.0) const {
    return x >= lo - tol && x <= hi + tol;
  }
  bool contains(const Interval& other, double tol = 0.0) const {
    return other.lo >= lo - tol && other.hi <= hi + tol;
  }

  double clamp(double x) const { return std::min(std::max(x, lo), hi); }

  // Minkowski sum.
  Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }

  Interval shifted(double d) const { return {lo + d, hi + d}; }

  // Scaling by a nonnegative factor.
  Interval scaled(double k) const { return {k * lo, k * hi}; }
};

inline bool operator==(const Interval& a, const Interval& b) {
  return a.lo == b.lo && a.hi == b.hi;
}

// Intersection; caller must know the result is nonempty (all uses here clip a
// set whose center already lies inside the bounds).
inline Interval intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

}  // namespace crossing
