#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cbounds/numeric.hpp"

namespace cbounds {

/// i-th point of the uniform grid of order n on [a, b], computed directly
/// from the integers i and n (never by accumulation).
inline Numeric grid_point(const Numeric& a, const Numeric& b, long i, long n) {
  if (i == 0) return a;
  if (i == n) return b;
  return a + (b - a) * Numeric(mpq_class(i, n));
}

/// Strictly increasing grid a = points[0] < ... < points[last] = b.
class Partition {
 public:
  explicit Partition(std::vector<Numeric> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw DomainError("a partition needs at least two points");
    for (std::size_t i = 1; i < points_.size(); ++i) {
      const auto c = compare(points_[i], points_[i - 1]);
      if (!c) throw DomainError("partition point order is undecidable at index " + std::to_string(i));
      if (*c <= 0) throw DomainError("partition points must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }

  /// Number of subintervals.
  std::size_t order() const { return points_.size() - 1; }
  std::size_t size() const { return points_.size(); }
  const Numeric& a() const { return points_.front(); }
  const Numeric& b() const { return points_.back(); }
  const Numeric& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Numeric>& points() const { return points_; }

 private:
  std::vector<Numeric> points_;
};

inline void require_interval(const Numeric& a, const Numeric& b) {
  const auto c = compare(a, b);
  if (!c) throw DomainError("cannot decide a < b");
  if (*c >= 0) throw DomainError("interval endpoints require a < b");
}

inline Partition uniform_partition(const Numeric& a, const Numeric& b, long n) {
  if (n < 1) throw DomainError("uniform partition order must be at least 1");
  require_interval(a, b);
  std::vector<Numeric> pts;
  pts.reserve(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) pts.push_back(grid_point(a, b, i, n));
  return Partition(std::move(pts));
}

/// True iff x_{i-1} <= y_i <= x_i for i = 1..n, where x has order n and y
/// order n + 1 over the same endpoints.
inline bool interleaving_valid(const Partition& x, const Partition& y) {
  if (y.order() != x.order() + 1) {
    throw DomainError("the second partition must be exactly one order finer than the first");
  }
  const auto ca = compare(x.a(), y.a());
  const auto cb = compare(x.b(), y.b());
  if (!ca || !cb || *ca != 0 || *cb != 0) throw DomainError("partitions must share both endpoints");
  for (std::size_t i = 1; i <= x.order(); ++i) {
    const auto lo = compare(x[i - 1], y[i]);
    const auto hi = compare(y[i], x[i]);
    if (!lo || !hi) throw DomainError("interleaving is undecidable at index " + std::to_string(i));
    if (*lo > 0 || *hi > 0) return false;
  }
  return true;
}

}  // namespace cbounds
