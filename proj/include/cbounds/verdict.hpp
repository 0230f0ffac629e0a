#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cbounds/numeric.hpp"

namespace cbounds {

enum class Status { HoldsStrictly, HoldsWithEquality, Violated, Inconclusive };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::HoldsStrictly:
      return "HoldsStrictly";
    case Status::HoldsWithEquality:
      return "HoldsWithEquality";
    case Status::Violated:
      return "Violated";
    case Status::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

/// Outcome of one inequality check. `margin` is the slack
/// claimed-larger-side minus claimed-smaller-side.
///
/// The status is read off the enclosure of the margin: strictly positive
/// means HoldsStrictly, strictly negative means Violated, an exact zero means
/// HoldsWithEquality. An approximate margin whose enclosure contains zero is
/// Inconclusive: a nonzero error radius can never certify equality.
struct Verdict {
  std::string label;
  Status status = Status::Inconclusive;
  Numeric margin;
  /// The compared sides, when the verdict came from `judge`.
  std::optional<Numeric> smaller;
  std::optional<Numeric> larger;

  bool holds() const { return status == Status::HoldsStrictly || status == Status::HoldsWithEquality; }
  bool strict() const { return status == Status::HoldsStrictly; }
  bool inconclusive() const { return status == Status::Inconclusive; }
};

inline Status status_of(const Numeric& margin) {
  const auto s = margin.sign();
  if (!s) return Status::Inconclusive;
  if (*s > 0) return Status::HoldsStrictly;
  if (*s < 0) return Status::Violated;
  return Status::HoldsWithEquality;
}

inline Verdict judge_margin(std::string label, Numeric margin) {
  Verdict v{std::move(label), Status::Inconclusive, std::move(margin), std::nullopt, std::nullopt};
  v.status = status_of(v.margin);
  return v;
}

/// Verdict for the claim `smaller <= larger`.
inline Verdict judge(std::string label, const Numeric& smaller, const Numeric& larger) {
  Verdict v = judge_margin(std::move(label), larger - smaller);
  v.smaller = smaller;
  v.larger = larger;
  return v;
}

/// Verdict for a side that is an algebraic identity (equality always holds);
/// reported with an exact zero margin independent of evaluation error.
inline Verdict identity_verdict(std::string label) {
  return Verdict{std::move(label), Status::HoldsWithEquality, Numeric(0), std::nullopt, std::nullopt};
}

/// Worst status over a set: Violated > Inconclusive > HoldsWithEquality > HoldsStrictly.
inline Status combine(Status a, Status b) {
  auto rank = [](Status s) {
    switch (s) {
      case Status::HoldsStrictly:
        return 0;
      case Status::HoldsWithEquality:
        return 1;
      case Status::Inconclusive:
        return 2;
      case Status::Violated:
        return 3;
    }
    return 3;
  };
  return rank(a) >= rank(b) ? a : b;
}

/// Verdict that holds iff both hold; margin is the smaller of the two.
inline Verdict conjunction(std::string label, const Verdict& a, const Verdict& b) {
  return Verdict{std::move(label), combine(a.status, b.status), min(a.margin, b.margin), std::nullopt, std::nullopt};
}

/// Certified enclosure of a target quantity with the provenance of each side.
struct Bracket {
  Numeric lower;
  Numeric upper;
  std::string lower_source;
  std::string upper_source;

  /// lower <= upper
  Verdict ordered() const { return judge("lower <= upper", lower, upper); }

  /// Verdict pair for lower <= target and target <= upper.
  std::pair<Verdict, Verdict> contains(const Numeric& target) const {
    return {judge("lower <= target", lower, target), judge("target <= upper", target, upper)};
  }

  Numeric width() const { return upper - lower; }
};

/// Working precision and retry policy shared by every certified operation.
struct Context {
  Precision precision_bits = kDefaultPrecision;
  int max_retries = 4;
  /// Offset into the low-discrepancy sequence used by convexity spot checks.
  unsigned long seed = 0;
  /// Run the convexity spot check at operation entry.
  bool spot_check = true;
  int spot_check_samples = 64;
};

namespace detail {
inline bool any_inconclusive() { return false; }
template <typename... Rest>
bool any_inconclusive(const Verdict& v, const Rest&... rest);
template <typename... Rest>
bool any_inconclusive(const std::optional<Verdict>& v, const Rest&... rest);
template <typename... Rest>
bool any_inconclusive(const std::vector<Verdict>& v, const Rest&... rest);

template <typename... Rest>
bool any_inconclusive(const Verdict& v, const Rest&... rest) {
  return v.inconclusive() || any_inconclusive(rest...);
}
template <typename... Rest>
bool any_inconclusive(const std::optional<Verdict>& v, const Rest&... rest) {
  return (v && v->inconclusive()) || any_inconclusive(rest...);
}
template <typename... Rest>
bool any_inconclusive(const std::vector<Verdict>& v, const Rest&... rest) {
  for (const auto& x : v) {
    if (x.inconclusive()) return true;
  }
  return any_inconclusive(rest...);
}
}  // namespace detail

/// Runs `compute(bits)` and doubles the precision while the result reports an
/// Inconclusive verdict, at most ctx.max_retries times. The result type must
/// expose `bool inconclusive() const` and a `Precision precision` member.
template <typename Fn>
auto certify(const Context& ctx, Fn&& compute) {
  Precision bits = ctx.precision_bits;
  auto result = compute(bits);
  result.precision = bits;
  for (int attempt = 0; attempt < ctx.max_retries && result.inconclusive(); ++attempt) {
    bits *= 2;
    result = compute(bits);
    result.precision = bits;
  }
  return result;
}

}  // namespace cbounds
