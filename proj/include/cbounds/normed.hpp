#pragma once

// phi(t) = ||(1-t)x + ty||_q^p for coordinate q-norms, and the bracket of its
// integral over [0, 1] by the interior- and all-point grid averages.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cbounds/numeric.hpp"
#include "cbounds/verdict.hpp"

namespace cbounds {

struct VectorPair {
  std::vector<Numeric> x;
  std::vector<Numeric> y;
  Numeric norm_p{2};   // q in ||.||_q, q >= 1
  Numeric power_p{2};  // p in ||.||^p, p >= 1

  std::size_t dimension() const { return x.size(); }

  void validate() const {
    if (x.empty() || x.size() != y.size()) throw DomainError("x and y need the same dimension d >= 1");
    const auto q = (norm_p - Numeric(1)).sign();
    const auto p = (power_p - Numeric(1)).sign();
    if (!q || *q < 0) throw DomainError("norm exponent must be >= 1");
    if (!p || *p < 0) throw DomainError("power exponent must be >= 1");
    bool all_zero = true;
    for (std::size_t i = 0; i < x.size() && all_zero; ++i) {
      all_zero = x[i].is_exact_zero() && y[i].is_exact_zero();
    }
    if (all_zero) throw DomainError("x and y must not both be zero");
  }
};

namespace detail {
/// ||v||_q^p computed as (sum |v_i|^q)^{p/q}, exact whenever both powers are.
inline Numeric norm_power(const std::vector<Numeric>& v, const Numeric& q, const Numeric& p, Precision prec) {
  Numeric s(0);
  for (const auto& c : v) s += pow(abs(c), q, prec);
  return pow(s, p / q, prec);
}

/// alpha x + beta y
inline std::vector<Numeric> combination(const VectorPair& vp, const Numeric& alpha, const Numeric& beta) {
  std::vector<Numeric> w;
  w.reserve(vp.dimension());
  for (std::size_t i = 0; i < vp.dimension(); ++i) w.push_back(alpha * vp.x[i] + beta * vp.y[i]);
  return w;
}

/// ||(n-i)x + iy||^p
inline Numeric combo_norm_power(const VectorPair& vp, long n, long i, Precision prec) {
  return norm_power(combination(vp, Numeric(n - i), Numeric(i)), vp.norm_p, vp.power_p, prec);
}

inline Numeric combo_norm_sum(const VectorPair& vp, long n, long first, long last, Precision prec) {
  Numeric s(0);
  for (long i = first; i <= last; ++i) s += combo_norm_power(vp, n, i, prec);
  return s;
}
}  // namespace detail

inline Numeric phi_eval(const VectorPair& vp, const Numeric& t, Precision prec = kDefaultPrecision) {
  vp.validate();
  return detail::norm_power(detail::combination(vp, Numeric(1) - t, t), vp.norm_p, vp.power_p, prec);
}

/// Some 2x2 minor x_i y_j - x_j y_i is nonzero. nullopt when no minor is
/// certainly nonzero but some are undecided (near-dependent approximate input).
inline std::optional<bool> linearly_independent(const VectorPair& vp) {
  bool undecided = false;
  for (std::size_t i = 0; i < vp.dimension(); ++i) {
    for (std::size_t j = i + 1; j < vp.dimension(); ++j) {
      const auto s = (vp.x[i] * vp.y[j] - vp.x[j] * vp.y[i]).sign();
      if (!s) {
        undecided = true;
      } else if (*s != 0) {
        return true;
      }
    }
  }
  if (undecided) return std::nullopt;
  return false;
}

/// (||x||^2 + x.y + ||y||^2)/3, the integral of phi for the squared Euclidean norm.
inline Numeric euclidean_square_integral(const VectorPair& vp) {
  Numeric xx(0), xy(0), yy(0);
  for (std::size_t i = 0; i < vp.dimension(); ++i) {
    xx += vp.x[i] * vp.x[i];
    xy += vp.x[i] * vp.y[i];
    yy += vp.y[i] * vp.y[i];
  }
  return (xx + xy + yy) / Numeric(3);
}

struct NormedBracketReport {
  long n = 0;
  std::optional<Numeric> lower;  // interior average, n >= 2
  Numeric upper;                 // all-point average
  /// Closed-form integral when q = p = 2.
  std::optional<Numeric> oracle;
  std::optional<Verdict> lower_vs_oracle;
  std::optional<Verdict> upper_vs_oracle;
  /// Interior ratio <= n/(n+1) (n >= 2) and n/(n+1) <= full ratio.
  std::vector<Verdict> ratio_verdicts;
  /// ||(x+y)/2||^p <= integral <= (||x||^p + ||y||^p)/2.
  Verdict midpoint_verdict;
  Verdict endpoint_verdict;
  std::optional<bool> independent;
  /// q > 1 and x, y independent: every verdict is expected to be strict.
  bool strict_expected = false;
  Precision precision = 0;

  std::vector<Verdict> all_verdicts() const {
    std::vector<Verdict> out = ratio_verdicts;
    if (lower_vs_oracle) out.push_back(*lower_vs_oracle);
    if (upper_vs_oracle) out.push_back(*upper_vs_oracle);
    out.push_back(midpoint_verdict);
    out.push_back(endpoint_verdict);
    return out;
  }
  bool inconclusive() const { return detail::any_inconclusive(all_verdicts()); }
};

/// Grid order used to certify the midpoint/endpoint chain when no closed
/// form is available: B_2 <= B_N <= integral <= A_N <= A_1.
inline constexpr long kClassicalChainOrder = 64;

inline NormedBracketReport segment_integral_bracket(const VectorPair& vp, long n, const Context& ctx = {}) {
  vp.validate();
  if (n < 1) throw DomainError("the all-point side needs n >= 1");
  const bool euclidean_square =
      vp.norm_p.is_exact() && vp.power_p.is_exact() && vp.norm_p.exact() == 2 && vp.power_p.exact() == 2;
  const std::optional<bool> independent = linearly_independent(vp);
  const auto q_above_one = (vp.norm_p - Numeric(1)).sign();
  return certify(ctx, [&](Precision bits) {
    NormedBracketReport rep;
    rep.n = n;
    rep.independent = independent;
    rep.strict_expected = q_above_one == std::optional<int>(1) && independent == std::optional<bool>(true);
    const Numeric scale = pow(Numeric(n), vp.power_p, bits);
    const Numeric inv_p = Numeric(1) / vp.power_p;
    const Numeric threshold(mpq_class(n, n + 1));

    const Numeric full = detail::combo_norm_sum(vp, n, 0, n, bits);
    rep.upper = full / (scale * Numeric(n + 1));
    const Numeric full_next = detail::combo_norm_sum(vp, n + 1, 0, n + 1, bits);
    rep.ratio_verdicts.push_back(judge("n/(n+1) <= full ratio", threshold,
                                       pow(Numeric(n + 2) * full / (Numeric(n + 1) * full_next), inv_p, bits)));
    if (n >= 2) {
      const Numeric interior = detail::combo_norm_sum(vp, n, 1, n - 1, bits);
      rep.lower = interior / (scale * Numeric(n - 1));
      const Numeric interior_next = detail::combo_norm_sum(vp, n + 1, 1, n, bits);
      if (interior_next.sign() == std::optional<int>(0)) throw DomainError("interior ratio denominator vanishes");
      rep.ratio_verdicts.insert(
          rep.ratio_verdicts.begin(),
          judge("interior ratio <= n/(n+1)",
                pow(Numeric(n) * interior / (Numeric(n - 1) * interior_next), inv_p, bits), threshold));
    }

    const Numeric midpoint = phi_eval(vp, Numeric::rational(1, 2), bits);
    const Numeric endpoints = (phi_eval(vp, Numeric(0), bits) + phi_eval(vp, Numeric(1), bits)) / Numeric(2);
    if (euclidean_square) {
      rep.oracle = euclidean_square_integral(vp);
      if (rep.lower) rep.lower_vs_oracle = judge("lower <= integral", *rep.lower, *rep.oracle);
      rep.upper_vs_oracle = judge("integral <= upper", *rep.oracle, rep.upper);
      rep.midpoint_verdict = judge("||(x+y)/2||^p <= integral", midpoint, *rep.oracle);
      rep.endpoint_verdict = judge("integral <= (||x||^p+||y||^p)/2", *rep.oracle, endpoints);
    } else {
      const long big = kClassicalChainOrder;
      const Numeric big_scale = pow(Numeric(big), vp.power_p, bits);
      const Numeric inner = detail::combo_norm_sum(vp, big, 1, big - 1, bits) / (big_scale * Numeric(big - 1));
      const Numeric outer = detail::combo_norm_sum(vp, big, 0, big, bits) / (big_scale * Numeric(big + 1));
      rep.midpoint_verdict = judge("||(x+y)/2||^p <= integral", midpoint, inner);
      rep.endpoint_verdict = judge("integral <= (||x||^p+||y||^p)/2", outer, endpoints);
    }
    return rep;
  });
}

}  // namespace cbounds
