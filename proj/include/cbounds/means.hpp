#pragma once

// p-logarithmic, identric and logarithmic means, and the brackets obtained
// by applying the Riemann-sum monotonicity to t^r, 1/t and (1-t)/t.

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "cbounds/convex.hpp"
#include "cbounds/numeric.hpp"
#include "cbounds/verdict.hpp"

namespace cbounds {

struct MeanKind {
  enum class Tag { Lp, Identric, Logarithmic };
  Tag tag = Tag::Identric;
  Numeric p;

  static MeanKind lp(const Numeric& p) {
    if (p.is_exact() && (sgn(p.exact()) == 0 || p.exact() == -1)) {
      throw DomainError("L_p needs p not in {0, -1}; use the identric (p = 0) or logarithmic (p = -1) mean");
    }
    if (!p.is_exact() && (!p.sign() || !(p + Numeric(1)).sign())) {
      throw DomainError("L_p exponent may be 0 or -1");
    }
    return MeanKind{Tag::Lp, p};
  }
  static MeanKind identric() { return MeanKind{Tag::Identric, Numeric(0)}; }
  static MeanKind logarithmic() { return MeanKind{Tag::Logarithmic, Numeric(-1)}; }

  std::string name() const {
    switch (tag) {
      case Tag::Lp:
        return "L_" + p.str();
      case Tag::Identric:
        return "identric";
      case Tag::Logarithmic:
        return "logarithmic";
    }
    return "?";
  }
};

namespace detail {

/// Extra working bits to absorb the cancellation in b^q - a^q and
/// ln b - ln a when b is close to a.
inline Precision cancellation_bits(const Numeric& a, const Numeric& b) {
  const double hi = b.to_double();
  const double gap = (b - a).to_double();
  if (!(gap > 0) || !(hi > 0)) return 0;
  const double ratio = hi / gap;
  if (ratio < 16.0) return 0;
  return static_cast<Precision>(std::ceil(std::log2(ratio))) + 32;
}

/// (a, b) ordered so that a <= b; rejects negatives.
inline std::pair<Numeric, Numeric> ordered_args(const Numeric& a, const Numeric& b) {
  const auto sa = a.sign();
  const auto sb = b.sign();
  if (!sa || !sb) throw DomainError("mean arguments must be certainly nonnegative");
  if (*sa < 0 || *sb < 0) throw DomainError("mean arguments must be nonnegative");
  const auto c = compare(a, b);
  if (!c) throw DomainError("cannot decide the order of the mean arguments");
  if (*c > 0) return {b, a};
  return {a, b};
}

}  // namespace detail

/// L_p(a, b), I(a, b) or L(a, b); symmetric in (a, b), and equal to a when a = b.
inline Numeric mean_value(const MeanKind& kind, const Numeric& a_in, const Numeric& b_in,
                          Precision prec = kDefaultPrecision) {
  const auto [a, b] = detail::ordered_args(a_in, b_in);
  if (compare(a, b) == std::optional<int>(0)) return a;
  const bool a_zero = a.sign() == std::optional<int>(0);
  const Precision work = prec + detail::cancellation_bits(a, b);
  switch (kind.tag) {
    case MeanKind::Tag::Lp: {
      const Numeric& p = kind.p;
      const Numeric q = p + Numeric(1);
      if (a_zero && q.sign() != std::optional<int>(1)) {
        throw DomainError("L_p(0, b) needs p > -1");
      }
      const Numeric rad = (pow(b, q, work) - pow(a, q, work)) / (q * (b - a));
      return pow(rad, Numeric(1) / p, work);
    }
    case MeanKind::Tag::Identric: {
      if (a_zero) throw DomainError("identric mean needs a > 0");
      const Numeric e = (b * log(b, work) - a * log(a, work)) / (b - a) - Numeric(1);
      return exp(e, work);
    }
    case MeanKind::Tag::Logarithmic: {
      if (a_zero) throw DomainError("logarithmic mean needs a > 0");
      return (b - a) / (log(b, work) - log(a, work));
    }
  }
  throw DomainError("unknown mean kind");
}

// ---------------------------------------------------------------------------
// L_r bracket and ratio chain

enum class PowerRegime { Convex, Affine, Concave };

namespace detail {
/// t^r is strictly convex for r > 1 and r < 0, affine for r = 1, strictly
/// concave for 0 < r < 1. The comparison is exact for exact r.
inline PowerRegime power_regime(const Numeric& r) {
  const auto s = r.sign();
  const auto s1 = (r - Numeric(1)).sign();
  if (!s || !s1) throw DomainError("cannot decide the sign of r or r - 1");
  if (*s == 0) throw DomainError("r = 0 is not a valid exponent here");
  if (*s < 0 || *s1 > 0) return PowerRegime::Convex;
  if (*s1 == 0) return PowerRegime::Affine;
  return PowerRegime::Concave;
}

/// sum_{i=first}^{last} [(n-i)a + ib]^r
inline Numeric combo_power_sum(const Numeric& a, const Numeric& b, long n, long first, long last, const Numeric& r,
                               Precision prec) {
  Numeric s(0);
  for (long i = first; i <= last; ++i) s += pow(Numeric(n - i) * a + Numeric(i) * b, r, prec);
  return s;
}
}  // namespace detail

struct LpRatioReport {
  Numeric threshold;  // n/(n+1)
  /// (n S'_{n-1} / ((n-1) S'_n))^{1/r} over interior points (n >= 2).
  std::optional<Numeric> interior_ratio;
  std::optional<Verdict> interior_verdict;
  /// ((n+2) S_n / ((n+1) S_{n+1}))^{1/r} over all points (n >= 1; needs a > 0 when r < 0).
  std::optional<Numeric> full_ratio;
  std::optional<Verdict> full_verdict;
  bool reversed = false;
  Precision precision = 0;

  bool inconclusive() const { return detail::any_inconclusive(interior_verdict, full_verdict); }
};

/// Ratio chain around n/(n+1): interior ratio below it and full ratio above
/// it for r > 1, both reversed for r < 0 (the 1/r root flips the order) and
/// for 0 < r < 1 (t^r concave), equalities at r = 1.
/// With a = 0 and r < 0 only the interior side is defined (it never samples
/// the endpoint a); that side is the a -> 0+ limit used for Bennett's r < 0
/// form.
inline LpRatioReport lp_ratio_chain(const Numeric& a_in, const Numeric& b_in, const Numeric& r, long n,
                                    const Context& ctx = {}) {
  if (n < 1) throw DomainError("ratio chain needs n >= 1");
  const auto [a, b] = detail::ordered_args(a_in, b_in);
  require_interval(a, b);
  const PowerRegime regime = detail::power_regime(r);
  const bool a_zero = a.sign() == std::optional<int>(0);
  const bool negative_r = r.sign() == std::optional<int>(-1);
  return certify(ctx, [&](Precision bits) {
    LpRatioReport rep;
    rep.reversed = negative_r || regime == PowerRegime::Concave;
    rep.threshold = Numeric(mpq_class(n, n + 1));
    const Numeric inv_r = Numeric(1) / r;
    auto verdict = [&](const char* label, const Numeric& smaller_if_convex, const Numeric& larger_if_convex) {
      if (rep.reversed) return judge(std::string(label) + " (reversed)", larger_if_convex, smaller_if_convex);
      return judge(label, smaller_if_convex, larger_if_convex);
    };
    if (n >= 2) {
      const Numeric num = Numeric(n) * detail::combo_power_sum(a, b, n, 1, n - 1, r, bits);
      const Numeric den = Numeric(n - 1) * detail::combo_power_sum(a, b, n + 1, 1, n, r, bits);
      rep.interior_ratio = pow(num / den, inv_r, bits);
      rep.interior_verdict = verdict("interior ratio <= n/(n+1)", *rep.interior_ratio, rep.threshold);
    }
    if (!(a_zero && negative_r)) {
      const Numeric num = Numeric(n + 2) * detail::combo_power_sum(a, b, n, 0, n, r, bits);
      const Numeric den = Numeric(n + 1) * detail::combo_power_sum(a, b, n + 1, 0, n + 1, r, bits);
      rep.full_ratio = pow(num / den, inv_r, bits);
      rep.full_verdict = verdict("n/(n+1) <= full ratio", rep.threshold, *rep.full_ratio);
    }
    return rep;
  });
}

struct LpBracketReport {
  Bracket bracket;
  Numeric mean;  // L_r(a, b)
  Verdict lower_verdict;
  Verdict upper_verdict;
  LpRatioReport ratios;
  bool reversed = false;
  Precision precision = 0;

  bool inconclusive() const {
    return detail::any_inconclusive(lower_verdict, upper_verdict) || ratios.inconclusive();
  }
};

/// Power-mean side of order n: (mean of x_i^r over the chosen grid points)^{1/r}.
inline Numeric lp_side(const Numeric& a, const Numeric& b, const Numeric& r, long n, bool interior, Precision prec) {
  const long first = interior ? 1 : 0;
  const long last = interior ? n - 1 : n;
  Numeric s(0);
  for (long i = first; i <= last; ++i) s += pow(grid_point(a, b, i, n), r, prec);
  return pow(s / Numeric(last - first + 1), Numeric(1) / r, prec);
}

/// Brackets L_r(a, b) between the interior-point and all-point power means
/// of order n (n >= 2): interior below for r > 1, above for r < 0 and 0 < r < 1.
inline LpBracketReport lp_bracket(const Numeric& a_in, const Numeric& b_in, const Numeric& r, long n,
                                  const Context& ctx = {}) {
  if (n < 2) throw DomainError("the interior-point side needs n >= 2");
  const MeanKind kind = MeanKind::lp(r);
  const auto [a, b] = detail::ordered_args(a_in, b_in);
  require_interval(a, b);
  const PowerRegime regime = detail::power_regime(r);
  const bool negative_r = r.sign() == std::optional<int>(-1);
  if (negative_r && a.sign() != std::optional<int>(1)) throw DomainError("r < 0 needs a > 0");
  LpRatioReport ratios = lp_ratio_chain(a, b, r, n, ctx);
  auto rep = certify(ctx, [&](Precision bits) {
    LpBracketReport out;
    out.reversed = negative_r || regime == PowerRegime::Concave;
    const Numeric interior = lp_side(a, b, r, n, true, bits);
    const Numeric full = lp_side(a, b, r, n, false, bits);
    const std::string is = "interior power mean, order " + std::to_string(n);
    const std::string fs = "all-point power mean, order " + std::to_string(n);
    out.bracket = out.reversed ? Bracket{full, interior, fs, is} : Bracket{interior, full, is, fs};
    out.mean = mean_value(kind, a, b, bits);
    out.lower_verdict = judge("lower <= L_r", out.bracket.lower, out.mean);
    out.upper_verdict = judge("L_r <= upper", out.mean, out.bracket.upper);
    return out;
  });
  rep.ratios = std::move(ratios);
  return rep;
}

// ---------------------------------------------------------------------------
// Identric mean bracket

struct IdentricBracketReport {
  Bracket bracket;
  Numeric mean;
  Verdict lower_verdict;
  Verdict upper_verdict;
  /// (n+1)-th root of prod_{i=0}^{n} over (n+2)-th root of the next product; claimed < n/(n+1).
  Numeric full_ratio;
  Verdict full_verdict;
  /// (n-1)-th root of prod_{i=1}^{n-1} over n-th root of the next product; claimed > n/(n+1).
  Numeric interior_ratio;
  Verdict interior_verdict;
  Precision precision = 0;

  bool inconclusive() const {
    return detail::any_inconclusive(lower_verdict, upper_verdict, full_verdict, interior_verdict);
  }
};

namespace detail {
/// prod_{i=first}^{last} [(n-i)a + ib]
inline Numeric combo_product(const Numeric& a, const Numeric& b, long n, long first, long last) {
  Numeric p(1);
  for (long i = first; i <= last; ++i) p *= Numeric(n - i) * a + Numeric(i) * b;
  return p;
}
}  // namespace detail

/// Geometric means of grid points of order n enclose I(a, b):
/// root_{n+1}(prod all)/n < I < root_{n-1}(prod interior)/n, n >= 2.
inline IdentricBracketReport identric_bracket(const Numeric& a_in, const Numeric& b_in, long n,
                                              const Context& ctx = {}) {
  if (n < 2) throw DomainError("the interior-point side needs n >= 2");
  const auto [a, b] = detail::ordered_args(a_in, b_in);
  if (a.sign() != std::optional<int>(1)) throw DomainError("identric bracket needs a > 0");
  require_interval(a, b);
  return certify(ctx, [&](Precision bits) {
    IdentricBracketReport r;
    const Numeric nn(n);
    const Numeric full = root(detail::combo_product(a, b, n, 0, n), static_cast<unsigned long>(n + 1), bits);
    const Numeric interior = root(detail::combo_product(a, b, n, 1, n - 1), static_cast<unsigned long>(n - 1), bits);
    r.bracket = Bracket{full / nn, interior / nn, "geometric mean of all grid points, order " + std::to_string(n),
                        "geometric mean of interior grid points, order " + std::to_string(n)};
    r.mean = mean_value(MeanKind::identric(), a, b, bits);
    r.lower_verdict = judge("lower < I", r.bracket.lower, r.mean);
    r.upper_verdict = judge("I < upper", r.mean, r.bracket.upper);
    const Numeric threshold(mpq_class(n, n + 1));
    r.full_ratio = full / root(detail::combo_product(a, b, n + 1, 0, n + 1), static_cast<unsigned long>(n + 2), bits);
    r.full_verdict = judge("full ratio < n/(n+1)", r.full_ratio, threshold);
    r.interior_ratio = interior / root(detail::combo_product(a, b, n + 1, 1, n), static_cast<unsigned long>(n), bits);
    r.interior_verdict = judge("n/(n+1) < interior ratio", threshold, r.interior_ratio);
    return r;
  });
}

// ---------------------------------------------------------------------------
// I(1-a, 1-b) / I(a, b) for 0 < a < b <= 1/2

struct IdentricRatioReport {
  Numeric ratio;          // I(1-a, 1-b) / I(a, b)
  Numeric lower_product;  // (m-1)-th root of interior product of (1-t)/t, order m
  Numeric upper_product;  // (n+1)-th root of full product of (1-t)/t, order n
  Verdict lower_verdict;
  Verdict upper_verdict;
  Numeric chain_interior;  // claimed < 1
  Numeric chain_full;      // claimed > 1
  Verdict chain_interior_verdict;
  Verdict chain_full_verdict;
  /// m = 2, n = 1 closed forms: (2-a-b)/(a+b) < ratio < sqrt((1-a)(1-b)/(ab)).
  Numeric special_lower;
  Numeric special_upper;
  Verdict special_lower_verdict;
  Verdict special_upper_verdict;
  Precision precision = 0;

  bool inconclusive() const {
    return detail::any_inconclusive(lower_verdict, upper_verdict, chain_interior_verdict, chain_full_verdict,
                                    special_lower_verdict, special_upper_verdict);
  }
};

namespace detail {
/// prod_{i=first}^{last} (k - (k-i)a - ib) / ((k-i)a + ib)
inline Numeric odds_product(const Numeric& a, const Numeric& b, long k, long first, long last) {
  Numeric p(1);
  for (long i = first; i <= last; ++i) {
    const Numeric t = Numeric(k - i) * a + Numeric(i) * b;
    p *= (Numeric(k) - t) / t;
  }
  return p;
}
}  // namespace detail

inline IdentricRatioReport identric_ratio_bounds(const Numeric& a, const Numeric& b, long m, long n,
                                                 const Context& ctx = {}) {
  if (m < 2) throw DomainError("interior side needs m >= 2");
  if (n < 1) throw DomainError("full side needs n >= 1");
  if (a.sign() != std::optional<int>(1)) throw DomainError("needs a > 0");
  require_interval(a, b);
  const auto half = compare(b, Numeric::rational(1, 2));
  if (!half || *half > 0) throw DomainError("needs b <= 1/2 ((1-t)/t is log-convex only on (0, 1/2])");
  return certify(ctx, [&](Precision bits) {
    IdentricRatioReport r;
    const Numeric one(1);
    r.ratio = mean_value(MeanKind::identric(), one - b, one - a, bits) / mean_value(MeanKind::identric(), a, b, bits);
    r.lower_product = root(detail::odds_product(a, b, m, 1, m - 1), static_cast<unsigned long>(m - 1), bits);
    r.upper_product = root(detail::odds_product(a, b, n, 0, n), static_cast<unsigned long>(n + 1), bits);
    r.lower_verdict = judge("interior product root < ratio", r.lower_product, r.ratio);
    r.upper_verdict = judge("ratio < full product root", r.ratio, r.upper_product);
    r.chain_interior =
        r.lower_product / root(detail::odds_product(a, b, m + 1, 1, m), static_cast<unsigned long>(m), bits);
    r.chain_full =
        r.upper_product / root(detail::odds_product(a, b, n + 1, 0, n + 1), static_cast<unsigned long>(n + 2), bits);
    r.chain_interior_verdict = judge("interior chain < 1", r.chain_interior, one);
    r.chain_full_verdict = judge("1 < full chain", one, r.chain_full);
    r.special_lower = (Numeric(2) - a - b) / (a + b);
    r.special_upper = sqrt((one - a) * (one - b) / (a * b), bits);
    r.special_lower_verdict = judge("(2-a-b)/(a+b) < ratio", r.special_lower, r.ratio);
    r.special_upper_verdict = judge("ratio < sqrt((1-a)(1-b)/(ab))", r.ratio, r.special_upper);
    return r;
  });
}

// ---------------------------------------------------------------------------
// Central binomial sequence C(2m+1, m)^{1/m}

/// C(n, k) by the multiplicative formula on exact integers.
inline mpz_class binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  mpz_class c = 1;
  for (unsigned long i = 1; i <= k; ++i) {
    c *= n - k + i;
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), i);
  }
  return c;
}

inline Numeric central_binomial_seq(long m, Precision prec = kDefaultPrecision) {
  if (m < 2) throw DomainError("central binomial sequence needs m >= 2");
  const auto um = static_cast<unsigned long>(m);
  return root(Numeric(binomial(2 * um + 1, um)), um, prec);
}

struct CentralBinomialReport {
  long m = 0;
  mpz_class binom;  // C(2m+1, m)
  Numeric value;    // C(2m+1, m)^{1/m}
  Numeric previous; // C(2m-1, m-1)^{1/(m-1)}
  Verdict increasing;
  Verdict below_four;
  Precision precision = 0;

  bool inconclusive() const { return detail::any_inconclusive(increasing, below_four); }
};

inline CentralBinomialReport central_binomial_step(long m, const Context& ctx = {}) {
  if (m < 2) throw DomainError("central binomial sequence needs m >= 2");
  return certify(ctx, [&](Precision bits) {
    CentralBinomialReport r;
    const auto um = static_cast<unsigned long>(m);
    r.m = m;
    r.binom = binomial(2 * um + 1, um);
    r.value = root(Numeric(r.binom), um, bits);
    r.previous = root(Numeric(binomial(2 * um - 1, um - 1)), um - 1, bits);
    r.increasing = judge("C(2m-1,m-1)^{1/(m-1)} <= C(2m+1,m)^{1/m}", r.previous, r.value);
    r.below_four = judge("C(2m+1,m)^{1/m} < 4", r.value, Numeric(4));
    return r;
  });
}

}  // namespace cbounds
