#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cbounds/means.hpp"
#include "cbounds/numeric.hpp"
#include "cbounds/verdict.hpp"

namespace cbounds {

enum class Family { Alzer, Bennett, RefinedAlzer, MincSathre, MincSathreRefined, Martins, MartinsReversed };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::Alzer:
      return "alzer";
    case Family::Bennett:
      return "bennett";
    case Family::RefinedAlzer:
      return "refined-alzer";
    case Family::MincSathre:
      return "minc-sathre";
    case Family::MincSathreRefined:
      return "minc-sathre-refined";
    case Family::Martins:
      return "martins";
    case Family::MartinsReversed:
      return "martins-reversed";
  }
  return "?";
}

inline Family parse_family(std::string_view name) {
  for (Family f : {Family::Alzer, Family::Bennett, Family::RefinedAlzer, Family::MincSathre,
                   Family::MincSathreRefined, Family::Martins, Family::MartinsReversed}) {
    if (name == to_string(f)) return f;
  }
  throw UnknownName("unknown family '" + std::string(name) + "'");
}

/// True for the families whose statement involves the exponent r.
inline bool family_uses_r(Family f) { return f != Family::MincSathre && f != Family::MincSathreRefined; }

struct PowerSumQuery {
  long n = 1;
  std::optional<Numeric> r;
};

/// sum_{i=1}^n i^r; exact for integer r.
inline Numeric power_sum(long n, const Numeric& r, Precision prec = kDefaultPrecision) {
  if (n < 1) throw DomainError("power_sum needs n >= 1");
  Numeric s(0);
  for (long i = 1; i <= n; ++i) s += pow(Numeric(i), r, prec);
  return s;
}

/// ((n+1) sum_1^n i^r / (n sum_1^{n+1} i^r))^{1/r}; the radicand is exact for integer r.
inline Numeric alzer_ratio(long n, const Numeric& r, Precision prec = kDefaultPrecision) {
  if (n < 1) throw DomainError("alzer_ratio needs n >= 1");
  if (r.sign() != std::optional<int>(1) && r.sign() != std::optional<int>(-1)) {
    throw DomainError("alzer_ratio needs r != 0 (the r -> 0 limit is the factorial ratio)");
  }
  const Numeric lower_sum = power_sum(n, r, prec);
  const Numeric upper_sum = lower_sum + pow(Numeric(n + 1), r, prec);
  const Numeric radicand = Numeric(n + 1) * lower_sum / (Numeric(n) * upper_sum);
  return pow(radicand, Numeric(1) / r, prec);
}

/// (n!)^{1/n} / ((n+1)!)^{1/(n+1)} from exact factorials.
inline Numeric factorial_ratio(long n, Precision prec = kDefaultPrecision) {
  if (n < 1) throw DomainError("factorial_ratio needs n >= 1");
  const auto un = static_cast<unsigned long>(n);
  return root(Numeric(factorial(un)), un, prec) / root(Numeric(factorial(un + 1)), un + 1, prec);
}

struct FamilyReport {
  Family family = Family::Alzer;
  long n = 0;
  std::optional<Numeric> r;
  /// alzer_ratio(n, r), or the factorial ratio for the Minc-Sathre families.
  Numeric ratio;
  /// Factorial ratio for the Martins families.
  std::optional<Numeric> factorial;
  std::vector<Verdict> checks;
  bool reversed = false;
  Precision precision = 0;

  Status status() const {
    Status s = Status::HoldsStrictly;
    for (const auto& v : checks) s = combine(s, v.status);
    return s;
  }
  bool inconclusive() const { return detail::any_inconclusive(checks); }
};

namespace detail {

struct ExponentSigns {
  int sign = 0;      // sign of r
  int sign_m1 = 0;   // sign of r - 1
};

inline ExponentSigns exponent_signs(const Numeric& r) {
  const auto s = r.sign();
  const auto s1 = (r - Numeric(1)).sign();
  if (!s || !s1) throw DomainError("cannot decide the sign of r or r - 1 for r = " + r.str());
  return {*s, *s1};
}

inline void require_family_range(Family family, const ExponentSigns& e) {
  switch (family) {
    case Family::Alzer:
    case Family::Martins:
      if (e.sign <= 0) throw DomainError(std::string(to_string(family)) + " needs r > 0");
      break;
    case Family::Bennett:
      if (e.sign == 0 || e.sign_m1 == 0) throw DomainError("bennett needs r != 0 and r != 1");
      break;
    case Family::RefinedAlzer:
      if (e.sign <= 0 || e.sign_m1 == 0) throw DomainError("refined-alzer needs r > 1 or 0 < r < 1");
      break;
    case Family::MartinsReversed:
      if (e.sign >= 0) throw DomainError("martins-reversed needs r < 0");
      break;
    case Family::MincSathre:
    case Family::MincSathreRefined:
      break;
  }
}

/// (n/(n+1)) (1 + 1/(n(n+2)))^{1/r}
inline Numeric refined_alzer_lower(long n, const Numeric& r, Precision prec) {
  const Numeric base(mpq_class(n + 1) * mpq_class(n + 1) / (mpq_class(n) * mpq_class(n + 2)));
  return Numeric(mpq_class(n, n + 1)) * pow(base, Numeric(1) / r, prec);
}

}  // namespace detail

/// Verdicts of one family at (n, r). Directions:
///   alzer            n/(n+1) <= R                      (r > 0)
///   bennett          R <= (n+1)/(n+2)                  (r > 1; reversed for r < 1, r != 0)
///   refined-alzer    (n/(n+1))(1+1/(n(n+2)))^{1/r} < R < (n+1)/(n+2)
///                                                      (r > 1; reversed for 0 < r < 1)
///   minc-sathre      n/(n+1) <= F
///   minc-sathre-refined (n+1)/(n+2) <= F
///   martins          R <= F                            (r > 0)
///   martins-reversed F <= R                            (r < 0)
/// where R = alzer_ratio(n, r) and F = factorial_ratio(n).
inline FamilyReport verify_family(Family family, const PowerSumQuery& q, const Context& ctx = {}) {
  if (q.n < 1) throw DomainError("n must be at least 1");
  const bool uses_r = family_uses_r(family);
  if (uses_r && !q.r) throw DomainError(std::string(to_string(family)) + " needs an exponent r");
  const detail::ExponentSigns e = uses_r ? detail::exponent_signs(*q.r) : detail::ExponentSigns{};
  if (uses_r) detail::require_family_range(family, e);
  const long n = q.n;
  return certify(ctx, [&](Precision bits) {
    FamilyReport rep;
    rep.family = family;
    rep.n = n;
    if (uses_r) rep.r = q.r;
    const Numeric this_step(mpq_class(n, n + 1));
    const Numeric next_step(mpq_class(n + 1, n + 2));
    switch (family) {
      case Family::Alzer:
        rep.ratio = alzer_ratio(n, *q.r, bits);
        rep.checks.push_back(judge("n/(n+1) <= R", this_step, rep.ratio));
        break;
      case Family::Bennett:
        rep.ratio = alzer_ratio(n, *q.r, bits);
        rep.reversed = e.sign_m1 < 0;
        rep.checks.push_back(rep.reversed ? judge("(n+1)/(n+2) <= R", next_step, rep.ratio)
                                          : judge("R <= (n+1)/(n+2)", rep.ratio, next_step));
        break;
      case Family::RefinedAlzer: {
        rep.ratio = alzer_ratio(n, *q.r, bits);
        rep.reversed = e.sign_m1 < 0;
        const Numeric lower = detail::refined_alzer_lower(n, *q.r, bits);
        if (rep.reversed) {
          rep.checks.push_back(judge("R < (n/(n+1))(1+1/(n(n+2)))^{1/r}", rep.ratio, lower));
          rep.checks.push_back(judge("(n+1)/(n+2) < R", next_step, rep.ratio));
        } else {
          rep.checks.push_back(judge("(n/(n+1))(1+1/(n(n+2)))^{1/r} < R", lower, rep.ratio));
          rep.checks.push_back(judge("R < (n+1)/(n+2)", rep.ratio, next_step));
        }
        break;
      }
      case Family::MincSathre:
        rep.ratio = factorial_ratio(n, bits);
        rep.checks.push_back(judge("n/(n+1) <= F", this_step, rep.ratio));
        break;
      case Family::MincSathreRefined:
        rep.ratio = factorial_ratio(n, bits);
        rep.checks.push_back(judge("(n+1)/(n+2) <= F", next_step, rep.ratio));
        break;
      case Family::Martins:
        rep.ratio = alzer_ratio(n, *q.r, bits);
        rep.factorial = factorial_ratio(n, bits);
        rep.checks.push_back(judge("R <= F", rep.ratio, *rep.factorial));
        break;
      case Family::MartinsReversed:
        rep.ratio = alzer_ratio(n, *q.r, bits);
        rep.factorial = factorial_ratio(n, bits);
        rep.reversed = true;
        rep.checks.push_back(judge("F <= R", *rep.factorial, rep.ratio));
        break;
    }
    return rep;
  });
}

/// Bennett and refined-Alzer verdicts re-derived from the L_r ratio chain on
/// [0, 1]: the refined lower bound is the full-ratio side at order n, the
/// upper bound (and Bennett) the interior-ratio side at order n + 1.
inline FamilyReport rederive_via_means(Family family, const PowerSumQuery& q, const Context& ctx = {}) {
  if (family != Family::Bennett && family != Family::RefinedAlzer) {
    throw DomainError("only bennett and refined-alzer follow from the L_r ratio chain");
  }
  if (q.n < 1) throw DomainError("n must be at least 1");
  if (!q.r) throw DomainError(std::string(to_string(family)) + " needs an exponent r");
  const detail::ExponentSigns e = detail::exponent_signs(*q.r);
  detail::require_family_range(family, e);
  const Numeric zero(0), one(1);
  FamilyReport rep;
  rep.family = family;
  rep.n = q.n;
  rep.r = q.r;
  const LpRatioReport next = lp_ratio_chain(zero, one, *q.r, q.n + 1, ctx);
  rep.reversed = next.reversed;
  rep.ratio = *next.interior_ratio;
  rep.precision = next.precision;
  if (family == Family::RefinedAlzer) {
    const LpRatioReport here = lp_ratio_chain(zero, one, *q.r, q.n, ctx);
    rep.checks.push_back(*here.full_verdict);
    rep.precision = std::max(rep.precision, here.precision);
  }
  rep.checks.push_back(*next.interior_verdict);
  return rep;
}

struct PowerSumBoundsReport {
  std::optional<Numeric> lower;
  Numeric sum;
  Numeric upper;
  std::optional<Verdict> lower_verdict;
  Verdict upper_verdict;
  /// True for 0 < r < 1, where the two closed forms swap roles.
  bool reversed = false;
  Precision precision = 0;

  bool inconclusive() const { return detail::any_inconclusive(lower_verdict, upper_verdict); }
};

/// (n+1)n^r/(r+1) < sum_1^n i^r < n(n+1)^r/(r+1) for r > 1, with the two
/// closed forms swapped for 0 < r < 1; only sum <= n(n+1)^r/(r+1) for -1 < r < 0.
inline PowerSumBoundsReport power_sum_bounds(long n, const Numeric& r, const Context& ctx = {}) {
  if (n < 1) throw DomainError("n must be at least 1");
  const detail::ExponentSigns e = detail::exponent_signs(r);
  const auto above_m1 = (r + Numeric(1)).sign();
  if (!above_m1) throw DomainError("cannot decide r + 1 > 0");
  if (*above_m1 <= 0 || e.sign == 0 || e.sign_m1 == 0) {
    throw DomainError("power_sum_bounds needs r > 1, 0 < r < 1 or -1 < r < 0");
  }
  return certify(ctx, [&](Precision bits) {
    PowerSumBoundsReport rep;
    const Numeric r1 = r + Numeric(1);
    const Numeric left_form = Numeric(n + 1) * pow(Numeric(n), r, bits) / r1;
    const Numeric right_form = Numeric(n) * pow(Numeric(n + 1), r, bits) / r1;
    rep.sum = power_sum(n, r, bits);
    if (e.sign < 0) {
      rep.upper = right_form;
      rep.upper_verdict = judge("sum <= n(n+1)^r/(r+1)", rep.sum, rep.upper);
      return rep;
    }
    rep.reversed = e.sign_m1 < 0;
    if (rep.reversed) {
      rep.lower = right_form;
      rep.upper = left_form;
      rep.lower_verdict = judge("n(n+1)^r/(r+1) < sum", *rep.lower, rep.sum);
      rep.upper_verdict = judge("sum < (n+1)n^r/(r+1)", rep.sum, rep.upper);
    } else {
      rep.lower = left_form;
      rep.upper = right_form;
      rep.lower_verdict = judge("(n+1)n^r/(r+1) < sum", *rep.lower, rep.sum);
      rep.upper_verdict = judge("sum < n(n+1)^r/(r+1)", rep.sum, rep.upper);
    }
    return rep;
  });
}

struct FactorialLowerReport {
  Numeric root;   // (n!)^{1/n}
  Numeric bound;  // (n+1)/e
  Verdict verdict;
  Precision precision = 0;

  bool inconclusive() const { return verdict.inconclusive(); }
};

/// (n!)^{1/n} >= (n+1)/e
inline FactorialLowerReport factorial_lower(long n, const Context& ctx = {}) {
  if (n < 1) throw DomainError("n must be at least 1");
  const auto un = static_cast<unsigned long>(n);
  return certify(ctx, [&](Precision bits) {
    FactorialLowerReport rep;
    rep.root = root(Numeric(factorial(un)), un, bits);
    rep.bound = Numeric(n + 1) / euler(bits);
    rep.verdict = judge("(n+1)/e <= (n!)^{1/n}", rep.bound, rep.root);
    return rep;
  });
}

}  // namespace cbounds
