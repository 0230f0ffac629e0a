#pragma once

// Riemann-sum sequences of a convex function and the inequalities between
// them.
//
// For a uniform grid x_i = a + i(b-a)/n the four sequences are
//   A_n = (b-a)/(n+1) * sum_{i=0}^{n}   f(x_i)    (both endpoints)
//   B_n = (b-a)/(n-1) * sum_{i=1}^{n-1} f(x_i)    (no endpoint, n >= 2)
//   S_n = (b-a)/n     * sum_{i=1}^{n}   f(x_i)    (right endpoints)
//   T_n = (b-a)/n     * sum_{i=0}^{n-1} f(x_i)    (left endpoints)
// For convex f, A_n decreases and B_n increases to the integral, which
// yields the bracket B_m <= integral <= A_n for every m >= 2, n >= 1.
//
// The engine works with convex or affine tags only. Concave functions are
// accepted at the public boundary of the bracket/refinement operations by
// running on -f and mapping the result back.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cbounds/function.hpp"
#include "cbounds/partition.hpp"
#include "cbounds/verdict.hpp"

namespace cbounds {

enum class SequenceKind { A, B, S, T };

inline const char* to_string(SequenceKind k) {
  switch (k) {
    case SequenceKind::A:
      return "A";
    case SequenceKind::B:
      return "B";
    case SequenceKind::S:
      return "S";
    case SequenceKind::T:
      return "T";
  }
  return "?";
}

namespace detail {

inline void require_convex_engine(const FnSpec& f) {
  if (!f.convex_or_affine()) {
    throw DomainError(f.name + " is tagged " + to_string(f.convexity) +
                      "; the two-partition engine needs a convex or affine function (negate a concave one)");
  }
}

inline std::vector<std::string> spot_check(const FnSpec& f, const Numeric& a, const Numeric& b, const Context& ctx) {
  if (!ctx.spot_check) return {};
  const auto diag = spot_check_convexity(f, a, b, ctx.spot_check_samples, ctx.seed, ctx.precision_bits);
  return diag.messages;
}

/// sum_{i=first}^{last} f(x_i^(n))
inline Numeric grid_sum(const FnSpec& f, const Numeric& a, const Numeric& b, long n, long first, long last,
                        Precision prec) {
  Numeric s(0);
  for (long i = first; i <= last; ++i) s += f(grid_point(a, b, i, n), prec);
  return s;
}

}  // namespace detail

/// A_n, B_n, S_n or T_n of f on [a, b].
inline Numeric sequence_value(SequenceKind kind, const FnSpec& f, const Numeric& a, const Numeric& b, long n,
                              Precision prec = kDefaultPrecision) {
  require_interval(a, b);
  f.require_on(a, b);
  if (n < 1) throw DomainError("sequence index must be at least 1");
  const Numeric width = b - a;
  switch (kind) {
    case SequenceKind::A:
      return width / Numeric(n + 1) * detail::grid_sum(f, a, b, n, 0, n, prec);
    case SequenceKind::B:
      if (n < 2) throw DomainError("B_n is defined for n >= 2");
      return width / Numeric(n - 1) * detail::grid_sum(f, a, b, n, 1, n - 1, prec);
    case SequenceKind::S:
      return width / Numeric(n) * detail::grid_sum(f, a, b, n, 1, n, prec);
    case SequenceKind::T:
      return width / Numeric(n) * detail::grid_sum(f, a, b, n, 0, n - 1, prec);
  }
  throw DomainError("unknown sequence kind");
}

// ---------------------------------------------------------------------------
// Two-partition inequality

struct SideReport {
  Numeric lhs;
  Numeric rhs;
  Verdict verdict;
  /// The sufficient condition for strictness is met (f strictly convex and
  /// some point strictly between its neighbours in the stated index range).
  bool strictness_condition = false;
};

struct CombinedReport {
  Numeric lhs;
  Numeric rhs_fine;    // sum over y of (y_{i+1}-y_i)(f(y_i)+f(y_{i+1}))
  Numeric rhs_coarse;  // sum over x of (x_{i+1}-x_i)(f(x_i)+f(x_{i+1}))
  Verdict verdict;     // lhs <= min(rhs_fine, rhs_coarse)
};

struct TwoPartitionReport {
  SideReport ineq2;  // sum (x_i - x_{i-1}) f(y_i) <= sum (x_{i+1}-x_{i-1}+y_i-y_{i+1}) f(x_i)
  SideReport ineq1;  // sum (y_{i+1}-y_i) f(x_i) <= sum (y_{i+1}-y_{i-1}+x_{i-1}-x_i) f(y_i)
  CombinedReport combined;
  Precision precision = 0;
  std::vector<std::string> diagnostics;

  bool inconclusive() const { return detail::any_inconclusive(ineq2.verdict, ineq1.verdict, combined.verdict); }
};

namespace detail {

inline TwoPartitionReport two_partition_at(const FnSpec& f, const Partition& x, const Partition& y, Precision prec) {
  const std::size_t n = x.order();
  const Numeric& a = x.a();
  const Numeric& b = x.b();
  // Extended sequences with x_{-1} = y_{-1} = a and x_{n+1} = y_{n+2} = b,
  // stored shifted by one: xs[i + 1] = x_i.
  std::vector<Numeric> xs;
  std::vector<Numeric> ys;
  xs.reserve(n + 3);
  ys.reserve(n + 4);
  xs.push_back(a);
  for (const auto& p : x.points()) xs.push_back(p);
  xs.push_back(b);
  ys.push_back(a);
  for (const auto& p : y.points()) ys.push_back(p);
  ys.push_back(b);
  auto X = [&](long i) -> const Numeric& { return xs[static_cast<std::size_t>(i + 1)]; };
  auto Y = [&](long i) -> const Numeric& { return ys[static_cast<std::size_t>(i + 1)]; };

  std::vector<Numeric> fx, fy;
  fx.reserve(n + 1);
  fy.reserve(n + 2);
  for (const auto& p : x.points()) fx.push_back(f(p, prec));
  for (const auto& p : y.points()) fy.push_back(f(p, prec));
  const long N = static_cast<long>(n);

  TwoPartitionReport r;

  Numeric lhs2(0), rhs2(0);
  for (long i = 1; i <= N; ++i) lhs2 += (X(i) - X(i - 1)) * fy[static_cast<std::size_t>(i)];
  for (long i = 0; i <= N; ++i) rhs2 += (X(i + 1) - X(i - 1) + Y(i) - Y(i + 1)) * fx[static_cast<std::size_t>(i)];
  r.ineq2.lhs = lhs2;
  r.ineq2.rhs = rhs2;
  r.ineq2.verdict = judge("coarse-weighted fine samples <= fine-weighted coarse samples", lhs2, rhs2);

  Numeric lhs1(0), rhs1(0);
  for (long i = 0; i <= N; ++i) lhs1 += (Y(i + 1) - Y(i)) * fx[static_cast<std::size_t>(i)];
  for (long i = 0; i <= N + 1; ++i) {
    rhs1 += (Y(i + 1) - Y(i - 1) + X(i - 1) - X(i)) * fy[static_cast<std::size_t>(i)];
  }
  r.ineq1.lhs = lhs1;
  r.ineq1.rhs = rhs1;
  r.ineq1.verdict = judge("fine-weighted coarse samples <= coarse-weighted fine samples", lhs1, rhs1);

  Numeric lhs(0), fine(0), coarse(0);
  for (long i = 0; i <= N; ++i) lhs += (Y(i + 1) - Y(i)) * fx[static_cast<std::size_t>(i)];
  for (long i = 0; i <= N - 1; ++i) lhs += (X(i + 1) - X(i)) * fy[static_cast<std::size_t>(i + 1)];
  for (long i = 0; i <= N; ++i) {
    fine += (Y(i + 1) - Y(i)) * (fy[static_cast<std::size_t>(i)] + fy[static_cast<std::size_t>(i + 1)]);
  }
  for (long i = 0; i <= N - 1; ++i) {
    coarse += (X(i + 1) - X(i)) * (fx[static_cast<std::size_t>(i)] + fx[static_cast<std::size_t>(i + 1)]);
  }
  r.combined.lhs = lhs;
  r.combined.rhs_fine = fine;
  r.combined.rhs_coarse = coarse;
  r.combined.verdict = conjunction("mixed sum <= min(fine trapezoid, coarse trapezoid)",
                                   judge("mixed <= fine", lhs, fine), judge("mixed <= coarse", lhs, coarse));

  if (f.convexity == Convexity::StrictlyConvex) {
    for (long i = 1; i <= N; ++i) {
      if (compare(X(i - 1), Y(i)) == std::optional<int>(-1) && compare(Y(i), X(i)) == std::optional<int>(-1)) {
        r.ineq2.strictness_condition = true;
        break;
      }
    }
    for (long i = 1; i <= N - 1; ++i) {
      if (compare(Y(i), X(i)) == std::optional<int>(-1) && compare(X(i), Y(i + 1)) == std::optional<int>(-1)) {
        r.ineq1.strictness_condition = true;
        break;
      }
    }
  }
  return r;
}

}  // namespace detail

/// Both sides and verdicts of the two-partition inequalities for convex f,
/// x of order n and y of order n + 1 interleaving x.
inline TwoPartitionReport two_partition_sides(const FnSpec& f, const Partition& x, const Partition& y,
                                              const Context& ctx = {}) {
  detail::require_convex_engine(f);
  if (!interleaving_valid(x, y)) throw DomainError("partitions do not interleave (need x_{i-1} <= y_i <= x_i)");
  f.require_on(x.a(), x.b());
  auto report = certify(ctx, [&](Precision bits) { return detail::two_partition_at(f, x, y, bits); });
  report.diagnostics = detail::spot_check(f, x.a(), x.b(), ctx);
  return report;
}

// ---------------------------------------------------------------------------
// Integral bracket

struct BracketReport {
  Bracket bracket;
  Verdict order;
  /// The function was concave and the bracket was obtained through -f.
  bool reversed = false;
  Precision precision = 0;
  std::vector<std::string> diagnostics;

  bool inconclusive() const { return order.inconclusive(); }
};

/// Encloses the integral of f over [a, b] between B_m and A_n (convex f);
/// concave f gives [A_n, B_m]. m = 2, n = 1 is the classical midpoint /
/// trapezoid bracket.
inline BracketReport hh_bracket(const FnSpec& f, const Numeric& a, const Numeric& b, long m, long n,
                                const Context& ctx = {}) {
  if (m < 2) throw DomainError("interior-point side needs m >= 2");
  if (n < 1) throw DomainError("endpoint side needs n >= 1");
  require_interval(a, b);
  f.require_on(a, b);
  if (!f.convex_or_affine() && !f.concave()) throw DomainError(f.name + " has no usable convexity tag");
  const bool reversed = f.concave();
  auto report = certify(ctx, [&](Precision bits) {
    BracketReport r;
    const Numeric bm = sequence_value(SequenceKind::B, f, a, b, m, bits);
    const Numeric an = sequence_value(SequenceKind::A, f, a, b, n, bits);
    const std::string bs = "B_" + std::to_string(m) + " (interior-point mean, order " + std::to_string(m) + ")";
    const std::string as = "A_" + std::to_string(n) + " (all-point mean, order " + std::to_string(n) + ")";
    if (reversed) {
      r.bracket = Bracket{an, bm, as + " [concave, reversed]", bs + " [concave, reversed]"};
    } else {
      r.bracket = Bracket{bm, an, bs, as};
    }
    r.order = r.bracket.ordered();
    r.reversed = reversed;
    return r;
  });
  report.diagnostics = detail::spot_check(f, a, b, ctx);
  return report;
}

// ---------------------------------------------------------------------------
// Geometric-mean bracket for log-convex functions

struct LogBracketReport {
  /// Encloses exp((1/(b-a)) * integral of ln f).
  Bracket geo;
  Verdict order;
  /// (m-1)-th root of interior product over m-th root of the next interior
  /// product; claimed <= 1.
  Numeric ratio_interior;
  Verdict ratio_interior_verdict;
  /// (n+1)-th root of the full product over (n+2)-th root of the next one;
  /// claimed >= 1.
  Numeric ratio_full;
  Verdict ratio_full_verdict;
  Precision precision = 0;
  std::vector<std::string> diagnostics;

  bool inconclusive() const {
    return detail::any_inconclusive(order, ratio_interior_verdict, ratio_full_verdict);
  }
};

namespace detail {
/// Mean of ln f over grid points first..last of order n, and the product of
/// f over the same points.
inline std::pair<Numeric, Numeric> log_mean_and_product(const FnSpec& f, const Numeric& a, const Numeric& b, long n,
                                                        long first, long last, Precision prec) {
  Numeric logs(0), prod(1);
  for (long i = first; i <= last; ++i) {
    const Numeric t = grid_point(a, b, i, n);
    const Numeric v = f(t, prec);
    if (v.sign() != std::optional<int>(1)) throw DomainError(f.name + ": nonpositive sample at t = " + t.str());
    prod *= v;
    logs += f.log_at(t, prec);
  }
  return {logs / Numeric(last - first + 1), prod};
}
}  // namespace detail

/// Margins of the verdicts are measured in log space (the claims are
/// compared after taking logarithms, which preserves their direction).
inline LogBracketReport log_bracket(const FnSpec& f, const Numeric& a, const Numeric& b, long m, long n,
                                    const Context& ctx = {}) {
  if (!f.log_convex) throw DomainError(f.name + " is not tagged log-convex");
  if (m < 2) throw DomainError("interior-point side needs m >= 2");
  if (n < 1) throw DomainError("endpoint side needs n >= 1");
  require_interval(a, b);
  f.require_on(a, b);
  auto report = certify(ctx, [&](Precision bits) {
    LogBracketReport r;
    const auto [gm, pm] = detail::log_mean_and_product(f, a, b, m, 1, m - 1, bits);
    const auto [gm1, pm1] = detail::log_mean_and_product(f, a, b, m + 1, 1, m, bits);
    const auto [gn, pn] = detail::log_mean_and_product(f, a, b, n, 0, n, bits);
    const auto [gn1, pn1] = detail::log_mean_and_product(f, a, b, n + 1, 0, n + 1, bits);
    const Numeric lower = root(pm, static_cast<unsigned long>(m - 1), bits);
    const Numeric upper = root(pn, static_cast<unsigned long>(n + 1), bits);
    r.geo = Bracket{lower, upper, "geometric mean of interior samples, order " + std::to_string(m),
                    "geometric mean of all samples, order " + std::to_string(n)};
    r.order = judge_margin("lower <= upper (log space)", gn - gm);
    r.ratio_interior = lower / root(pm1, static_cast<unsigned long>(m), bits);
    r.ratio_interior_verdict = judge_margin("interior ratio <= 1 (log space)", gm1 - gm);
    r.ratio_full = upper / root(pn1, static_cast<unsigned long>(n + 2), bits);
    r.ratio_full_verdict = judge_margin("1 <= full ratio (log space)", gn - gn1);
    return r;
  });
  report.diagnostics = detail::spot_check(f, a, b, ctx);
  return report;
}

// ---------------------------------------------------------------------------
// S_n / T_n refinement

struct GapChain {
  Numeric lower;
  Numeric value;
  Numeric upper;
  Verdict left;   // lower vs value
  Verdict right;  // value vs upper
};

struct STReport {
  /// S_n - S_{n+1} between (S_{n+1} - (b-a)f(a))/(n(n+2)) and ((b-a)f(b) - S_{n+1})/n^2.
  GapChain s_gap;
  /// T_{n+1} - T_n between (T_{n+1} - (b-a)f(a))/n^2 and ((b-a)f(b) - T_{n+1})/(n(n+2)).
  GapChain t_gap;
  /// For increasing f: S_{n+1} <= S_n and T_n <= T_{n+1}.
  std::optional<Verdict> s_decreasing;
  std::optional<Verdict> t_increasing;
  /// Concave f: every chain inequality reversed.
  bool reversed = false;
  Precision precision = 0;
  std::vector<std::string> diagnostics;

  bool inconclusive() const {
    return detail::any_inconclusive(s_gap.left, s_gap.right, t_gap.left, t_gap.right, s_decreasing, t_increasing);
  }
};

namespace detail {
/// Chain values for a convex g; the caller negates values for concave f.
inline STReport st_refinement_at(const FnSpec& g, const Numeric& a, const Numeric& b, long n, Precision prec) {
  const Numeric w = b - a;
  const Numeric sn = sequence_value(SequenceKind::S, g, a, b, n, prec);
  const Numeric sn1 = sequence_value(SequenceKind::S, g, a, b, n + 1, prec);
  const Numeric tn = sequence_value(SequenceKind::T, g, a, b, n, prec);
  const Numeric tn1 = sequence_value(SequenceKind::T, g, a, b, n + 1, prec);
  const Numeric wfa = w * g(a, prec);
  const Numeric wfb = w * g(b, prec);
  const Numeric nn = Numeric(n) * Numeric(n);
  const Numeric nn2 = Numeric(n) * Numeric(n + 2);

  STReport r;
  r.s_gap.lower = (sn1 - wfa) / nn2;
  r.s_gap.value = sn - sn1;
  r.s_gap.upper = (wfb - sn1) / nn;
  r.t_gap.lower = (tn1 - wfa) / nn;
  r.t_gap.value = tn1 - tn;
  r.t_gap.upper = (wfb - tn1) / nn2;
  return r;
}
}  // namespace detail

inline STReport st_refinement(const FnSpec& f, const Numeric& a, const Numeric& b, long n, const Context& ctx = {}) {
  if (n < 1) throw DomainError("refinement index must be at least 1");
  require_interval(a, b);
  f.require_on(a, b);
  if (!f.convex_or_affine() && !f.concave()) throw DomainError(f.name + " has no usable convexity tag");
  const bool reversed = f.concave();
  const FnSpec g = reversed ? negated(f) : f;
  auto report = certify(ctx, [&](Precision bits) {
    STReport r = detail::st_refinement_at(g, a, b, n, bits);
    const char* dir = reversed ? " (reversed)" : "";
    r.s_gap.left = judge(std::string("S-gap lower bound") + dir, r.s_gap.lower, r.s_gap.value);
    r.t_gap.right = judge(std::string("T-gap upper bound") + dir, r.t_gap.value, r.t_gap.upper);
    if (n == 1) {
      // S_1 = (b-a)f(b) and T_1 = (b-a)f(a): these two sides are identities.
      r.s_gap.right = identity_verdict(std::string("S-gap upper bound, identity at n = 1") + dir);
      r.t_gap.left = identity_verdict(std::string("T-gap lower bound, identity at n = 1") + dir);
    } else {
      r.s_gap.right = judge(std::string("S-gap upper bound") + dir, r.s_gap.value, r.s_gap.upper);
      r.t_gap.left = judge(std::string("T-gap lower bound") + dir, r.t_gap.lower, r.t_gap.value);
    }
    if (reversed) {
      for (GapChain* c : {&r.s_gap, &r.t_gap}) {
        c->lower = -c->lower;
        c->value = -c->value;
        c->upper = -c->upper;
      }
    }
    if (f.monotone == Monotone::Increasing) {
      // Sign of S_n - S_{n+1} is read from the value in f's own orientation.
      r.s_decreasing = judge_margin("S_{n+1} <= S_n", r.s_gap.value);
      r.t_increasing = judge_margin("T_n <= T_{n+1}", r.t_gap.value);
    }
    r.reversed = reversed;
    return r;
  });
  report.diagnostics = detail::spot_check(f, a, b, ctx);
  return report;
}

// ---------------------------------------------------------------------------
// Monotone convergence of the normalized A_n, B_n

struct LimitReport {
  long n_max = 0;
  /// A_n / (b-a) for n = 1..n_max (index n-1).
  std::vector<Numeric> a_means;
  /// B_n / (b-a) for n = 2..n_max (index n-2).
  std::vector<Numeric> b_means;
  /// A_{n+1} <= A_n for all n < n_max (worst step; margin is the minimum).
  Verdict a_decreasing;
  /// B_n <= B_{n+1} for all 2 <= n < n_max.
  Verdict b_increasing;
  /// B_n/(b-a) <= oracle <= A_n/(b-a) for every n.
  Verdict contains_oracle;
  /// First n at which a monotonicity or containment check failed.
  std::optional<long> first_offending_n;
  /// A_{n_max}/(b-a) - oracle and oracle - B_{n_max}/(b-a).
  Numeric upper_gap;
  Numeric lower_gap;
  std::optional<Verdict> within_tolerance;
  bool reversed = false;
  Precision precision = 0;
  std::vector<std::string> diagnostics;

  bool inconclusive() const {
    return detail::any_inconclusive(a_decreasing, b_increasing, contains_oracle, within_tolerance);
  }
};

/// Checks that A_n/(b-a) decreases and B_n/(b-a) increases for n <= n_max,
/// that both enclose `oracle` (an independent value of the mean
/// (1/(b-a)) * integral), and optionally that both gaps are within
/// `tolerance` at n_max. Concave f is handled through -f (directions reverse).
inline LimitReport sequence_limit_check(const FnSpec& f, const Numeric& a, const Numeric& b, long n_max,
                                        const Numeric& oracle, const Context& ctx = {},
                                        std::optional<Numeric> tolerance = std::nullopt) {
  if (n_max < 2) throw DomainError("limit check needs n_max >= 2");
  require_interval(a, b);
  f.require_on(a, b);
  if (!f.convex_or_affine() && !f.concave()) throw DomainError(f.name + " has no usable convexity tag");
  const bool reversed = f.concave();
  const FnSpec g = reversed ? negated(f) : f;
  const Numeric target = reversed ? -oracle : oracle;
  auto report = certify(ctx, [&](Precision bits) {
    LimitReport r;
    r.n_max = n_max;
    r.reversed = reversed;
    const Numeric w = b - a;
    std::vector<Numeric> am, bm;
    for (long n = 1; n <= n_max; ++n) am.push_back(sequence_value(SequenceKind::A, g, a, b, n, bits) / w);
    for (long n = 2; n <= n_max; ++n) bm.push_back(sequence_value(SequenceKind::B, g, a, b, n, bits) / w);

    auto note = [&](Status s, long n) {
      if ((s == Status::Violated || s == Status::Inconclusive) && !r.first_offending_n) r.first_offending_n = n;
    };
    std::optional<Verdict> adec, binc, cont;
    for (long n = 1; n < n_max; ++n) {
      Verdict v = judge("A_{n+1} <= A_n", am[static_cast<std::size_t>(n)], am[static_cast<std::size_t>(n - 1)]);
      note(v.status, n);
      adec = adec ? conjunction(v.label, *adec, v) : v;
    }
    for (long n = 2; n < n_max; ++n) {
      Verdict v = judge("B_n <= B_{n+1}", bm[static_cast<std::size_t>(n - 2)], bm[static_cast<std::size_t>(n - 1)]);
      note(v.status, n);
      binc = binc ? conjunction(v.label, *binc, v) : v;
    }
    for (long n = 1; n <= n_max; ++n) {
      Verdict v = judge("oracle <= A_n/(b-a)", target, am[static_cast<std::size_t>(n - 1)]);
      if (n >= 2) {
        v = conjunction("B_n/(b-a) <= oracle <= A_n/(b-a)", v,
                        judge("B_n/(b-a) <= oracle", bm[static_cast<std::size_t>(n - 2)], target));
      }
      note(v.status, n);
      cont = cont ? conjunction(v.label, *cont, v) : v;
    }
    r.a_decreasing = *adec;
    r.b_increasing = binc ? *binc : identity_verdict("B_n <= B_{n+1} (no steps for n_max = 2)");
    r.contains_oracle = *cont;
    r.upper_gap = am.back() - target;
    r.lower_gap = target - bm.back();
    if (tolerance) {
      r.within_tolerance = conjunction("both gaps within tolerance", judge("upper gap", r.upper_gap, *tolerance),
                                       judge("lower gap", r.lower_gap, *tolerance));
    }
    if (reversed) {
      for (auto& v : am) v = -v;
      for (auto& v : bm) v = -v;
    }
    r.a_means = std::move(am);
    r.b_means = std::move(bm);
    return r;
  });
  report.diagnostics = detail::spot_check(f, a, b, ctx);
  return report;
}

}  // namespace cbounds
