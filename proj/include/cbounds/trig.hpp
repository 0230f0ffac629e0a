#pragma once

// Cotangent and sinc bounds from the concavity of sin, the tan(pi/(2n))
// chain, the rational bounds for tan, cos and sin of pi/n with their exact
// gaps, and a sweep of those rational bounds over real arguments.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <future>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cbounds/numeric.hpp"
#include "cbounds/verdict.hpp"

namespace cbounds {

/// An angle in radians, held exactly as q*pi when it is a rational multiple
/// of pi so that every precision retry re-encloses pi.
class Angle {
 public:
  static Angle radians(Numeric value) { return Angle(std::move(value), std::nullopt); }
  static Angle pi_times(mpq_class q) {
    q.canonicalize();
    return Angle(Numeric(q), q);
  }

  /// "pi", "pi/6", "3pi/4", "3*pi/4", "2/3*pi" or a plain numeric literal.
  static Angle parse(std::string_view text) {
    std::string s;
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    const auto at = s.find("pi");
    if (at == std::string::npos) return radians(Numeric::parse(s));
    std::string head = s.substr(0, at);
    std::string tail = s.substr(at + 2);
    if (!head.empty() && head.back() == '*') head.pop_back();
    mpq_class q = 1;
    if (!head.empty()) q = Numeric::parse(head).exact();
    if (!tail.empty()) {
      if (tail.front() != '/') throw DomainError("cannot parse angle '" + std::string(text) + "'");
      q /= Numeric::parse(tail.substr(1)).exact();
    }
    return pi_times(q);
  }

  const std::optional<mpq_class>& pi_multiple() const { return pi_multiple_; }

  Numeric value(Precision prec) const {
    if (pi_multiple_) return sgn(*pi_multiple_) == 0 ? Numeric(0) : pi(prec) * Numeric(*pi_multiple_);
    return value_;
  }

  Angle divided(long n) const {
    if (pi_multiple_) return pi_times(*pi_multiple_ / n);
    return radians(value_ / Numeric(n));
  }

  std::string str() const {
    if (pi_multiple_) return pi_multiple_->get_str() + "*pi";
    return value_.str();
  }

 private:
  Angle(Numeric value, std::optional<mpq_class> q) : value_(std::move(value)), pi_multiple_(std::move(q)) {}

  Numeric value_;
  std::optional<mpq_class> pi_multiple_;
};

namespace detail {
/// Quarter-turn index k mod 4 when the angle is k*pi/2 for an integer k.
inline std::optional<long> quarter_turns(const Angle& x) {
  if (!x.pi_multiple()) return std::nullopt;
  const mpq_class twice = *x.pi_multiple() * 2;
  if (twice.get_den() != 1) return std::nullopt;
  mpz_class k = twice.get_num() % 4;
  if (k < 0) k += 4;
  return k.get_si();
}
}  // namespace detail

inline Numeric sin(const Angle& x, Precision prec) {
  if (const auto k = detail::quarter_turns(x)) return Numeric(*k == 1 ? 1 : (*k == 3 ? -1 : 0));
  return sin(x.value(prec), prec);
}

inline Numeric cos(const Angle& x, Precision prec) {
  if (const auto k = detail::quarter_turns(x)) return Numeric(*k == 0 ? 1 : (*k == 2 ? -1 : 0));
  return cos(x.value(prec), prec);
}

inline Numeric cot(const Angle& x, Precision prec) {
  if (detail::quarter_turns(x)) return cos(x, prec) / sin(x, prec);
  return cot(x.value(prec), prec);
}

inline Numeric tan(const Angle& x, Precision prec) {
  if (detail::quarter_turns(x)) return sin(x, prec) / cos(x, prec);
  return tan(x.value(prec), prec);
}

namespace detail {
/// 0 < x <= pi/2
inline void require_acute(const Angle& x) {
  if (x.pi_multiple()) {
    const mpq_class& q = *x.pi_multiple();
    if (sgn(q) <= 0 || q > mpq_class(1, 2)) throw DomainError("angle must satisfy 0 < x <= pi/2");
    return;
  }
  const Numeric v = x.value(kDefaultPrecision);
  const auto pos = v.sign();
  const auto below = compare(v, pi(kDefaultPrecision) / Numeric(2));
  if (!pos || !below) throw DomainError("cannot decide 0 < x <= pi/2 for x = " + v.str());
  if (*pos <= 0 || *below > 0) throw DomainError("angle must satisfy 0 < x <= pi/2");
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Cotangent and sinc bounds

struct TrigBoundsReport {
  std::optional<Numeric> lower;
  Numeric value;
  std::optional<Numeric> upper;
  std::optional<Verdict> lower_verdict;
  std::optional<Verdict> upper_verdict;
  Precision precision = 0;

  bool inconclusive() const { return detail::any_inconclusive(lower_verdict, upper_verdict); }
};

/// ((n-1)/n)cot(x/(n+1)) + cot(x)/n < cot(x/n) < ((n+1)/(n+2))cot(x/(n+1)) - cot(x)/(n+2);
/// lower side for n >= 2, upper for n >= 1.
inline TrigBoundsReport cot_bounds(const Angle& x, long n, const Context& ctx = {}) {
  if (n < 1) throw DomainError("cot bounds need n >= 1");
  detail::require_acute(x);
  return certify(ctx, [&](Precision bits) {
    TrigBoundsReport r;
    const Numeric cot_x = cot(x, bits);
    const Numeric cot_next = cot(x.divided(n + 1), bits);
    r.value = cot(x.divided(n), bits);
    r.upper = Numeric(mpq_class(n + 1, n + 2)) * cot_next - cot_x / Numeric(n + 2);
    r.upper_verdict = judge("cot(x/n) < upper", r.value, *r.upper);
    if (n >= 2) {
      r.lower = Numeric(mpq_class(n - 1, n)) * cot_next + cot_x / Numeric(n);
      r.lower_verdict = judge("lower < cot(x/n)", *r.lower, r.value);
    }
    return r;
  });
}

/// (sin x cot(x/n) + cos x)/(n+1) < sin(x)/x < (sin x cot(x/n) - cos x)/(n-1);
/// lower side for n >= 1, upper for n >= 2.
inline TrigBoundsReport sinc_bounds(const Angle& x, long n, const Context& ctx = {}) {
  if (n < 1) throw DomainError("sinc bounds need n >= 1");
  detail::require_acute(x);
  return certify(ctx, [&](Precision bits) {
    TrigBoundsReport r;
    const Numeric s = sin(x, bits);
    const Numeric c = cos(x, bits);
    const Numeric sc = s * cot(x.divided(n), bits);
    r.value = s / x.value(bits);
    r.lower = (sc + c) / Numeric(n + 1);
    r.lower_verdict = judge("lower < sin(x)/x", *r.lower, r.value);
    if (n >= 2) {
      r.upper = (sc - c) / Numeric(n - 1);
      r.upper_verdict = judge("sin(x)/x < upper", r.value, *r.upper);
    }
    return r;
  });
}

// ---------------------------------------------------------------------------
// tan(pi/(2n))

struct TanHalfReport {
  Numeric lower;  // 1/(n-1)
  Numeric value;  // tan(pi/(2n))
  Numeric upper;  // 3/(n+1)
  Verdict lower_verdict;
  Verdict upper_verdict;
  /// Products of the single-step ratio bounds for k = 2..n-1 times tan(pi/4).
  mpq_class telescoped_lower;
  mpq_class telescoped_upper;
  Precision precision = 0;

  bool inconclusive() const { return detail::any_inconclusive(lower_verdict, upper_verdict); }
};

inline TanHalfReport tan_half_bounds(long n, const Context& ctx = {}) {
  if (n < 3) throw DomainError("tan(pi/(2n)) bounds need n >= 3");
  return certify(ctx, [&](Precision bits) {
    TanHalfReport r;
    r.lower = Numeric(mpq_class(1, n - 1));
    r.upper = Numeric(mpq_class(3, n + 1));
    r.value = tan(Angle::pi_times(mpq_class(1, 2 * n)), bits);
    r.lower_verdict = judge("1/(n-1) < tan(pi/(2n))", r.lower, r.value);
    r.upper_verdict = judge("tan(pi/(2n)) < 3/(n+1)", r.value, r.upper);
    r.telescoped_lower = 1;
    r.telescoped_upper = 1;
    for (long k = 2; k <= n - 1; ++k) {
      r.telescoped_lower *= mpq_class(k - 1, k);
      r.telescoped_upper *= mpq_class(k + 1, k + 2);
    }
    r.telescoped_lower.canonicalize();
    r.telescoped_upper.canonicalize();
    return r;
  });
}

/// (k-1)/k < tan(pi/(2(k+1))) / tan(pi/(2k)) < (k+1)/(k+2), k >= 2.
inline TrigBoundsReport tan_step_ratio(long k, const Context& ctx = {}) {
  if (k < 2) throw DomainError("the step ratio needs k >= 2");
  return certify(ctx, [&](Precision bits) {
    TrigBoundsReport r;
    r.value = tan(Angle::pi_times(mpq_class(1, 2 * (k + 1))), bits) / tan(Angle::pi_times(mpq_class(1, 2 * k)), bits);
    r.lower = Numeric(mpq_class(k - 1, k));
    r.upper = Numeric(mpq_class(k + 1, k + 2));
    r.lower_verdict = judge("(k-1)/k < ratio", *r.lower, r.value);
    r.upper_verdict = judge("ratio < (k+1)/(k+2)", r.value, *r.upper);
    return r;
  });
}

// ---------------------------------------------------------------------------
// Rational bounds for tan, cos, sin of pi/n

enum class TrigFn { Tan, Cos, Sin };

inline const char* to_string(TrigFn f) {
  switch (f) {
    case TrigFn::Tan:
      return "tan";
    case TrigFn::Cos:
      return "cos";
    case TrigFn::Sin:
      return "sin";
  }
  return "?";
}

inline TrigFn parse_trig_fn(std::string_view name) {
  if (name == "tan") return TrigFn::Tan;
  if (name == "cos") return TrigFn::Cos;
  if (name == "sin") return TrigFn::Sin;
  throw UnknownName("unknown trig function '" + std::string(name) + "' (expected tan, cos or sin)");
}

/// Rational lower bound of f(pi/n).
inline Numeric rational_lower(TrigFn fn, const Numeric& n) {
  const Numeric one(1), two(2);
  switch (fn) {
    case TrigFn::Tan:
      return two * (n - one) / (n * (n - two));
    case TrigFn::Cos:
      return (n - two) * (n + Numeric(4)) / (n * n + two * n + Numeric(10));
    case TrigFn::Sin:
      return two * (n + one) * (n + one) / ((n - one) * (n * n + two * n + Numeric(10)));
  }
  throw DomainError("unknown trig function");
}

/// Rational upper bound of f(pi/n).
inline Numeric rational_upper(TrigFn fn, const Numeric& n) {
  const Numeric one(1), two(2);
  switch (fn) {
    case TrigFn::Tan:
      return Numeric(6) * (n + one) / ((n + Numeric(4)) * (n - two));
    case TrigFn::Cos:
      return n * (n - two) / (n * n - two * n + two);
    case TrigFn::Sin:
      return Numeric(6) * (n - one) * (n - one) / ((n + one) * (n * n - two * n + two));
  }
  throw DomainError("unknown trig function");
}

/// Closed form of upper - lower.
inline Numeric gap_formula(TrigFn fn, const Numeric& n) {
  const Numeric n2 = n * n;
  const Numeric n3 = n2 * n;
  const Numeric n4 = n2 * n2;
  switch (fn) {
    case TrigFn::Tan:
      return (Numeric(4) * n2 + Numeric(8)) / (n * (n2 + Numeric(2) * n - Numeric(8)));
    case TrigFn::Cos:
      return (Numeric(16) * n4 - Numeric(40) * n3 + Numeric(16) * n2) /
             (n2 * (n4 + Numeric(8) * n2 - Numeric(16) * n + Numeric(20)));
    case TrigFn::Sin: {
      const Numeric n5 = n4 * n;
      const Numeric n6 = n3 * n3;
      const Numeric num = Numeric(4) * n6 - Numeric(8) * n5 + Numeric(44) * n4 - Numeric(152) * n3 +
                          Numeric(160) * n2 - Numeric(64) * n;
      const Numeric den =
          n6 + Numeric(7) * n4 - Numeric(16) * n3 + Numeric(12) * n2 + Numeric(16) * n - Numeric(20);
      return num / (n * den);
    }
  }
  throw DomainError("unknown trig function");
}

inline Numeric trig_of_pi_over(TrigFn fn, const Numeric& n, Precision prec) {
  Angle x = n.is_exact() ? Angle::pi_times(mpq_class(1) / n.exact()) : Angle::radians(pi(prec) / n);
  switch (fn) {
    case TrigFn::Tan:
      return tan(x, prec);
    case TrigFn::Cos:
      return cos(x, prec);
    case TrigFn::Sin:
      return sin(x, prec);
  }
  throw DomainError("unknown trig function");
}

struct RationalTrigReport {
  TrigFn fn = TrigFn::Tan;
  Numeric arg;
  Numeric lower;
  Numeric value;
  Numeric upper;
  Verdict lower_verdict;
  Verdict upper_verdict;
  Numeric gap;          // upper - lower
  Numeric gap_formula;  // closed form
  /// gap == gap_formula, decided exactly; nullopt for an approximate argument.
  std::optional<bool> gap_matches;
  /// The argument is not an integer >= 3: the bounds are conjectural there.
  bool conjectural = false;
  Precision precision = 0;

  /// min(value - lower, upper - value)
  Numeric margin() const { return min(lower_verdict.margin, upper_verdict.margin); }
  bool inconclusive() const { return detail::any_inconclusive(lower_verdict, upper_verdict); }
};

inline void require_above_two(const Numeric& arg) {
  const auto c = compare(arg, Numeric(2));
  if (!c || *c <= 0) throw DomainError("rational trig bounds need an argument > 2");
}

inline RationalTrigReport rational_trig_bounds(TrigFn fn, const Numeric& arg, const Context& ctx = {}) {
  require_above_two(arg);
  const bool integer = arg.is_exact() && arg.exact().get_den() == 1;
  return certify(ctx, [&](Precision bits) {
    RationalTrigReport r;
    r.fn = fn;
    r.arg = arg;
    r.conjectural = !integer;
    r.lower = rational_lower(fn, arg);
    r.upper = rational_upper(fn, arg);
    r.value = trig_of_pi_over(fn, arg, bits);
    const std::string f = to_string(fn);
    r.lower_verdict = judge("lower < " + f + "(pi/n)", r.lower, r.value);
    r.upper_verdict = judge(f + "(pi/n) < upper", r.value, r.upper);
    r.gap = r.upper - r.lower;
    r.gap_formula = gap_formula(fn, arg);
    if (r.gap.is_exact() && r.gap_formula.is_exact()) r.gap_matches = exact_equal(r.gap, r.gap_formula);
    return r;
  });
}

// ---------------------------------------------------------------------------
// Gap asymptotics

struct GapRow {
  long n = 0;
  mpq_class gap;
  mpq_class scaled;  // n*gap (tan, sin) or n^2*gap (cos)
  bool matches_formula = false;
};

struct GapAsymptoticsReport {
  TrigFn fn = TrigFn::Tan;
  int order = 1;  // power of n in the scaling
  long limit = 4;
  /// C in |scaled - limit| < C/n for n >= 10.
  long deviation_constant = 10;
  std::vector<GapRow> rows;
  bool all_match = true;
  /// |scaled - limit| < C/n holds for every n in [10, n_max].
  bool deviation_bound_holds = true;
  /// First n from which |scaled - limit| is nonincreasing through n_max.
  long monotone_from = 3;
};

/// Limits of the scaled gap: 4 for tan and sin (scaled by n), 16 for cos (scaled by n^2).
inline GapAsymptoticsReport gap_asymptotics(TrigFn fn, long n_max) {
  if (n_max < 3) throw DomainError("gap asymptotics need n_max >= 3");
  GapAsymptoticsReport rep;
  rep.fn = fn;
  rep.order = fn == TrigFn::Cos ? 2 : 1;
  rep.limit = fn == TrigFn::Cos ? 16 : 4;
  rep.deviation_constant = fn == TrigFn::Cos ? 300 : 10;
  mpq_class previous_dev = -1;
  for (long n = 3; n <= n_max; ++n) {
    const Numeric nn(n);
    GapRow row;
    row.n = n;
    row.gap = (rational_upper(fn, nn) - rational_lower(fn, nn)).exact();
    row.matches_formula = row.gap == gap_formula(fn, nn).exact();
    const mpq_class scale = rep.order == 2 ? mpq_class(n) * n : mpq_class(n);
    row.scaled = row.gap * scale;
    rep.all_match = rep.all_match && row.matches_formula;
    const mpq_class dev = abs(row.scaled - rep.limit);
    if (n >= 10 && dev * n >= rep.deviation_constant) rep.deviation_bound_holds = false;
    if (previous_dev >= 0 && dev > previous_dev) rep.monotone_from = n;
    previous_dev = dev;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Sweep over real arguments

struct SweepRow {
  mpq_class x;
  double lower = 0;
  double value = 0;
  double upper = 0;
  double margin = 0;
};

struct SweepOptions {
  bool keep_rows = true;
  unsigned workers = 1;
  /// Local minima of the margin are refined until the search interval is this narrow.
  mpq_class refine_width{1, 1000000000};
};

struct ConjectureReport {
  TrigFn fn = TrigFn::Tan;
  mpq_class x_min;
  mpq_class x_max;
  mpq_class step;
  std::size_t samples = 0;
  std::size_t refinements = 0;
  Numeric min_margin;
  mpq_class argmin;
  std::vector<mpq_class> violations;
  std::vector<mpq_class> inconclusive;
  std::vector<SweepRow> rows;
  /// A positive minimum margin is numerical evidence over the sampled points, not a proof.
  static constexpr const char* kLabel = "evidence-only";
};

namespace detail {
struct SweepPoint {
  SweepRow row;
  Numeric margin;
  bool violated = false;
  bool undecided = false;
};

inline SweepPoint sweep_point(TrigFn fn, const mpq_class& x, const Context& ctx) {
  const RationalTrigReport r = rational_trig_bounds(fn, Numeric(x), ctx);
  SweepPoint p;
  p.margin = r.margin();
  p.row = SweepRow{x, r.lower.to_double(), r.value.to_double(), r.upper.to_double(), p.margin.to_double()};
  const auto s = p.margin.sign();
  p.violated = s && *s < 0;
  p.undecided = !s;
  return p;
}

/// Golden-section search for the smallest margin on [lo, hi].
inline std::vector<SweepPoint> refine_minimum(TrigFn fn, mpq_class lo, mpq_class hi, const mpq_class& width,
                                              const Context& ctx) {
  static const mpq_class kGolden(381966, 1000000);
  std::vector<SweepPoint> visited;
  mpq_class m1 = lo + (hi - lo) * kGolden;
  mpq_class m2 = hi - (hi - lo) * kGolden;
  SweepPoint p1 = sweep_point(fn, m1, ctx);
  SweepPoint p2 = sweep_point(fn, m2, ctx);
  while (hi - lo > width) {
    if (p1.row.margin <= p2.row.margin) {
      hi = m2;
      m2 = m1;
      visited.push_back(p2);
      p2 = p1;
      m1 = lo + (hi - lo) * kGolden;
      p1 = sweep_point(fn, m1, ctx);
    } else {
      lo = m1;
      m1 = m2;
      visited.push_back(p1);
      p1 = p2;
      m2 = hi - (hi - lo) * kGolden;
      p2 = sweep_point(fn, m2, ctx);
    }
  }
  visited.push_back(p1);
  visited.push_back(p2);
  return visited;
}
}  // namespace detail

/// Evaluates the rational bounds at x = x_min + k*step up to x_max (x_max
/// always included), then refines every local minimum of the margin.
inline ConjectureReport conjecture_sweep(TrigFn fn, const mpq_class& x_min, const mpq_class& x_max,
                                         const mpq_class& step, const Context& ctx = {},
                                         const SweepOptions& options = {}) {
  require_above_two(Numeric(x_min));
  if (x_max < x_min) throw DomainError("sweep needs x_min <= x_max");
  if (sgn(step) <= 0) throw DomainError("sweep step must be positive");
  ConjectureReport rep;
  rep.fn = fn;
  rep.x_min = x_min;
  rep.x_max = x_max;
  rep.step = step;

  std::vector<mpq_class> grid;
  for (mpq_class x = x_min; x <= x_max; x += step) grid.push_back(x);
  if (grid.back() != x_max) grid.push_back(x_max);

  std::vector<detail::SweepPoint> points(grid.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(options.workers, grid.size()));
  const std::size_t chunk = (grid.size() + workers - 1) / workers;
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(grid.size(), begin + chunk);
    auto job = [&, begin, end] {
      for (std::size_t i = begin; i < end; ++i) points[i] = detail::sweep_point(fn, grid[i], ctx);
    };
    if (workers == 1) {
      job();
    } else {
      jobs.push_back(std::async(std::launch::async, job));
    }
  }
  for (auto& j : jobs) j.get();

  std::vector<detail::SweepPoint> extra;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double m = points[i].row.margin;
    const bool left_ok = i == 0 || m <= points[i - 1].row.margin;
    const bool right_ok = i + 1 == points.size() || m <= points[i + 1].row.margin;
    if (!left_ok || !right_ok || points.size() < 2) continue;
    const mpq_class& lo = grid[i == 0 ? 0 : i - 1];
    const mpq_class& hi = grid[i + 1 == grid.size() ? i : i + 1];
    auto found = detail::refine_minimum(fn, lo, hi, options.refine_width, ctx);
    ++rep.refinements;
    extra.insert(extra.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
  }

  rep.samples = points.size() + extra.size();
  bool have_min = false;
  auto absorb = [&](const detail::SweepPoint& p) {
    if (p.violated) rep.violations.push_back(p.row.x);
    if (p.undecided) rep.inconclusive.push_back(p.row.x);
    if (!have_min || p.row.margin < rep.min_margin.to_double() ||
        (p.row.margin == rep.min_margin.to_double() && p.row.x < rep.argmin)) {
      rep.min_margin = p.margin;
      rep.argmin = p.row.x;
      have_min = true;
    }
  };
  for (const auto& p : points) absorb(p);
  for (const auto& p : extra) absorb(p);
  std::sort(rep.violations.begin(), rep.violations.end());
  rep.violations.erase(std::unique(rep.violations.begin(), rep.violations.end()), rep.violations.end());
  std::sort(rep.inconclusive.begin(), rep.inconclusive.end());
  rep.inconclusive.erase(std::unique(rep.inconclusive.begin(), rep.inconclusive.end()), rep.inconclusive.end());
  if (options.keep_rows) {
    rep.rows.reserve(points.size());
    for (const auto& p : points) rep.rows.push_back(p.row);
  }
  return rep;
}

}  // namespace cbounds
