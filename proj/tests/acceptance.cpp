// Acceptance suite: one PASS/FAIL line per property, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cbounds/cbounds.hpp"

using namespace cbounds;

namespace {

/// Accumulates failures of one property; `detail` is printed on the result line.
struct Check {
  long cases = 0;
  long failures = 0;
  std::string first_failure;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
  void expect(const Verdict& v, Status want, const std::string& what) {
    expect(v.status == want, what + ": " + v.label + " is " + to_string(v.status));
  }
  void strict(const Verdict& v, const std::string& what) { expect(v, Status::HoldsStrictly, what); }
  void holds(const Verdict& v, const std::string& what) {
    expect(v.status == Status::HoldsStrictly || v.status == Status::HoldsWithEquality,
           what + ": " + v.label + " is " + to_string(v.status));
  }
  void exact_equality(const Verdict& v, const std::string& what) {
    expect(v.status == Status::HoldsWithEquality && v.margin.is_exact_zero(),
           what + ": " + v.label + " is " + to_string(v.status) + " with margin " + v.margin.str());
  }
};

struct Criterion {
  std::string name;
  std::function<void(Check&)> body;
};

std::string str(long v) { return std::to_string(v); }

mpq_class reduced(mpq_class q) {
  q.canonicalize();
  return q;
}

/// Upper bound of |x| including its error radius.
double abs_bound(const Numeric& x) {
  const Numeric a = abs(x);
  return a.to_double() + a.err_double();
}

// ---------------------------------------------------------------------------

void monotone_sums(Check& c) {
  struct Case {
    const char* fn;
    const char* a;
    const char* b;
    Numeric oracle;
    bool exact;
  };
  const Numeric ln2 = log(Numeric(2), 256);
  const std::vector<Case> cases = {
      {"square", "0", "1", Numeric::rational(1, 3), true},
      {"power:4", "0", "1", Numeric::rational(1, 5), true},
      {"exp", "0", "1", euler(256) - Numeric(1), false},
      {"reciprocal", "1", "2", ln2, false},
      {"neg-log", "1", "2", Numeric(1) - Numeric(2) * ln2, false},
  };
  for (const auto& k : cases) {
    const FnSpec f = lookup_function(k.fn);
    const LimitReport r = sequence_limit_check(f, Numeric::parse(k.a), Numeric::parse(k.b), 500, k.oracle);
    c.strict(r.a_decreasing, k.fn);
    c.strict(r.b_increasing, k.fn);
    c.strict(r.contains_oracle, k.fn);
    if (k.exact) {
      bool all_exact = true;
      for (const auto& v : r.a_means) all_exact = all_exact && v.is_exact();
      for (const auto& v : r.b_means) all_exact = all_exact && v.is_exact();
      c.expect(all_exact && r.a_decreasing.margin.is_exact(), std::string(k.fn) + ": sums not exact");
    }
  }
  c.detail << "5 functions, n <= 500";
}

void two_partition_engine(Check& c) {
  std::mt19937_64 rng(20240611);
  const FnSpec square = lookup_function("square");
  const FnSpec affine = lookup_function("affine");
  for (int trial = 0; trial < 200; ++trial) {
    // Order 1 has no interior coarse point, so the second inequality can only be an equality there.
    const long n = std::uniform_int_distribution<long>(2, 30)(rng);
    // n - 1 distinct interior points on the grid k/1000.
    std::vector<long> ks;
    while (static_cast<long>(ks.size()) < n - 1) {
      const long k = std::uniform_int_distribution<long>(1, 999)(rng);
      if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
    }
    std::sort(ks.begin(), ks.end());
    std::vector<mpq_class> xq = {mpq_class(0)};
    for (long k : ks) xq.push_back(reduced(mpq_class(k, 1000)));
    xq.push_back(mpq_class(1));
    std::vector<Numeric> xs, ys = {Numeric(0)};
    for (const auto& q : xq) xs.push_back(Numeric(q));
    for (long i = 1; i <= n; ++i) {
      const long j = std::uniform_int_distribution<long>(1, 96)(rng);
      ys.emplace_back(reduced(xq[i - 1] + (xq[i] - xq[i - 1]) * mpq_class(j, 97)));
    }
    ys.emplace_back(1);
    const Partition x(xs), y(ys);
    const std::string tag = "trial " + str(trial) + " (order " + str(n) + ")";
    const auto s = two_partition_sides(square, x, y);
    c.strict(s.ineq2.verdict, tag);
    c.strict(s.ineq1.verdict, tag);
    c.expect(s.ineq2.verdict.margin.is_exact() && s.ineq1.verdict.margin.is_exact(), tag + ": inexact margin");
    const auto a = two_partition_sides(affine, x, y);
    c.exact_equality(a.ineq2.verdict, tag + " affine");
    c.exact_equality(a.ineq1.verdict, tag + " affine");
  }
  c.detail << "200 random interleaved pairs, orders 2..30";
}

void hh_refinement(Check& c) {
  const FnSpec square = lookup_function("square");
  const Numeric third = Numeric::rational(1, 3);
  Context ctx;
  ctx.spot_check = false;
  for (long m = 2; m <= 100; ++m) {
    for (long n = 1; n <= 100; ++n) {
      const BracketReport r = hh_bracket(square, Numeric(0), Numeric(1), m, n, ctx);
      const auto [lo, hi] = r.bracket.contains(third);
      const std::string tag = "m=" + str(m) + " n=" + str(n);
      c.strict(lo, tag);
      c.strict(hi, tag);
      c.expect(exact_equal(r.bracket.lower, Numeric(reduced(mpq_class(2 * m - 1, 6 * m)))), tag + ": lower form");
      c.expect(exact_equal(r.bracket.upper, Numeric(reduced(mpq_class(2 * n + 1, 6 * n)))), tag + ": upper form");
    }
  }
  const BracketReport r = hh_bracket(square, Numeric(0), Numeric(1), 100, 100);
  const Numeric width = r.bracket.width();
  c.expect(exact_equal(width, Numeric::rational(1, 300)), "width at m = n = 100 is " + width.str());
  c.detail << "9900 brackets contain 1/3; width(100,100) = " << width.str();
}

void st_equality_clause(Check& c) {
  const FnSpec square = lookup_function("square");
  const STReport one = st_refinement(square, Numeric(0), Numeric(1), 1);
  c.exact_equality(one.s_gap.right, "n=1");
  c.exact_equality(one.t_gap.left, "n=1");
  c.strict(one.s_gap.left, "n=1");
  c.strict(one.t_gap.right, "n=1");
  for (long n = 2; n <= 100; ++n) {
    const STReport r = st_refinement(square, Numeric(0), Numeric(1), n);
    for (const Verdict* v : {&r.s_gap.left, &r.s_gap.right, &r.t_gap.left, &r.t_gap.right}) {
      c.strict(*v, "n=" + str(n));
    }
  }
  c.detail << "equality at n = 1, strict for n = 2..100";
}

struct SweepCase {
  Family family;
  const char* r;
};

std::vector<SweepCase> family_grid() {
  std::vector<SweepCase> g;
  for (const char* r : {"2", "3", "7", "1/2"}) {
    g.push_back({Family::Alzer, r});
    g.push_back({Family::Bennett, r});
    g.push_back({Family::RefinedAlzer, r});
  }
  for (const char* r : {"-1", "-2"}) g.push_back({Family::Bennett, r});
  return g;
}

void power_family_sweep(Check& c) {
  long records = 0;
  for (const auto& k : family_grid()) {
    const Numeric r = Numeric::parse(k.r);
    for (long n = 1; n <= 200; ++n) {
      const FamilyReport rep = verify_family(k.family, PowerSumQuery{n, r});
      const std::string tag = std::string(to_string(k.family)) + " n=" + str(n) + " r=" + k.r;
      for (const auto& v : rep.checks) c.strict(v, tag);
      const bool expect_reversed = k.family != Family::Alzer && sgn(r.exact() - 1) < 0;
      c.expect(rep.reversed == expect_reversed, tag + ": unexpected direction");
      ++records;
    }
  }
  c.detail << records << " records, r in {2, 3, 7, 1/2, -1, -2}, n = 1..200";
}

void cross_derivation(Check& c) {
  long compared = 0;
  for (const auto& k : family_grid()) {
    if (k.family == Family::Alzer) continue;
    const Numeric r = Numeric::parse(k.r);
    for (long n = 1; n <= 200; ++n) {
      const FamilyReport direct = verify_family(k.family, PowerSumQuery{n, r});
      const FamilyReport via = rederive_via_means(k.family, PowerSumQuery{n, r});
      const std::string tag = std::string(to_string(k.family)) + " n=" + str(n) + " r=" + k.r;
      c.expect(direct.checks.size() == via.checks.size(), tag + ": check count");
      for (std::size_t i = 0; i < std::min(direct.checks.size(), via.checks.size()); ++i) {
        c.expect(direct.checks[i].status == via.checks[i].status,
                 tag + ": " + to_string(direct.checks[i].status) + " vs " + to_string(via.checks[i].status));
        ++compared;
      }
      c.expect(via.status() == Status::HoldsStrictly, tag + ": means route not strict");
    }
  }
  c.detail << compared << " verdicts agree between the direct and the L_r-chain routes";
}

void binomial_limit(Check& c) {
  Numeric last;
  for (long m = 2; m <= 200; ++m) {
    const CentralBinomialReport r = central_binomial_step(m);
    c.strict(r.increasing, "m=" + str(m));
    c.strict(r.below_four, "m=" + str(m));
    last = r.value;
  }
  c.strict(judge("3.93 < value", Numeric::rational(393, 100), last), "m=200");
  c.strict(judge("value < 4", last, Numeric(4)), "m=200");
  c.detail << "increasing for m = 2..200, value(200) = " << last.decimal(8);
}

void identric_special_case(Check& c) {
  std::mt19937_64 rng(515);
  std::uniform_int_distribution<long> pick(1, 500);
  double worst = 1e9;
  for (int trial = 0; trial < 20; ++trial) {
    long i = pick(rng), j = pick(rng);
    while (j == i) j = pick(rng);
    const Numeric a(reduced(mpq_class(std::min(i, j), 1000)));
    const Numeric b(reduced(mpq_class(std::max(i, j), 1000)));
    const IdentricRatioReport r = identric_ratio_bounds(a, b, 2, 1);
    const std::string tag = "a=" + a.str() + " b=" + b.str();
    c.strict(r.special_lower_verdict, tag);
    c.strict(r.special_upper_verdict, tag);
    worst = std::min({worst, r.special_lower_verdict.margin.to_double(), r.special_upper_verdict.margin.to_double()});
  }
  c.detail << "20 random pairs in (0, 1/2], smallest margin " << worst;
}

void trig_identities(Check& c) {
  for (TrigFn fn : {TrigFn::Tan, TrigFn::Cos, TrigFn::Sin}) {
    for (long n = 3; n <= 10000; ++n) {
      const RationalTrigReport r = rational_trig_bounds(fn, Numeric(n));
      const std::string tag = std::string(to_string(fn)) + " n=" + str(n);
      c.expect(r.gap_matches == std::optional<bool>(true), tag + ": gap differs from its closed form");
      c.strict(r.lower_verdict, tag);
      c.strict(r.upper_verdict, tag);
    }
  }
  // Relative deviations from the limits at n = 10^4, from the exact scaled gaps.
  const mpq_class n(10000);
  const mpq_class tan_scaled = n * (rational_upper(TrigFn::Tan, Numeric(n)) - rational_lower(TrigFn::Tan, Numeric(n))).exact();
  const mpq_class cos_scaled =
      n * n * (rational_upper(TrigFn::Cos, Numeric(n)) - rational_lower(TrigFn::Cos, Numeric(n))).exact();
  const double tan_dev = std::abs(tan_scaled.get_d() - 4.0) / 4.0;
  const double cos_dev = std::abs(cos_scaled.get_d() - 16.0) / 16.0;
  c.expect(tan_dev < 1e-3, "n*gap(tan) deviates by " + std::to_string(tan_dev));
  c.expect(cos_dev < 1e-3, "n^2*gap(cos) deviates by " + std::to_string(cos_dev));
  c.detail << "n = 3..10000 for tan, cos, sin; relative deviation at 10^4: tan " << tan_dev << ", cos " << cos_dev;
}

void conjecture_evidence(Check& c) {
  SweepOptions options;
  options.keep_rows = false;
  options.workers = std::max(1u, std::thread::hardware_concurrency());
  const mpq_class lo(2001, 1000), hi(100), step(1, 1000);
  for (TrigFn fn : {TrigFn::Tan, TrigFn::Cos, TrigFn::Sin}) {
    const ConjectureReport r = conjecture_sweep(fn, lo, hi, step, {}, options);
    const std::string f = to_string(fn);
    c.expect(r.violations.empty(), f + ": " + str(static_cast<long>(r.violations.size())) + " violations");
    c.expect(r.inconclusive.empty(), f + ": " + str(static_cast<long>(r.inconclusive.size())) + " inconclusive");
    c.expect(status_of(r.min_margin) == Status::HoldsStrictly, f + ": min margin " + r.min_margin.str());
    c.detail << f << " min " << r.min_margin.to_double() << " at " << r.argmin.get_d() << " (" << r.samples
             << " samples); ";
  }
  c.detail << ConjectureReport::kLabel;
}

void normed_brackets(Check& c) {
  std::mt19937_64 rng(3141);
  std::uniform_int_distribution<long> coord(-6, 6), den(1, 4), dim(2, 5), q_pick(1, 3), p_pick(1, 2);
  long strict_pairs = 0, oracle_pairs = 0;
  for (int trial = 0; trial < 50; ++trial) {
    VectorPair vp;
    const long d = dim(rng);
    do {
      vp.x.clear();
      vp.y.clear();
      for (long i = 0; i < d; ++i) {
        vp.x.emplace_back(reduced(mpq_class(coord(rng), den(rng))));
        vp.y.emplace_back(reduced(mpq_class(coord(rng), den(rng))));
      }
    } while (linearly_independent(vp) != std::optional<bool>(true));
    vp.norm_p = Numeric(q_pick(rng));
    vp.power_p = Numeric(p_pick(rng));
    const std::string tag = "trial " + str(trial) + " (d=" + str(d) + " q=" + vp.norm_p.str() + " p=" +
                            vp.power_p.str() + ")";
    std::optional<NormedBracketReport> previous;
    for (long n = 2; n <= 50; ++n) {
      const NormedBracketReport r = segment_integral_bracket(vp, n);
      const std::string at = tag + " n=" + str(n);
      for (const auto& v : r.all_verdicts()) {
        if (r.strict_expected) {
          c.strict(v, at);
        } else {
          c.holds(v, at);
        }
      }
      if (r.oracle) {
        c.strict(judge("lower < integral", *r.lower, *r.oracle), at);
        c.strict(judge("integral < upper", *r.oracle, r.upper), at);
      }
      if (previous) {
        c.holds(judge("lower increases", *previous->lower, *r.lower), at);
        c.holds(judge("upper decreases", r.upper, previous->upper), at);
      }
      previous = r;
    }
    if (previous->strict_expected) ++strict_pairs;
    if (previous->oracle) ++oracle_pairs;
  }
  VectorPair face;
  face.x = {Numeric(1), Numeric(0)};
  face.y = {Numeric(0), Numeric(1)};
  face.norm_p = Numeric(1);
  face.power_p = Numeric(1);
  for (long n = 2; n <= 10; ++n) {
    const NormedBracketReport r = segment_integral_bracket(face, n);
    for (const auto& v : r.all_verdicts()) c.exact_equality(v, "l1 face n=" + str(n));
  }
  c.detail << "50 random pairs (" << oracle_pairs << " against the closed form, " << strict_pairs
           << " strictly convex), n = 2..50; l1 face pair gives equality";
}

void limit_checks(Check& c) {
  const Numeric p = Numeric::parse("1e-6");
  const Numeric lp = mean_value(MeanKind::lp(p), Numeric(1), Numeric(2));
  const Numeric identric = mean_value(MeanKind::identric(), Numeric(1), Numeric(2));
  const double d = abs_bound(lp - identric);
  c.expect(d < 1e-5, "|L_p - I| = " + std::to_string(d));
  double worst = 0;
  for (long n = 1; n <= 20; ++n) {
    const double e = abs_bound(alzer_ratio(n, p) - factorial_ratio(n));
    worst = std::max(worst, e);
    c.expect(e < 1e-5, "n=" + str(n) + ": |ratio - factorial ratio| = " + std::to_string(e));
  }
  c.detail << "|L_p(1,2) - I(1,2)| = " << d << " at p = 1e-6; worst ratio gap for n <= 20: " << worst;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"monotone Riemann sums", monotone_sums},
      {"two-partition engine", two_partition_engine},
      {"refined Hermite-Hadamard bracket", hh_refinement},
      {"endpoint-sum refinement equality clause", st_equality_clause},
      {"Alzer/Bennett/refined-Alzer sweep", power_family_sweep},
      {"power families re-derived through L_r means", cross_derivation},
      {"central binomial limit", binomial_limit},
      {"identric ratio special case", identric_special_case},
      {"rational trig bounds and gap identities", trig_identities},
      {"real-argument trig sweep", conjecture_evidence},
      {"normed segment brackets", normed_brackets},
      {"limit checks", limit_checks},
  };
  int failed = 0;
  for (const auto& crit : criteria) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      crit.body(c);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = error.empty() && c.failures == 0;
    if (!pass) ++failed;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << crit.name << "  [" << c.cases << " checks, " << secs << " s]";
    if (!error.empty()) {
      std::cout << "  exception: " << error;
    } else if (c.failures) {
      std::cout << "  " << c.failures << " failed, first: " << c.first_failure;
    } else {
      std::cout << "  " << c.detail.str();
    }
    std::cout << std::endl;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << std::endl;
  return failed ? 1 : 0;
}
