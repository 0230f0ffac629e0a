#include <gtest/gtest.h>

#include "cbounds/trig.hpp"
#include "test_support.hpp"

using namespace cbounds;
using cbounds::testing::exactly;
using cbounds::testing::near;
using cbounds::testing::num;
using cbounds::testing::strict;

namespace {
mpq_class reduced(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}
}  // namespace

TEST(Angle, Parse) {
  EXPECT_EQ(*Angle::parse("pi/6").pi_multiple(), mpq_class(1, 6));
  EXPECT_EQ(*Angle::parse("3pi/4").pi_multiple(), mpq_class(3, 4));
  EXPECT_EQ(*Angle::parse("3*pi/4").pi_multiple(), mpq_class(3, 4));
  EXPECT_EQ(*Angle::parse("2/3*pi").pi_multiple(), mpq_class(2, 3));
  EXPECT_EQ(*Angle::parse("pi").pi_multiple(), mpq_class(1));
  EXPECT_FALSE(Angle::parse("0.5").pi_multiple());
  EXPECT_THROW(Angle::parse("pi*2"), DomainError);
  EXPECT_TRUE(exactly(cot(Angle::parse("pi/2"), 128), "0"));
  EXPECT_TRUE(exactly(tan(Angle::parse("pi/4").divided(1), 128) * Numeric(0), "0"));
}

TEST(Cot, Examples) {
  const auto r = cot_bounds(Angle::parse("pi/2"), 2);
  EXPECT_TRUE(near(*r.lower, "0.8660254037844386467637231707529361834714", 1e-30));
  EXPECT_TRUE(near(r.value, "1", 1e-30));
  EXPECT_TRUE(near(*r.upper, "1.299038105676657970145584756129404275207", 1e-30));
  EXPECT_TRUE(strict(*r.lower_verdict));
  EXPECT_TRUE(strict(*r.upper_verdict));

  const auto s = cot_bounds(Angle::parse("pi/2"), 3);
  EXPECT_TRUE(near(*s.lower, "1.60947570824873003253445914947313205238", 1e-30));
  EXPECT_TRUE(near(*s.upper, "1.931370849898476039041350979367758462856", 1e-30));
  EXPECT_TRUE(strict(*s.lower_verdict));
  EXPECT_TRUE(strict(*s.upper_verdict));

  // Order one: only the upper side, (2/3)cot(pi/8) - (1/3)cot(pi/4).
  const auto t = cot_bounds(Angle::parse("pi/4"), 1);
  EXPECT_FALSE(t.lower);
  EXPECT_TRUE(near(*t.upper, "1.276142374915396699201125816139798719046", 1e-30));
  EXPECT_TRUE(strict(*t.upper_verdict));
  EXPECT_THROW(cot_bounds(Angle::parse("3pi/4"), 2), DomainError);
  EXPECT_THROW(cot_bounds(Angle::parse("pi/4"), 0), DomainError);
}

TEST(Sinc, Examples) {
  const auto r = sinc_bounds(Angle::parse("pi/2"), 2);
  EXPECT_TRUE(near(*r.lower, "1/3", 1e-30));
  EXPECT_TRUE(near(r.value, "0.6366197723675813430755350534900574481378", 1e-30));
  EXPECT_TRUE(near(*r.upper, "1", 1e-30));

  const auto s = sinc_bounds(Angle::parse("pi/2"), 10);
  EXPECT_TRUE(near(*s.lower, "0.5739774104250039180890422040698350963134", 1e-30));
  EXPECT_TRUE(near(*s.upper, "0.7015279460750047887754960271964651177164", 1e-30));
  EXPECT_TRUE(strict(*s.lower_verdict));
  EXPECT_TRUE(strict(*s.upper_verdict));

  const auto t = sinc_bounds(Angle::parse("pi/6"), 2);
  EXPECT_TRUE(near(*t.lower, "0.9106836025229590978424821138352907889809", 1e-30));
  EXPECT_TRUE(near(t.value, "0.9549296585513720146133025802350861722067", 1e-30));
  EXPECT_TRUE(near(*t.upper, "1", 1e-30));
  EXPECT_TRUE(strict(*t.lower_verdict));
  EXPECT_TRUE(strict(*t.upper_verdict));
}

TEST(Sinc, WidthShrinksWithOrder) {
  double width = 1e9;
  for (long n = 2; n <= 40; ++n) {
    const auto r = sinc_bounds(Angle::radians(num("1.2")), n);
    const double w = (*r.upper - *r.lower).to_double();
    EXPECT_LT(w, width) << n;
    width = w;
  }
}

TEST(TanHalf, Examples) {
  const auto r = tan_half_bounds(3);
  EXPECT_TRUE(exactly(r.lower, "1/2"));
  EXPECT_TRUE(exactly(r.upper, "3/4"));
  EXPECT_TRUE(near(r.value, "0.5773502691896257645091487805019574556476", 1e-30));
  const auto s = tan_half_bounds(4);
  EXPECT_TRUE(near(s.value, "0.4142135623730950488016887242096980785697", 1e-30));
  EXPECT_TRUE(strict(s.lower_verdict));
  EXPECT_TRUE(strict(s.upper_verdict));
  const auto k = tan_step_ratio(2);
  EXPECT_TRUE(near(k.value, "0.5773502691896257645091487805019574556476", 1e-30));
  EXPECT_TRUE(strict(*k.lower_verdict));
  EXPECT_TRUE(strict(*k.upper_verdict));
  EXPECT_THROW(tan_half_bounds(2), DomainError);
  EXPECT_THROW(tan_step_ratio(1), DomainError);
}

TEST(TanHalf, StepBoundsTelescopeToTheDirectBounds) {
  for (long n = 3; n <= 60; ++n) {
    const auto r = tan_half_bounds(n);
    EXPECT_EQ(r.telescoped_lower, reduced(1, n - 1)) << n;
    EXPECT_EQ(r.telescoped_upper, reduced(3, n + 1)) << n;
    EXPECT_TRUE(strict(tan_step_ratio(n).lower_verdict.value())) << n;
    EXPECT_TRUE(strict(tan_step_ratio(n).upper_verdict.value())) << n;
  }
}

TEST(Rational, Examples) {
  const auto c = rational_trig_bounds(TrigFn::Cos, num("3"));
  EXPECT_TRUE(exactly(c.lower, "7/25"));
  EXPECT_TRUE(near(c.value, "1/2", 1e-30));
  EXPECT_TRUE(exactly(c.upper, "3/5"));
  EXPECT_TRUE(exactly(c.gap, "8/25"));
  EXPECT_TRUE(exactly(c.gap_formula, "8/25"));
  EXPECT_EQ(c.gap_matches, std::optional<bool>(true));
  EXPECT_FALSE(c.conjectural);

  const auto t = rational_trig_bounds(TrigFn::Tan, num("4"));
  EXPECT_TRUE(exactly(t.lower, "3/4"));
  EXPECT_TRUE(near(t.value, "1", 1e-30));
  EXPECT_TRUE(exactly(t.upper, "15/8"));

  const auto s = rational_trig_bounds(TrigFn::Sin, num("3"));
  EXPECT_TRUE(exactly(s.lower, "16/25"));
  EXPECT_TRUE(exactly(s.upper, "6/5"));
  EXPECT_TRUE(strict(s.lower_verdict));
  EXPECT_TRUE(strict(s.upper_verdict));

  EXPECT_TRUE(rational_trig_bounds(TrigFn::Sin, num("5/2")).conjectural);
  EXPECT_THROW(rational_trig_bounds(TrigFn::Tan, num("2")), DomainError);
  EXPECT_THROW(rational_trig_bounds(TrigFn::Tan, num("1")), DomainError);
  EXPECT_THROW(parse_trig_fn("sec"), UnknownName);
}

TEST(Rational, GapsMatchClosedFormsAndBoundsHold) {
  for (TrigFn fn : {TrigFn::Tan, TrigFn::Cos, TrigFn::Sin}) {
    for (long n = 3; n <= 200; ++n) {
      const auto r = rational_trig_bounds(fn, Numeric(n));
      EXPECT_EQ(r.gap_matches, std::optional<bool>(true)) << to_string(fn) << " " << n;
      EXPECT_TRUE(strict(r.lower_verdict)) << n;
      EXPECT_TRUE(strict(r.upper_verdict)) << n;
    }
  }
}

TEST(Gaps, ScaledValues) {
  const auto tan = gap_asymptotics(TrigFn::Tan, 100);
  EXPECT_TRUE(tan.all_match);
  EXPECT_EQ(tan.rows.back().n, 100);
  EXPECT_EQ(tan.rows.back().scaled, reduced(40008, 10192));
  const auto cos = gap_asymptotics(TrigFn::Cos, 100);
  // n^2 gap = (16n^4 - 40n^3 + 16n^2)/(n^4 + 8n^2 - 16n + 20)
  EXPECT_EQ(cos.rows.back().scaled, reduced(1600000000 - 40000000 + 160000, 100000000 + 80000 - 1600 + 20));
  EXPECT_NEAR(cos.rows.back().scaled.get_d(), 15.5893748122722, 1e-12);
  const auto tan_big = gap_asymptotics(TrigFn::Tan, 1000);
  EXPECT_NEAR(tan_big.rows.back().scaled.get_d(), 3.99206, 1e-5);
}

TEST(Gaps, DeviationShrinksLikeOneOverN) {
  for (TrigFn fn : {TrigFn::Tan, TrigFn::Cos, TrigFn::Sin}) {
    const auto r = gap_asymptotics(fn, 2000);
    EXPECT_TRUE(r.all_match) << to_string(fn);
    EXPECT_TRUE(r.deviation_bound_holds) << to_string(fn);
    EXPECT_LE(r.monotone_from, 10) << to_string(fn);
  }
}

TEST(Conjecture, SinglePointsAgreeWithDirectEvaluation) {
  const auto t = conjecture_sweep(TrigFn::Tan, 3, 3, 1);
  const auto direct = rational_trig_bounds(TrigFn::Tan, num("3"));
  EXPECT_TRUE(exact_equal(t.min_margin, direct.margin()) || near(t.min_margin - direct.margin(), "0", 1e-30));

  const auto s = conjecture_sweep(TrigFn::Sin, mpq_class(5, 2), mpq_class(5, 2), 1);
  const auto sd = rational_trig_bounds(TrigFn::Sin, num("5/2"));
  EXPECT_TRUE(near(s.min_margin - min(sd.lower_verdict.margin, sd.upper_verdict.margin), "0", 1e-30));
  EXPECT_EQ(s.argmin, mpq_class(5, 2));
}

TEST(Conjecture, ShortSweepsHaveNoViolations) {
  for (TrigFn fn : {TrigFn::Tan, TrigFn::Cos, TrigFn::Sin}) {
    const auto r = conjecture_sweep(fn, mpq_class(2001, 1000), mpq_class(12), mpq_class(1, 20));
    EXPECT_TRUE(r.violations.empty()) << to_string(fn);
    EXPECT_TRUE(r.inconclusive.empty()) << to_string(fn);
    EXPECT_EQ(status_of(r.min_margin), Status::HoldsStrictly) << to_string(fn);
    EXPECT_EQ(r.rows.back().x, mpq_class(12));
  }
}

TEST(Conjecture, WorkersDoNotChangeTheResult) {
  SweepOptions one, four;
  four.workers = 4;
  const auto a = conjecture_sweep(TrigFn::Cos, mpq_class(5, 2), mpq_class(9), mpq_class(1, 10), {}, one);
  const auto b = conjecture_sweep(TrigFn::Cos, mpq_class(5, 2), mpq_class(9), mpq_class(1, 10), {}, four);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].margin, b.rows[i].margin);
  EXPECT_EQ(a.argmin, b.argmin);
  EXPECT_EQ(a.samples, b.samples);
}
