#include <gtest/gtest.h>

#include "cbounds/power_inequalities.hpp"
#include "test_support.hpp"

using namespace cbounds;
using cbounds::testing::exactly;
using cbounds::testing::near;
using cbounds::testing::num;
using cbounds::testing::strict;

namespace {
FamilyReport run(Family f, long n, const char* r = nullptr) {
  PowerSumQuery q{n, std::nullopt};
  if (r) q.r = num(r);
  return verify_family(f, q);
}
}  // namespace

TEST(PowerSum, Values) {
  EXPECT_TRUE(exactly(power_sum(3, num("2")), "14"));
  EXPECT_TRUE(exactly(power_sum(4, num("1")), "10"));
  EXPECT_TRUE(near(power_sum(3, num("1/2")), "4.146264369941972342329135065715570445512", 1e-30));
  EXPECT_TRUE(exactly(power_sum(3, num("-1")), "11/6"));
}

TEST(AlzerRatio, Values) {
  EXPECT_TRUE(near(alzer_ratio(1, num("2")), "0.6324555320336758663997787088865437067439", 1e-30));
  EXPECT_TRUE(exactly(alzer_ratio(1, num("1")), "2/3"));
  EXPECT_TRUE(exactly(alzer_ratio(2, num("1")), "3/4"));
  EXPECT_THROW(alzer_ratio(1, num("0")), DomainError);
  EXPECT_TRUE(near(factorial_ratio(2), "0.7782717162260105455547544392198254034134", 1e-30));
}

TEST(AlzerRatio, LinearExponentIsExactlyTheBennettBound) {
  for (long n = 1; n <= 50; ++n) {
    EXPECT_TRUE(exactly(alzer_ratio(n, num("1")), std::to_string(n + 1) + "/" + std::to_string(n + 2)));
  }
}

TEST(AlzerRatio, ApproachesFactorialRatioAsExponentVanishes) {
  for (long n : {1L, 5L, 20L}) {
    const Numeric limit = factorial_ratio(n);
    double previous = 1.0;
    for (int k = 1; k <= 6; ++k) {
      const Numeric r = Numeric(1) / pow(Numeric(10), k);
      const double d = abs(alzer_ratio(n, r) - limit).to_double();
      EXPECT_LT(d, previous) << "n=" << n << " k=" << k;
      previous = d;
    }
    EXPECT_LT(previous, 1e-5);
  }
  EXPECT_TRUE(near(alzer_ratio(5, num("1e-6")), "0.8701901382321649567682169804436730531151", 1e-30));
}

TEST(Families, Examples) {
  const auto refined = run(Family::RefinedAlzer, 1, "2");
  ASSERT_EQ(refined.checks.size(), 2u);
  EXPECT_TRUE(near(refined.checks[0].smaller.value(), "0.5773502691896257645091487805019574556476", 1e-30));
  EXPECT_TRUE(strict(refined.checks[0]));
  EXPECT_TRUE(strict(refined.checks[1]));

  EXPECT_TRUE(strict(run(Family::Bennett, 1, "2").checks[0]));
  const auto alzer = run(Family::Alzer, 1, "2");
  EXPECT_TRUE(near(alzer.checks[0].margin, "0.1324555320336758663997787088865437067439", 1e-30));
  EXPECT_EQ(run(Family::MincSathreRefined, 2).status(), Status::HoldsStrictly);
  const auto martins = run(Family::Martins, 1, "1");
  EXPECT_TRUE(near(*martins.factorial, "0.7071067811865475244008443621048490392848", 1e-30));
  EXPECT_TRUE(strict(martins.checks[0]));
}

TEST(Families, SweepHoldsStrictly) {
  for (long n = 1; n <= 40; ++n) {
    for (const char* r : {"2", "3", "7", "1/2", "5/2"}) {
      EXPECT_EQ(run(Family::Alzer, n, r).status(), Status::HoldsStrictly) << n << " " << r;
      EXPECT_EQ(run(Family::Bennett, n, r).status(), Status::HoldsStrictly) << n << " " << r;
      EXPECT_EQ(run(Family::RefinedAlzer, n, r).status(), Status::HoldsStrictly) << n << " " << r;
      EXPECT_EQ(run(Family::Martins, n, r).status(), Status::HoldsStrictly) << n << " " << r;
    }
    for (const char* r : {"-1", "-2", "-1/2"}) {
      const auto b = run(Family::Bennett, n, r);
      EXPECT_TRUE(b.reversed);
      EXPECT_EQ(b.status(), Status::HoldsStrictly) << n << " " << r;
      EXPECT_EQ(run(Family::MartinsReversed, n, r).status(), Status::HoldsStrictly) << n << " " << r;
    }
    EXPECT_EQ(run(Family::MincSathre, n).status(), Status::HoldsStrictly);
    EXPECT_EQ(run(Family::MincSathreRefined, n).status(), Status::HoldsStrictly);
  }
}

TEST(Families, RefinedLowerBoundExceedsAlzerBound) {
  for (long n = 1; n <= 30; ++n) {
    for (const char* r : {"2", "7", "1/2", "100"}) {
      const Numeric refined = detail::refined_alzer_lower(n, num(r), 128);
      EXPECT_EQ(status_of(refined - Numeric(mpq_class(n, n + 1))), Status::HoldsStrictly);
    }
  }
}

TEST(Families, RangeErrorsNameTheRange) {
  EXPECT_THROW(run(Family::Bennett, 3, "1"), DomainError);
  EXPECT_THROW(run(Family::Alzer, 3, "-1"), DomainError);
  EXPECT_THROW(run(Family::RefinedAlzer, 3, "-2"), DomainError);
  EXPECT_THROW(run(Family::MartinsReversed, 3, "2"), DomainError);
  EXPECT_THROW(run(Family::Alzer, 3), DomainError);
  EXPECT_THROW(run(Family::Alzer, 0, "2"), DomainError);
  EXPECT_THROW(parse_family("bernoulli"), UnknownName);
  try {
    run(Family::Bennett, 3, "1");
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("r != 1"), std::string::npos);
  }
}

TEST(Families, NamesRoundTrip) {
  for (Family f : {Family::Alzer, Family::Bennett, Family::RefinedAlzer, Family::MincSathre,
                   Family::MincSathreRefined, Family::Martins, Family::MartinsReversed}) {
    EXPECT_EQ(parse_family(to_string(f)), f);
  }
}

TEST(CrossDerivation, MeansRouteAgreesWithDirectVerdicts) {
  for (long n = 1; n <= 30; ++n) {
    for (const char* r : {"2", "3", "7", "1/2"}) {
      for (Family f : {Family::Bennett, Family::RefinedAlzer}) {
        const auto direct = run(f, n, r);
        const auto via = rederive_via_means(f, PowerSumQuery{n, num(r)});
        ASSERT_EQ(direct.checks.size(), via.checks.size());
        for (std::size_t i = 0; i < direct.checks.size(); ++i) {
          EXPECT_EQ(direct.checks[i].status, via.checks[i].status) << to_string(f) << " n=" << n << " r=" << r;
        }
        EXPECT_TRUE(near(via.ratio - direct.ratio, "0", 1e-30));
      }
    }
    for (const char* r : {"-1", "-2"}) {
      const auto via = rederive_via_means(Family::Bennett, PowerSumQuery{n, num(r)});
      EXPECT_EQ(via.checks[0].status, run(Family::Bennett, n, r).checks[0].status);
    }
  }
  EXPECT_THROW(rederive_via_means(Family::Alzer, PowerSumQuery{1, num("2")}), DomainError);
}

TEST(PowerSumBounds, Examples) {
  const auto r = power_sum_bounds(3, num("2"));
  EXPECT_TRUE(exactly(*r.lower, "12"));
  EXPECT_TRUE(exactly(r.upper, "16"));
  EXPECT_TRUE(strict(*r.lower_verdict));
  EXPECT_TRUE(strict(r.upper_verdict));

  const auto s = power_sum_bounds(3, num("1/2"));
  EXPECT_TRUE(s.reversed);
  EXPECT_TRUE(exactly(*s.lower, "4"));
  EXPECT_TRUE(near(s.upper, "4.618802153517006116073190244015659645181", 1e-30));
  EXPECT_TRUE(strict(*s.lower_verdict));
  EXPECT_TRUE(strict(s.upper_verdict));

  const auto t = power_sum_bounds(1, num("2"));
  EXPECT_TRUE(exactly(*t.lower, "2/3"));
  EXPECT_TRUE(exactly(t.upper, "4/3"));

  const auto u = power_sum_bounds(5, num("-1/2"));
  EXPECT_FALSE(u.lower);
  EXPECT_TRUE(strict(u.upper_verdict));

  for (const char* bad : {"1", "0", "-1", "-2"}) EXPECT_THROW(power_sum_bounds(3, num(bad)), DomainError);
}

TEST(FactorialLower, Examples) {
  const auto a = factorial_lower(1);
  EXPECT_TRUE(exactly(a.root, "1"));
  EXPECT_TRUE(near(a.bound, "0.7357588823428846431910475403229217348916", 1e-30));
  EXPECT_TRUE(strict(a.verdict));
  EXPECT_TRUE(strict(factorial_lower(2).verdict));
  const auto c = factorial_lower(10);
  EXPECT_TRUE(near(c.root, "4.528728688116764762203309337195508793499", 1e-30));
  EXPECT_TRUE(near(c.bound, "4.046673852885865537550761471776069541904", 1e-30));
  EXPECT_TRUE(strict(c.verdict));
}
