#include <gtest/gtest.h>

#include "cbounds/normed.hpp"
#include "test_support.hpp"

using namespace cbounds;
using cbounds::testing::equality;
using cbounds::testing::exactly;
using cbounds::testing::near;
using cbounds::testing::num;
using cbounds::testing::strict;

namespace {
VectorPair pair_of(std::vector<const char*> x, std::vector<const char*> y, const char* q = "2", const char* p = "2") {
  VectorPair vp;
  for (const char* c : x) vp.x.push_back(num(c));
  for (const char* c : y) vp.y.push_back(num(c));
  vp.norm_p = num(q);
  vp.power_p = num(p);
  return vp;
}
}  // namespace

TEST(Phi, Values) {
  EXPECT_TRUE(exactly(phi_eval(pair_of({"1", "0"}, {"0", "1"}), num("1/2")), "1/2"));
  EXPECT_TRUE(exactly(phi_eval(pair_of({"1", "0"}, {"1", "0"}), num("0.37")), "1"));
  EXPECT_TRUE(exactly(phi_eval(pair_of({"1", "0"}, {"0", "1"}, "1", "1"), num("0.3")), "1"));
  EXPECT_TRUE(near(phi_eval(pair_of({"3", "4"}, {"3", "4"}, "2", "1"), num("1/2")), "5", 1e-30));
}

TEST(Phi, RejectsBadInput) {
  EXPECT_THROW(pair_of({"1"}, {"1", "2"}).validate(), DomainError);
  EXPECT_THROW(pair_of({"0", "0"}, {"0", "0"}).validate(), DomainError);
  EXPECT_THROW(pair_of({"1", "0"}, {"0", "1"}, "1/2").validate(), DomainError);
  EXPECT_THROW(pair_of({"1", "0"}, {"0", "1"}, "2", "1/2").validate(), DomainError);
  EXPECT_THROW(segment_integral_bracket(pair_of({"1", "0"}, {"0", "1"}), 0), DomainError);
}

TEST(Independence, Minors) {
  EXPECT_EQ(linearly_independent(pair_of({"1", "0"}, {"0", "1"})), std::optional<bool>(true));
  EXPECT_EQ(linearly_independent(pair_of({"1", "2", "3"}, {"2", "4", "6"})), std::optional<bool>(false));
  EXPECT_EQ(linearly_independent(pair_of({"1", "2", "3"}, {"2", "4", "7"})), std::optional<bool>(true));
}

TEST(Bracket, EuclideanUnitVectors) {
  const auto r = segment_integral_bracket(pair_of({"1", "0"}, {"0", "1"}), 2);
  ASSERT_TRUE(r.lower && r.oracle);
  EXPECT_TRUE(exactly(*r.lower, "1/2"));
  EXPECT_TRUE(exactly(r.upper, "5/6"));
  EXPECT_TRUE(exactly(*r.oracle, "2/3"));
  EXPECT_TRUE(r.strict_expected);
  for (const auto& v : r.all_verdicts()) EXPECT_TRUE(strict(v)) << v.label;
}

TEST(Bracket, CollinearSameDirectionIsAffine) {
  const auto r = segment_integral_bracket(pair_of({"1", "0"}, {"2", "0"}, "2", "1"), 1);
  EXPECT_FALSE(r.lower);
  EXPECT_EQ(r.independent, std::optional<bool>(false));
  EXPECT_FALSE(r.strict_expected);
  for (const auto& v : r.all_verdicts()) EXPECT_TRUE(equality(v)) << v.label;
}

TEST(Bracket, TaxicabFaceIsFlat) {
  const auto r = segment_integral_bracket(pair_of({"1", "0"}, {"0", "1"}, "1", "1"), 3);
  EXPECT_TRUE(exactly(*r.lower, "1"));
  EXPECT_TRUE(exactly(r.upper, "1"));
  EXPECT_FALSE(r.strict_expected);
  for (const auto& v : r.all_verdicts()) EXPECT_TRUE(equality(v)) << v.label;
}

TEST(Bracket, OriginEndpoint) {
  // x = 0 reduces phi to t^2 ||y||^2.
  const auto r = segment_integral_bracket(pair_of({"0", "0"}, {"1", "0"}), 2);
  EXPECT_TRUE(exactly(*r.lower, "1/4"));
  EXPECT_TRUE(exactly(r.upper, "5/12"));
  EXPECT_TRUE(exactly(*r.oracle, "1/3"));
  EXPECT_EQ(r.independent, std::optional<bool>(false));
  EXPECT_TRUE(strict(*r.lower_vs_oracle));
}

TEST(Bracket, ThreeNormAgainstQuadrature) {
  const VectorPair vp = pair_of({"1", "2"}, {"3", "-1"}, "3", "2");
  const Numeric integral = num("4.908011916027084998601426806622213728821");
  for (long n : {2L, 5L, 20L}) {
    const auto r = segment_integral_bracket(vp, n);
    EXPECT_FALSE(r.oracle);
    EXPECT_TRUE(strict(judge("lower < integral", *r.lower, integral))) << n;
    EXPECT_TRUE(strict(judge("integral < upper", integral, r.upper))) << n;
    for (const auto& v : r.all_verdicts()) EXPECT_TRUE(strict(v)) << v.label;
  }
}

TEST(Bracket, ScalesWithThePower) {
  const VectorPair vp = pair_of({"1", "2", "-1"}, {"0", "3", "1"}, "3", "2");
  const VectorPair scaled = pair_of({"2", "4", "-2"}, {"0", "6", "2"}, "3", "2");
  const auto r = segment_integral_bracket(vp, 6);
  const auto s = segment_integral_bracket(scaled, 6);
  EXPECT_TRUE(near(s.upper - Numeric(4) * r.upper, "0", 1e-30));
  EXPECT_TRUE(near(*s.lower - Numeric(4) * *r.lower, "0", 1e-30));
}

TEST(Bracket, RefinementIsMonotone) {
  const VectorPair vp = pair_of({"1", "-2", "1/2"}, {"2", "1", "-3"}, "2", "1");
  auto previous = segment_integral_bracket(vp, 2);
  for (long n = 3; n <= 30; ++n) {
    const auto r = segment_integral_bracket(vp, n);
    EXPECT_TRUE(strict(judge("lower increases", *previous.lower, *r.lower))) << n;
    EXPECT_TRUE(strict(judge("upper decreases", r.upper, previous.upper))) << n;
    for (const auto& v : r.ratio_verdicts) EXPECT_TRUE(strict(v)) << v.label << " n=" << n;
    previous = r;
  }
}
