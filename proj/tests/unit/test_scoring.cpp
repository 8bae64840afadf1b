#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "tradenet/scoring.hpp"

using namespace tradenet;
using namespace tradenet::scoring;
using namespace tradenet::testing;

namespace {

std::vector<SellerAgent> with_transport(std::vector<double> t) {
  std::vector<SellerAgent> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto s = seller(static_cast<std::int64_t>(i + 1));
    s.transport = t[i];
    out.push_back(s);
  }
  return out;
}

WeightPreferences ones() { return {1.0, 1.0, 1.0, 1.0}; }

}  // namespace

TEST(Preferences, TwoTransports) {
  const auto s = compute_preferences(with_transport({1000, 2000}));
  EXPECT_DOUBLE_EQ(s[0].pref.dist, 2.0);
  EXPECT_DOUBLE_EQ(s[1].pref.dist, 1.0);
}

TEST(Preferences, ThreeTransports) {
  const auto s = compute_preferences(with_transport({1000, 2000, 4000}));
  EXPECT_DOUBLE_EQ(s[0].pref.dist, 2.0);
  EXPECT_NEAR(s[1].pref.dist, 4.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(s[2].pref.dist, 1.0);
}

TEST(Preferences, SameAgeGivesOnes) {
  auto s = compute_preferences(with_transport({1000, 2000, 3000}));
  for (const auto& x : s) {
    EXPECT_EQ(x.pref.debts, 1.0);
    EXPECT_EQ(x.pref.social, 1.0);
    EXPECT_EQ(x.pref.price, 1.0);
  }
}

TEST(Preferences, ZeroTransportUsesSmallestPositive) {
  const auto s = compute_preferences(with_transport({0, 500, 1000}));
  EXPECT_DOUBLE_EQ(s[0].pref.dist, 2.0);
  EXPECT_DOUBLE_EQ(s[1].pref.dist, 2.0);
  EXPECT_DOUBLE_EQ(s[2].pref.dist, 1.0);
  const auto z = compute_preferences(with_transport({0, 0}));
  EXPECT_EQ(z[0].pref.dist, 1.0);
}

TEST(Preferences, YoungerHasHigherDebtPreference) {
  auto v = with_transport({1000, 1000});
  v[0].age = 20;
  v[1].age = 60;
  const auto s = compute_preferences(v);
  EXPECT_DOUBLE_EQ(s[0].pref.debts, 2.0);
  EXPECT_DOUBLE_EQ(s[1].pref.debts, 1.0);
  EXPECT_DOUBLE_EQ(s[0].pref.social, 2.0);
}

TEST(Preferences, EmptyPopulation) {
  EXPECT_THROW(compute_preferences({}), DomainError);
}

TEST(Normalize, Linear) {
  const std::vector<double> v{10, 20, 30};
  EXPECT_EQ(normalize_subscores(v, false), (std::vector<double>{0, 0.5, 1}));
  EXPECT_EQ(normalize_subscores(v, true), (std::vector<double>{1, 0.5, 0}));
}

TEST(Normalize, Constant) {
  const std::vector<double> v{7, 7, 7};
  EXPECT_EQ(normalize_subscores(v, false), (std::vector<double>{0.5, 0.5, 0.5}));
  EXPECT_EQ(normalize_subscores(v, true), (std::vector<double>{0.5, 0.5, 0.5}));
}

TEST(Normalize, Errors) {
  EXPECT_THROW(normalize_subscores(std::vector<double>{}, false), DomainError);
  EXPECT_THROW(normalize_subscores(std::vector<double>{1.0, std::nan("")}, false), DomainError);
}

TEST(Preliminary, ConstantSubscores) {
  EXPECT_DOUBLE_EQ(preliminary_score(0.5, 0.5, 0.5, reference_params(), {1.3, 1.7, 1.1, 2.0}), 0.5);
}

TEST(Preliminary, OneThird) {
  EXPECT_DOUBLE_EQ(preliminary_score(1, 0, 0, weights(1, 1, 1, 0), ones()), 1.0 / 3.0);
}

TEST(Preliminary, SingleCriterion) {
  EXPECT_EQ(preliminary_score(0.37, 0.9, 0.1, weights(5, 0, 0, 0), {1.4, 1.2, 1.9, 1}), 0.37);
}

TEST(Preliminary, ZeroWeights) {
  EXPECT_THROW(preliminary_score(1, 1, 1, weights(0, 0, 0, 5), ones()), DomainError);
}

TEST(SocialCriteria, Proximity) {
  auto a = seller(1);
  auto b = seller(2);
  b.village_id = 2;
  b.subdistrict_id = 2;
  EXPECT_DOUBLE_EQ(social_criteria(a, b).proximity, 0.33);
  b.subdistrict_id = 1;
  EXPECT_DOUBLE_EQ(social_criteria(a, b).proximity, 0.66);
  b.village_id = 1;
  EXPECT_DOUBLE_EQ(social_criteria(a, b).proximity, 1.0);
  b.district_id = 9;
  EXPECT_DOUBLE_EQ(social_criteria(a, b).proximity, 0.0);
}

TEST(SocialCriteria, Tables) {
  auto a = seller(1);
  auto b = seller(2);
  const double edu[] = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  for (int e = 1; e <= 6; ++e) {
    a.education = e;
    EXPECT_DOUBLE_EQ(social_criteria(a, b).education, edu[e - 1]);
  }
  const double groups[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int g = 0; g <= 4; ++g) {
    a.group_count = g;
    EXPECT_DOUBLE_EQ(social_criteria(a, b).activegroup, groups[g]);
  }
  b.ethnicity = 2;
  EXPECT_EQ(social_criteria(a, b).ethnicity, 0.0);
  b.ethnicity = a.ethnicity;
  EXPECT_EQ(social_criteria(a, b).ethnicity, 1.0);
  a.prestigious_job = true;
  EXPECT_EQ(social_criteria(a, b).prestigious_job, 1.0);
  EXPECT_EQ(social_criteria(b, a).prestigious_job, 0.0);
}

TEST(SocialLinkScore, Values) {
  EXPECT_DOUBLE_EQ(social_link_score({1, 1, 1, 1, 1}, reference_params()), 1.0);
  EXPECT_EQ(social_link_score({0, 0, 0, 0, 0}, reference_params()), 0.0);
  EXPECT_NEAR(social_link_score({1, 0, 0, 0, 0}, reference_params()), 75.01 / 100.01, 1e-12);
  GlobalParams none = weights(1, 1, 1, 1);
  none.w_s_education = none.w_s_ethnicity = none.w_s_activegroup = none.w_s_prestigious_job =
      none.w_s_proximity = 0;
  EXPECT_THROW(social_link_score({1, 1, 1, 1, 1}, none), DomainError);
}

TEST(FinalScore, Values) {
  EXPECT_DOUBLE_EQ(final_score(0, 0, 0, 1, weights(1, 1, 1, 1), ones()), 0.25);
  EXPECT_DOUBLE_EQ(final_score(0.5, 0.5, 0.5, 0.5, reference_params(), {1.9, 1.1, 1.5, 1.2}), 0.5);
}

TEST(FinalScore, RandomizedProperties) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.0, 50.0);
  std::uniform_real_distribution<double> pref(1.0, 2.0);
  for (int trial = 0; trial < 10000; ++trial) {
    GlobalParams g = weights(weight(rng), weight(rng), weight(rng) + 0.01, weight(rng));
    const WeightPreferences p{pref(rng), pref(rng), pref(rng), pref(rng)};
    const double s[4] = {unit(rng), unit(rng), unit(rng), unit(rng)};
    const double f = final_score(s[0], s[1], s[2], s[3], g, p);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);

    GlobalParams g2 = g;
    g2.w_price *= 2;
    g2.w_dist *= 2;
    g2.w_debts *= 2;
    g2.w_social *= 2;
    ASSERT_EQ(final_score(s[0], s[1], s[2], s[3], g2, p), f);

    GlobalParams g0 = g;
    g0.w_social = 0;
    ASSERT_EQ(final_score(s[0], s[1], s[2], s[3], g0, p), preliminary_score(s[0], s[1], s[2], g0, p));
  }
}
