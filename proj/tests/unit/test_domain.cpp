#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tradenet/dataio.hpp"

using namespace tradenet;
using namespace tradenet::testing;

namespace {

bool mentions(const ValidationReport& r, const std::string& text) {
  for (const auto& v : r) {
    if (to_string(v).find(text) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST(Domain, NegativeDebtReportsSellerAndField) {
  auto s = seller(7);
  s.debt_by_buyer[AgentId{100}] = -5.0;
  const auto ds = dataset({s, seller(8, 1, 1)}, {buyer(100, 9000, 2, 2)}, {{7, 100}, {8, 100}});
  const auto report = validate(ds);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].subject, "seller 7");
  EXPECT_NE(report[0].field.find("debt"), std::string::npos);
}

TEST(Domain, DanglingLink) {
  auto ds = dataset({seller(1), seller(2, 1, 0)}, {buyer(10, 9000, 3, 3)}, {{1, 10}, {2, 10}});
  ds.empirical_links.insert({AgentId{1}, AgentId{99}});
  EXPECT_TRUE(mentions(validate(ds), "dangling link"));
}

TEST(Domain, SyntheticDatasetIsValid) {
  auto [ds, truth] = dataio::gen_synthetic(small_config(30, 5, 4));
  EXPECT_TRUE(validate(ds).empty());
}

TEST(Domain, FieldRanges) {
  auto s = seller(1);
  s.education = 7;
  s.group_count = 5;
  s.transport = -1;
  s.age = 0;
  const auto ds = dataset({s, seller(2, 1, 0)}, {buyer(10, 9000, 3, 3)}, {{1, 10}, {2, 10}});
  const auto r = validate(ds);
  EXPECT_TRUE(mentions(r, "education"));
  EXPECT_TRUE(mentions(r, "group_count"));
  EXPECT_TRUE(mentions(r, "transport"));
  EXPECT_TRUE(mentions(r, "age"));
}

TEST(Domain, DuplicateIdsAndOverlap) {
  auto ds = dataset({seller(1), seller(2, 1, 0)}, {buyer(3, 9000, 3, 3)});
  ds.sellers[1].id = AgentId{1};
  ds.buyers[0].id = AgentId{1};
  const auto r = validate(ds);
  EXPECT_TRUE(mentions(r, "duplicate seller id"));
  EXPECT_TRUE(mentions(r, "also used by a seller"));
}

TEST(Domain, AsymmetricMatrix) {
  auto ds = dataset({seller(1), seller(2, 1, 0)}, {buyer(10, 9000, 3, 3)}, {{1, 10}, {2, 10}});
  ds.distance.set_index(0, 2, 5.0);
  EXPECT_TRUE(mentions(validate(ds), "symmetr"));
}

TEST(Domain, ParamsValidation) {
  EXPECT_TRUE(validate(reference_params()).empty());
  GlobalParams zero;
  EXPECT_FALSE(validate(zero).empty());
  auto p = reference_params();
  p.w_debts = 101;
  EXPECT_FALSE(validate(p).empty());
  p = reference_params();
  p.w_s_education = p.w_s_ethnicity = p.w_s_activegroup = p.w_s_prestigious_job = p.w_s_proximity = 0;
  EXPECT_FALSE(validate(p).empty());
  p.w_social = 0;
  EXPECT_TRUE(validate(p).empty());
}

TEST(Domain, ParamsArrayRoundTrip) {
  const auto p = reference_params();
  EXPECT_EQ(GlobalParams::from_array(p.to_array()), p);
  EXPECT_EQ(p.to_array()[0], p.n_social);
  EXPECT_EQ(p.to_array()[3], p.w_debts);
  EXPECT_STREQ(GlobalParams::names()[9], "w_s_proximity");
}

TEST(Domain, SocialCapacityRoundsHalfUp) {
  GlobalParams p;
  p.n_social = 1.61;
  EXPECT_EQ(p.social_capacity(), 2);
  p.n_social = 2.5;
  EXPECT_EQ(p.social_capacity(), 3);
  p.n_social = 2.49;
  EXPECT_EQ(p.social_capacity(), 2);
  p.n_social = 0.0;
  EXPECT_EQ(p.social_capacity(), 0);
}

TEST(Domain, ReferenceParams) {
  const auto p = reference_params();
  EXPECT_DOUBLE_EQ(p.n_social, 1.61);
  EXPECT_DOUBLE_EQ(p.w_price, 3.30);
  EXPECT_DOUBLE_EQ(p.w_dist, 12.12);
  EXPECT_DOUBLE_EQ(p.w_debts, 64.07);
  EXPECT_DOUBLE_EQ(p.w_social, 20.52);
  EXPECT_DOUBLE_EQ(p.w_s_education, 5.96);
  EXPECT_DOUBLE_EQ(p.w_s_ethnicity, 9.12);
  EXPECT_DOUBLE_EQ(p.w_s_activegroup, 9.91);
  EXPECT_DOUBLE_EQ(p.w_s_prestigious_job, 0.01);
  EXPECT_DOUBLE_EQ(p.w_s_proximity, 75.01);
}

TEST(Domain, EuclideanSpotCheck) {
  const auto m = euclidean_distances({seller(1, 0, 0)}, {buyer(2, 9000, 3, 4)});
  EXPECT_DOUBLE_EQ(m.at(AgentId{1}, AgentId{2}), 5.0);
  EXPECT_DOUBLE_EQ(m.at(AgentId{2}, AgentId{1}), 5.0);
  EXPECT_DOUBLE_EQ(m.at(AgentId{1}, AgentId{1}), 0.0);
  BuyerAgent nowhere;
  nowhere.id = AgentId{3};
  EXPECT_THROW(euclidean_distances({seller(1)}, {nowhere}), DomainError);
}

TEST(Domain, MatrixSubset) {
  const auto m = euclidean_distances({seller(1, 0, 0), seller(2, 1, 0)}, {buyer(3, 9000, 0, 2)});
  const auto s = m.subset({AgentId{3}, AgentId{1}});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_DOUBLE_EQ(s.at(AgentId{1}, AgentId{3}), 2.0);
  EXPECT_FALSE(s.contains(AgentId{2}));
}
