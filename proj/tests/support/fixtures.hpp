#pragma once

#include <cmath>
#include <vector>

#include "tradenet/dataio.hpp"
#include "tradenet/domain.hpp"

namespace tradenet::testing {

inline SellerAgent seller(std::int64_t id, double gps_s = 0.0, double gps_e = 0.0) {
  SellerAgent s;
  s.id = AgentId{id};
  s.village_id = 1;
  s.subdistrict_id = 1;
  s.district_id = 1;
  s.gps_s = gps_s;
  s.gps_e = gps_e;
  s.education = 3;
  s.ethnicity = 1;
  s.transport = 1000.0;
  s.age = 40.0;
  s.house_value = 1e8;
  s.total_sales = 1e6;
  s.n_buyer_empirical = 1;
  return s;
}

inline BuyerAgent buyer(std::int64_t id, double price, double gps_s = 0.0, double gps_e = 0.0) {
  BuyerAgent b;
  b.id = AgentId{id};
  b.price = price;
  b.has_location = true;
  b.gps_s = gps_s;
  b.gps_e = gps_e;
  return b;
}

/// Distances from coordinates; every seller's first buyer (by position in
/// `links_to`) becomes its observed link.
inline Dataset dataset(std::vector<SellerAgent> sellers, std::vector<BuyerAgent> buyers,
                       const std::vector<std::pair<std::int64_t, std::int64_t>>& links = {}) {
  Dataset ds;
  ds.sellers = std::move(sellers);
  ds.buyers = std::move(buyers);
  ds.distance = euclidean_distances(ds.sellers, ds.buyers);
  for (auto [s, b] : links) {
    ds.empirical_links.insert({AgentId{s}, AgentId{b}});
    ds.tons[{AgentId{s}, AgentId{b}}] = 1.0;
  }
  return ds;
}

inline GlobalParams weights(double p, double di, double de, double soc, double n_social = 0.0) {
  GlobalParams g;
  g.n_social = n_social;
  g.w_price = p;
  g.w_dist = di;
  g.w_debts = de;
  g.w_social = soc;
  g.w_s_education = 1.0;
  g.w_s_ethnicity = 1.0;
  g.w_s_activegroup = 1.0;
  g.w_s_prestigious_job = 1.0;
  g.w_s_proximity = 1.0;
  return g;
}

/// Planted data used by the recovery, null-model and convergence checks.
inline dataio::SyntheticConfig planted_config() {
  dataio::SyntheticConfig c;
  c.n_buyers = 8;
  c.seed = 3;
  return c;
}

inline dataio::SyntheticConfig small_config(std::size_t sellers, std::size_t buyers, std::uint64_t seed) {
  dataio::SyntheticConfig c;
  c.n_sellers = sellers;
  c.n_buyers = buyers;
  c.n_villages = std::min<std::size_t>(sellers, 6);
  c.n_subdistricts = std::min<std::size_t>(c.n_villages, 3);
  c.n_districts = std::min<std::size_t>(c.n_subdistricts, 2);
  c.seed = seed;
  return c;
}

}  // namespace tradenet::testing
