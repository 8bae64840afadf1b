#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tradenet {

/// Raised for invalid inputs, parameters, or model states.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a file cannot be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AgentId {
  std::int64_t value{0};

  friend auto operator<=>(const AgentId&, const AgentId&) = default;
};

std::string to_string(AgentId id);

struct LinkKey {
  AgentId seller;
  AgentId buyer;

  friend auto operator<=>(const LinkKey&, const LinkKey&) = default;
};

/// Per-seller multipliers in [1,2] applied on top of the global weights.
struct WeightPreferences {
  double price{1.0};
  double dist{1.0};
  double debts{1.0};
  double social{1.0};
};

struct SellerAgent {
  AgentId id;
  std::int64_t village_id{0};
  std::int64_t subdistrict_id{0};
  std::int64_t district_id{0};
  double gps_s{0.0};
  double gps_e{0.0};
  int education{1};
  int ethnicity{0};
  double transport{0.0};
  int employees{0};
  bool prestigious_job{false};
  bool active_group{false};
  int group_count{0};
  double age{1.0};
  double house_value{1.0};
  // Carried through I/O, not used by any score.
  double hh_size{0.0};
  double hhs_vlg{0.0};
  double income{0.0};
  std::map<AgentId, double> debt_by_buyer;
  int n_buyer_empirical{1};
  double total_sales{1.0};
  WeightPreferences pref;

  double debt_with(AgentId buyer) const {
    auto it = debt_by_buyer.find(buyer);
    return it == debt_by_buyer.end() ? 0.0 : it->second;
  }
};

struct BuyerAgent {
  AgentId id;
  double price{1.0};
  // Optional; only needed when distances are derived from coordinates.
  bool has_location{false};
  double gps_s{0.0};
  double gps_e{0.0};
};

/// Trading link state. Sub-scores and scores live in [0,1].
struct TradingLink {
  AgentId seller_id;
  AgentId buyer_id;
  double length{0.0};
  double price{0.0};
  double debts{0.0};
  double score_price{0.0};
  double score_dist{0.0};
  double score_debts{0.0};
  double score_social{0.0};
  double score{0.0};
  double score_next{0.0};
  bool status_model{false};
  bool status_data{false};
  double tons{0.0};
};

/// Directed influence of `from_seller_id` on `to_seller_id`.
struct SocialLink {
  AgentId from_seller_id;
  AgentId to_seller_id;
  double score{0.0};
  bool active{false};
};

/// The calibratable parameters. Field order is the genome order.
struct GlobalParams {
  double n_social{0.0};
  double w_price{0.0};
  double w_dist{0.0};
  double w_debts{0.0};
  double w_social{0.0};
  double w_s_education{0.0};
  double w_s_ethnicity{0.0};
  double w_s_activegroup{0.0};
  double w_s_prestigious_job{0.0};
  double w_s_proximity{0.0};

  static constexpr std::size_t kSize = 10;
  static const std::array<const char*, kSize>& names();

  std::array<double, kSize> to_array() const;
  static GlobalParams from_array(const std::array<double, kSize>& genome);

  /// n_social rounded half-up and clamped at zero.
  int social_capacity() const;

  friend bool operator==(const GlobalParams&, const GlobalParams&) = default;
};

/// Fitted values of the reduced-sample calibration, used as a default
/// calibration-magnitude parameter set.
GlobalParams reference_params();

/// Dense symmetric distance matrix keyed by agent id.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::vector<AgentId> ids);

  std::size_t size() const { return ids_.size(); }
  const std::vector<AgentId>& ids() const { return ids_; }
  bool contains(AgentId id) const { return index_.count(id.value) != 0; }
  std::size_t index_of(AgentId id) const;

  double at(AgentId a, AgentId b) const;
  double at_index(std::size_t i, std::size_t j) const { return data_[i * ids_.size() + j]; }
  void set(AgentId a, AgentId b, double d);
  void set_index(std::size_t i, std::size_t j, double d) { data_[i * ids_.size() + j] = d; }

  /// Copy restricted to `keep`, in the order given.
  DistanceMatrix subset(const std::vector<AgentId>& keep) const;

  friend bool operator==(const DistanceMatrix& a, const DistanceMatrix& b) {
    return a.ids_ == b.ids_ && a.data_ == b.data_;
  }

 private:
  std::vector<AgentId> ids_;
  std::unordered_map<std::int64_t, std::size_t> index_;
  std::vector<double> data_;
};

struct Dataset {
  std::vector<SellerAgent> sellers;
  std::vector<BuyerAgent> buyers;
  DistanceMatrix distance;
  std::set<LinkKey> empirical_links;
  std::map<LinkKey, double> tons;

  const SellerAgent* find_seller(AgentId id) const;
  const BuyerAgent* find_buyer(AgentId id) const;
};

/// Planar Euclidean distances over (gps_s, gps_e) for every seller and buyer,
/// sellers first. Throws DomainError if a buyer has no location.
DistanceMatrix euclidean_distances(const std::vector<SellerAgent>& sellers,
                                   const std::vector<BuyerAgent>& buyers);

struct Violation {
  std::string subject;
  std::string field;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

std::string to_string(const Violation& v);

/// Collects every invariant violation; empty iff the dataset is well-formed.
ValidationReport validate(const Dataset& dataset);

ValidationReport validate(const GlobalParams& params);

/// Throws DomainError listing the violations if the report is not empty.
void require_valid(const ValidationReport& report, const std::string& what);

}  // namespace tradenet

template <>
struct std::hash<tradenet::AgentId> {
  std::size_t operator()(const tradenet::AgentId& id) const noexcept {
    return std::hash<std::int64_t>{}(id.value);
  }
};
