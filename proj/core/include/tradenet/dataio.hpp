#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tradenet/domain.hpp"
#include "tradenet/simulation.hpp"

namespace tradenet::dataio {

struct DatasetPaths {
  std::string sellers;
  std::string buyers;
  std::string links;
  std::optional<std::string> distances;

  /// sellers.csv, buyers.csv, links.csv and (if present) distances.csv in `dir`.
  static DatasetPaths in_directory(const std::string& dir);
};

/// Reads and validates a dataset. Distances come from the matrix file when
/// given, otherwise from seller and buyer coordinates. n_buyer_empirical is
/// the number of observed links of each seller. Content errors throw
/// DomainError naming the file and line; unreadable files throw IoError.
Dataset load_dataset(const DatasetPaths& paths);

/// Writes the canonical form: agents and links sorted by id. Debts on pairs
/// that are not observed trading links are kept as rows with observed = 0.
void save_dataset(const Dataset& dataset, const std::string& dir);

std::string sellers_csv(const Dataset& dataset);
std::string buyers_csv(const Dataset& dataset);
std::string links_csv(const Dataset& dataset);
std::string distances_csv(const Dataset& dataset);

/// Drops every buyer with exactly one observed seller, then sellers left with
/// no observed link. Applied once, not to a fixed point.
Dataset reduced_sample(const Dataset& dataset);

enum class DebtPartner { nearest, random };

struct SyntheticConfig {
  std::size_t n_sellers{179};
  std::size_t n_buyers{42};
  std::size_t n_villages{40};
  std::size_t n_subdistricts{12};
  std::size_t n_districts{6};
  std::uint64_t seed{1};

  std::vector<double> ethnicity_freq{0.3966, 0.5251, 0.0279, 0.0168, 0.0335};
  std::vector<double> education_freq{0.0223, 0.1061, 0.3017, 0.1844, 0.0223, 0.3631};
  double prestigious_job_rate{0.06};
  double group_activity_rate{0.3911};
  /// Number of groups (1..4) among sellers active in any group.
  std::vector<double> group_count_freq{0.6, 0.25, 0.1, 0.05};
  double employees_mean{5.7};
  double employees_sd{6.8};
  double transport_mean{2060.0};
  double transport_sd{2731.0};
  double age_mean{45.0};
  double age_sd{10.0};
  double age_min{18.0};
  double log_house_value_mean{18.4};
  double log_house_value_sd{0.8};
  double log_income_mean{17.5};
  double log_income_sd{1.0};
  double log_sales_mean{19.0};
  double log_sales_sd{2.5};

  /// Probability that a seller carries no debt.
  double debt_zero_inflation{0.6};
  double log_debt_mean{16.0};
  double log_debt_sd{1.0};
  DebtPartner debt_partner{DebtPartner::random};

  double price_mean{9000.0};
  double price_sd{300.0};
  /// Added in proportion to a buyer's mean distance to the sellers.
  double price_remoteness_premium{1000.0};

  double lat_min{-2.4};
  double lat_max{-0.9};
  double lon_min{101.8};
  double lon_max{104.5};
  double subdistrict_spread{0.15};
  double village_spread{0.05};
  double household_spread{0.01};

  GlobalParams planted_params{debt_dominant_params()};
  sim::ModelOptions planted_options{};

  /// w_debts = 80 with every other weight at most 10.
  static GlobalParams debt_dominant_params();
};

struct PlantedTruth {
  GlobalParams params;
  std::uint64_t seed{0};
  std::size_t iterations{0};
  bool converged{false};
  std::set<LinkKey> links;
};

/// Throws DomainError for an infeasible or inconsistent configuration.
void validate_config(const SyntheticConfig& config);

/// Agents, prices and debts drawn from the configured marginals; no
/// distances and no observed links.
Dataset draw_population(const SyntheticConfig& config);

/// Draws a dataset from the configured marginals and sets its observed
/// network to the model's own output under the planted parameters and seed.
std::pair<Dataset, PlantedTruth> gen_synthetic(const SyntheticConfig& config);

const char* to_string(DebtPartner p);
DebtPartner parse_debt_partner(const std::string& text);

}  // namespace tradenet::dataio
