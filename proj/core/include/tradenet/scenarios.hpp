#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tradenet/metrics.hpp"
#include "tradenet/simulation.hpp"

namespace tradenet::scenarios {

enum class ScenarioId { baseline, A1, A2, B1, B2, C };

inline constexpr std::array<ScenarioId, 6> kAllScenarios = {ScenarioId::baseline, ScenarioId::A1, ScenarioId::A2,
                                                            ScenarioId::B1,       ScenarioId::B2, ScenarioId::C};

const char* to_string(ScenarioId id);
ScenarioId parse_scenario(const std::string& text);

struct ScenarioSpec {
  ScenarioId id{ScenarioId::baseline};
  std::size_t replications{20};
  std::uint64_t base_seed{0};
};

/// Policy transformations:
///   A1 halves every debt, A2 zeroes every debt;
///   B1 lifts education levels 1 and 2 to 3;
///   B2 lifts every seller to the highest education in its village;
///   C sets transport of sellers strictly below the median to the mean.
Dataset apply_scenario(const Dataset& dataset, ScenarioId id);

struct ReplicationResult {
  ScenarioId scenario{ScenarioId::baseline};
  std::size_t replication{0};
  std::uint64_t seed{0};
  /// Empty when the replication failed; `error` then holds the reason.
  std::optional<metrics::ScenarioIndicators> indicators;
  std::string error;
};

struct IndicatorSummary {
  ScenarioId scenario{ScenarioId::baseline};
  std::string indicator;
  double mean{0.0};
  double sd{0.0};
  std::size_t n{0};
};

struct ScenarioResult {
  std::vector<ReplicationResult> replications;
  std::vector<IndicatorSummary> summary;
};

inline constexpr std::array<const char*, 4> kIndicatorNames = {"mean_price", "mean_link_length", "components_n",
                                                               "components_size_mu"};

/// Runs `spec.replications` seeded simulations (seed base_seed + r) of the
/// transformed dataset. Failed replications are recorded and skipped in the
/// summary. `sd` is the sample standard deviation (0 for fewer than two runs).
ScenarioResult run_scenario(const Dataset& dataset, const GlobalParams& params, const ScenarioSpec& spec,
                            const sim::ModelOptions& options = {});

std::string replications_csv_header();
std::string replication_csv_row(const ReplicationResult& r);
std::string summary_csv_header();
std::string summary_csv_row(const IndicatorSummary& s);

}  // namespace tradenet::scenarios
