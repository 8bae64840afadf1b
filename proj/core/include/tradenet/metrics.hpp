#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "tradenet/domain.hpp"

namespace tradenet::metrics {

/// Network metrics of one simulated (or baseline) trading network.
struct ObservationRecord {
  std::size_t active_tradings_n{0};
  std::size_t correct_tradings_n{0};
  double correct_tradings_p{0.0};
  /// Components counting degree-0 agents as singletons.
  std::size_t components_n{0};
  double components_size_mu{0.0};
  /// Components of the active network alone.
  std::size_t components_n_active_only{0};
  double mean_link_length{0.0};
  double mean_price{0.0};

  friend bool operator==(const ObservationRecord&, const ObservationRecord&) = default;
};

struct CorrectLinks {
  std::size_t n{0};
  double p{0.0};
};

CorrectLinks correct_links(const std::set<LinkKey>& active, const std::set<LinkKey>& empirical);

struct ComponentStats {
  std::size_t count{0};
  double mean_size{0.0};
};

/// Connected components of the undirected graph the active links induce over
/// `agents`. Link endpoints missing from `agents` are ignored.
ComponentStats components(const std::vector<AgentId>& agents, const std::set<LinkKey>& active,
                          bool include_isolated);

struct ScenarioIndicators {
  double mean_price{0.0};
  double mean_link_length{0.0};
  std::size_t components_n{0};
  double components_size_mu{0.0};
};

/// Full observation for an active network over `dataset`.
ObservationRecord observe(const Dataset& dataset, const std::set<LinkKey>& active);

/// Indicator set for policy runs. Throws DomainError on an empty network.
ScenarioIndicators scenario_indicators(const Dataset& dataset, const std::set<LinkKey>& active);

/// Fixed CSV header: run_id, seed, iterations, converged, then the fields.
std::string observation_csv_header();
std::string observation_csv_row(const std::string& run_id, std::uint64_t seed, std::size_t iterations,
                                bool converged, const ObservationRecord& obs);

}  // namespace tradenet::metrics
