#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "tradenet/simulation.hpp"

namespace tradenet::nullmodels {

enum class NullModelKind { random, price_only, debts_only, debts_distance, price_distance, random_distance };

inline constexpr std::array<NullModelKind, 6> kAllKinds = {
    NullModelKind::random,         NullModelKind::price_only,     NullModelKind::debts_only,
    NullModelKind::debts_distance, NullModelKind::price_distance, NullModelKind::random_distance};

const char* to_string(NullModelKind kind);
NullModelKind parse_kind(const std::string& text);

bool distance_restricted(NullModelKind kind);

/// Allowed flags for the distance-restricted kinds, in the model's link order:
/// every link no longer than the 25% length quantile over all links, plus each
/// seller's shortest link when none of its links qualifies.
std::vector<std::uint8_t> shortest_quarter(const sim::PreparedModel& model);

/// One-shot baseline selection of n_buyer links per seller. Exact ties are
/// broken with the same seeded priorities the full model uses. A seller whose
/// allowed set is smaller than its n_buyer picks every allowed link.
sim::RunReport run_null(const sim::PreparedModel& model, NullModelKind kind, std::uint64_t seed);
sim::RunReport run_null(const Dataset& dataset, NullModelKind kind, std::uint64_t seed,
                        const sim::ModelOptions& options = {});

}  // namespace tradenet::nullmodels
