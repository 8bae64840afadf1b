#include "tradenet/nullmodels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tradenet::nullmodels {

const char* to_string(NullModelKind kind) {
  switch (kind) {
    case NullModelKind::random: return "random";
    case NullModelKind::price_only: return "price_only";
    case NullModelKind::debts_only: return "debts_only";
    case NullModelKind::debts_distance: return "debts_distance";
    case NullModelKind::price_distance: return "price_distance";
    case NullModelKind::random_distance: return "random_distance";
  }
  return "?";
}

NullModelKind parse_kind(const std::string& text) {
  for (auto k : kAllKinds) {
    if (text == to_string(k)) return k;
  }
  throw DomainError("unknown null model '" + text + "'");
}

bool distance_restricted(NullModelKind kind) {
  return kind == NullModelKind::debts_distance || kind == NullModelKind::price_distance ||
         kind == NullModelKind::random_distance;
}

std::vector<std::uint8_t> shortest_quarter(const sim::PreparedModel& model) {
  const auto& links = model.links();
  std::vector<double> lengths;
  lengths.reserve(links.size());
  for (const auto& l : links) lengths.push_back(l.length);
  std::sort(lengths.begin(), lengths.end());
  const auto cutoff_rank = static_cast<std::size_t>(std::ceil(0.25 * static_cast<double>(lengths.size())));
  const double cutoff = lengths[std::max<std::size_t>(cutoff_rank, 1) - 1];

  std::vector<std::uint8_t> allowed(links.size(), 0);
  const std::size_t nb = model.n_buyers();
  for (std::size_t i = 0; i < model.n_sellers(); ++i) {
    bool any = false;
    std::size_t shortest = i * nb;
    for (std::size_t x = 0; x < nb; ++x) {
      const std::size_t k = i * nb + x;
      if (links[k].length <= cutoff) {
        allowed[k] = 1;
        any = true;
      }
      if (links[k].length < links[shortest].length) shortest = k;
    }
    if (!any) allowed[shortest] = 1;
  }
  return allowed;
}

sim::RunReport run_null(const sim::PreparedModel& model, NullModelKind kind, std::uint64_t seed) {
  const auto& links = model.links();
  const std::size_t nb = model.n_buyers();
  const auto keys = sim::draw_tie_keys(links.size(), seed);
  const bool restricted = distance_restricted(kind);
  const auto allowed = restricted ? shortest_quarter(model) : std::vector<std::uint8_t>(links.size(), 1);

  auto criterion = [&](const TradingLink& l) {
    switch (kind) {
      case NullModelKind::price_only:
      case NullModelKind::price_distance: return l.price;
      case NullModelKind::debts_only:
      case NullModelKind::debts_distance: return l.debts;
      default: return 0.0;
    }
  };

  sim::RunReport report;
  std::vector<double> scores(nb);
  std::vector<std::uint8_t> chosen(nb);
  for (std::size_t i = 0; i < model.n_sellers(); ++i) {
    std::size_t allowed_count = 0;
    for (std::size_t x = 0; x < nb; ++x) {
      const auto& l = links[i * nb + x];
      const bool ok = allowed[i * nb + x] != 0;
      allowed_count += ok ? 1 : 0;
      scores[x] = ok ? criterion(l) : -std::numeric_limits<double>::infinity();
    }
    const auto want = std::min<std::size_t>(static_cast<std::size_t>(model.n_buyer()[i]), allowed_count);
    sim::select_top(scores, std::span(keys).subspan(i * nb, nb), want, chosen);
    for (std::size_t x = 0; x < nb; ++x) {
      if (chosen[x]) report.active_links.insert({links[i * nb + x].seller_id, links[i * nb + x].buyer_id});
    }
  }
  report.iterations_used = 0;
  report.converged = true;
  report.observation = metrics::observe(model.dataset(), report.active_links);
  return report;
}

sim::RunReport run_null(const Dataset& dataset, NullModelKind kind, std::uint64_t seed,
                        const sim::ModelOptions& options) {
  sim::PreparedModel model(dataset, options);
  return run_null(model, kind, seed);
}

}  // namespace tradenet::nullmodels
