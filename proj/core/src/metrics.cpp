#include "tradenet/metrics.hpp"

#include <numeric>
#include <unordered_map>

#include "tradenet/csv.hpp"

namespace tradenet::metrics {

CorrectLinks correct_links(const std::set<LinkKey>& active, const std::set<LinkKey>& empirical) {
  CorrectLinks out;
  for (const auto& l : active) {
    if (empirical.count(l)) ++out.n;
  }
  out.p = active.empty() ? 0.0 : static_cast<double>(out.n) / static_cast<double>(active.size());
  return out;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned> rank_;
};

}  // namespace

ComponentStats components(const std::vector<AgentId>& agents, const std::set<LinkKey>& active,
                          bool include_isolated) {
  std::unordered_map<AgentId, std::size_t> index;
  index.reserve(agents.size());
  for (std::size_t i = 0; i < agents.size(); ++i) index.emplace(agents[i], i);

  DisjointSets sets(agents.size());
  std::vector<bool> touched(agents.size(), false);
  for (const auto& l : active) {
    auto a = index.find(l.seller);
    auto b = index.find(l.buyer);
    if (a == index.end() || b == index.end()) continue;
    touched[a->second] = touched[b->second] = true;
    sets.unite(a->second, b->second);
  }

  std::size_t counted = 0;
  std::size_t roots = 0;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (!include_isolated && !touched[i]) continue;
    ++counted;
    if (sets.find(i) == i) ++roots;
  }
  ComponentStats out;
  out.count = roots;
  out.mean_size = roots == 0 ? 0.0 : static_cast<double>(counted) / static_cast<double>(roots);
  return out;
}

namespace {

std::vector<AgentId> all_agents(const Dataset& ds) {
  std::vector<AgentId> ids;
  ids.reserve(ds.sellers.size() + ds.buyers.size());
  for (const auto& s : ds.sellers) ids.push_back(s.id);
  for (const auto& b : ds.buyers) ids.push_back(b.id);
  return ids;
}

struct LinkMeans {
  double price{0.0};
  double length{0.0};
};

LinkMeans link_means(const Dataset& ds, const std::set<LinkKey>& active) {
  LinkMeans m;
  if (active.empty()) return m;
  std::unordered_map<AgentId, double> price;
  for (const auto& b : ds.buyers) price.emplace(b.id, b.price);
  for (const auto& l : active) {
    m.price += price.at(l.buyer);
    m.length += ds.distance.at(l.seller, l.buyer);
  }
  m.price /= static_cast<double>(active.size());
  m.length /= static_cast<double>(active.size());
  return m;
}

}  // namespace

ObservationRecord observe(const Dataset& ds, const std::set<LinkKey>& active) {
  ObservationRecord r;
  const auto agents = all_agents(ds);
  r.active_tradings_n = active.size();
  const auto correct = correct_links(active, ds.empirical_links);
  r.correct_tradings_n = correct.n;
  r.correct_tradings_p = correct.p;
  const auto all = components(agents, active, true);
  r.components_n = all.count;
  r.components_size_mu = all.mean_size;
  r.components_n_active_only = components(agents, active, false).count;
  const auto means = link_means(ds, active);
  r.mean_link_length = means.length;
  r.mean_price = means.price;
  return r;
}

ScenarioIndicators scenario_indicators(const Dataset& ds, const std::set<LinkKey>& active) {
  if (active.empty()) throw DomainError("scenario_indicators: empty active network");
  ScenarioIndicators out;
  const auto means = link_means(ds, active);
  out.mean_price = means.price;
  out.mean_link_length = means.length;
  const auto comp = components(all_agents(ds), active, false);
  out.components_n = comp.count;
  out.components_size_mu = comp.mean_size;
  return out;
}

std::string observation_csv_header() {
  return "run_id,seed,iterations,converged,active_tradings_n,correct_tradings_n,correct_tradings_p,"
         "components_n,components_size_mu,components_n_active_only,mean_link_length,mean_price";
}

std::string observation_csv_row(const std::string& run_id, std::uint64_t seed, std::size_t iterations,
                                bool converged, const ObservationRecord& o) {
  using csv::format_double;
  return run_id + "," + std::to_string(seed) + "," + std::to_string(iterations) + "," + (converged ? "1" : "0") +
         "," + std::to_string(o.active_tradings_n) + "," + std::to_string(o.correct_tradings_n) + "," +
         format_double(o.correct_tradings_p) + "," + std::to_string(o.components_n) + "," +
         format_double(o.components_size_mu) + "," + std::to_string(o.components_n_active_only) + "," +
         format_double(o.mean_link_length) + "," + format_double(o.mean_price);
}

}  // namespace tradenet::metrics
