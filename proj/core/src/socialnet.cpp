#include "tradenet/socialnet.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace tradenet::socialnet {

namespace {

// Stronger-first ordering used for both pruning ties and activation cutoffs.
bool stronger(double score_a, AgentId from_a, double score_b, AgentId from_b) {
  if (score_a != score_b) return score_a > score_b;
  return from_a < from_b;
}

}  // namespace

std::vector<SocialLink> build_social_links(const std::vector<SellerAgent>& sellers) {
  if (sellers.size() < 2) throw DomainError("build_social_links: need at least two sellers");
  std::vector<SocialLink> links;
  links.reserve(sellers.size() * (sellers.size() - 1));
  for (const auto& a : sellers) {
    for (const auto& b : sellers) {
      if (a.id == b.id) continue;
      links.push_back({a.id, b.id, 0.0, false});
    }
  }
  return links;
}

std::vector<SocialLink> score_and_prune(const std::vector<SocialLink>& links,
                                        const std::vector<SellerAgent>& sellers, const GlobalParams& w) {
  std::unordered_map<AgentId, const SellerAgent*> by_id;
  for (const auto& s : sellers) by_id.emplace(s.id, &s);
  auto lookup = [&](AgentId id) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw DomainError("score_and_prune: unknown seller " + to_string(id));
    return it->second;
  };

  std::vector<SocialLink> scored = links;
  for (auto& link : scored) {
    link.score = scoring::social_link_score(
        scoring::social_criteria(*lookup(link.from_seller_id), *lookup(link.to_seller_id)), w);
    link.active = false;
  }

  std::map<std::pair<AgentId, AgentId>, std::size_t> best;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    const auto& l = scored[i];
    auto key = std::minmax(l.from_seller_id, l.to_seller_id);
    auto [it, inserted] = best.emplace(std::pair{key.first, key.second}, i);
    if (!inserted) {
      const auto& cur = scored[it->second];
      if (stronger(l.score, l.from_seller_id, cur.score, cur.from_seller_id)) it->second = i;
    }
  }

  std::vector<bool> keep(scored.size(), false);
  for (const auto& [pair, idx] : best) keep[idx] = true;
  std::vector<SocialLink> out;
  out.reserve(best.size());
  for (std::size_t i = 0; i < scored.size(); ++i) {
    if (keep[i]) out.push_back(scored[i]);
  }
  return out;
}

std::vector<SocialLink> select_active(std::vector<SocialLink> links, double n_social) {
  if (n_social < 0.0) throw DomainError("select_active: n_social must be >= 0");
  GlobalParams tmp;
  tmp.n_social = n_social;
  const std::size_t k = static_cast<std::size_t>(tmp.social_capacity());

  std::map<AgentId, std::vector<std::size_t>> incoming;
  for (std::size_t i = 0; i < links.size(); ++i) {
    links[i].active = false;
    incoming[links[i].to_seller_id].push_back(i);
  }
  for (auto& [receiver, idx] : incoming) {
    const std::size_t take = std::min(k, idx.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take), idx.end(),
                      [&](std::size_t a, std::size_t b) {
                        return stronger(links[a].score, links[a].from_seller_id, links[b].score,
                                        links[b].from_seller_id);
                      });
    for (std::size_t j = 0; j < take; ++j) links[idx[j]].active = true;
  }
  return links;
}

CriteriaTable::CriteriaTable(const std::vector<SellerAgent>& sellers)
    : n_(sellers.size()), table_(sellers.size() * sellers.size()) {
  ids_.reserve(n_);
  for (const auto& s : sellers) ids_.push_back(s.id);
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      if (a != b) table_[a * n_ + b] = scoring::social_criteria(sellers[a], sellers[b]);
    }
  }
}

std::vector<std::vector<Influence>> active_network(const CriteriaTable& table, const GlobalParams& w) {
  const std::size_t n = table.size();
  std::vector<std::vector<Influence>> incoming(n);
  const std::size_t k = static_cast<std::size_t>(w.social_capacity());
  if (k == 0 || n < 2) return incoming;

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double ab = scoring::social_link_score(table.at(a, b), w);
      const double ba = scoring::social_link_score(table.at(b, a), w);
      if (stronger(ab, table.id(a), ba, table.id(b))) {
        incoming[b].push_back({a, ab});
      } else {
        incoming[a].push_back({b, ba});
      }
    }
  }
  for (auto& in : incoming) {
    const std::size_t take = std::min(k, in.size());
    std::partial_sort(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(take), in.end(),
                      [&](const Influence& x, const Influence& y) {
                        return stronger(x.score, table.id(x.from), y.score, table.id(y.from));
                      });
    in.resize(take);
    // Influencer order fixes the summation order of the social pass.
    std::sort(in.begin(), in.end(), [](const Influence& x, const Influence& y) { return x.from < y.from; });
  }
  return incoming;
}

}  // namespace tradenet::socialnet
