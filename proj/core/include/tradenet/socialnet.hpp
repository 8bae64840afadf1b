#pragma once

#include <vector>

#include "tradenet/domain.hpp"
#include "tradenet/scoring.hpp"

namespace tradenet::socialnet {

/// One directed, inactive, unscored link from every seller to every other:
/// n(n-1) links. Throws DomainError for fewer than two sellers.
std::vector<SocialLink> build_social_links(const std::vector<SellerAgent>& sellers);

/// Scores every link and keeps, per unordered pair, the stronger direction.
/// Exact ties keep the link whose influencer has the lower id.
std::vector<SocialLink> score_and_prune(const std::vector<SocialLink>& links,
                                        const std::vector<SellerAgent>& sellers, const GlobalParams& w);

/// Each receiving seller activates its round-half-up(n_social) strongest
/// incoming links; ties at the cutoff go to the lower influencer id.
std::vector<SocialLink> select_active(std::vector<SocialLink> links, double n_social);

/// Precomputed pairwise criteria for a fixed seller population. Criteria do
/// not depend on the parameters, so calibration reuses one table across all
/// candidate evaluations.
class CriteriaTable {
 public:
  explicit CriteriaTable(const std::vector<SellerAgent>& sellers);

  std::size_t size() const { return n_; }
  const scoring::SocialCriteria& at(std::size_t from, std::size_t to) const { return table_[from * n_ + to]; }
  AgentId id(std::size_t i) const { return ids_[i]; }

 private:
  std::size_t n_;
  std::vector<AgentId> ids_;
  std::vector<scoring::SocialCriteria> table_;
};

/// An active incoming influence, by seller index.
struct Influence {
  std::size_t from;
  double score;
};

/// Active incoming influences per receiving seller (index-aligned with the
/// table), equivalent to build -> score_and_prune -> select_active.
std::vector<std::vector<Influence>> active_network(const CriteriaTable& table, const GlobalParams& w);

}  // namespace tradenet::socialnet
