#pragma once

#include <cstdint>
#include <deque>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tradenet/domain.hpp"
#include "tradenet/metrics.hpp"
#include "tradenet/socialnet.hpp"

namespace tradenet::sim {

/// Where each seller's number of buyers comes from.
enum class NBuyerMode { empirical, regression };

/// Scope of the min-max rescaling of price, distance and debts sub-scores.
enum class NormalizationScope { per_seller, global };

/// What influencers pass on through the social pass: their continuous link
/// scores or their 0/1 active status.
enum class SocialSignal { scores, active };

struct ModelOptions {
  NBuyerMode n_buyer_mode{NBuyerMode::empirical};
  NormalizationScope scope{NormalizationScope::per_seller};
  SocialSignal social_signal{SocialSignal::scores};
  std::size_t max_iter{500};
  unsigned threads{1};
  /// Stop early once a short cycle is detected instead of running to max_iter.
  bool stop_on_cycle{false};
};

/// Number of buyers predicted from total sales by the fitted log-linear
/// relation 0.045 + 0.065 ln(total_sales), rounded half-up, at least 1.
int predict_n_buyer(double total_sales);

/// Parameter-independent part of the model: agents sorted by id, the
/// seller x buyer link table with static sub-scores, preferences, per-seller
/// buyer counts and pairwise social criteria. Immutable once built and safe
/// to share across threads.
class PreparedModel {
 public:
  explicit PreparedModel(const Dataset& dataset, ModelOptions options = {});

  const Dataset& dataset() const { return dataset_; }
  const ModelOptions& options() const { return options_; }
  std::size_t n_sellers() const { return dataset_.sellers.size(); }
  std::size_t n_buyers() const { return dataset_.buyers.size(); }
  /// Links in seller-major order: link(i, j) = links()[i * n_buyers() + j].
  const std::vector<TradingLink>& links() const { return links_; }
  const std::vector<int>& n_buyer() const { return n_buyer_; }
  const socialnet::CriteriaTable& criteria() const { return criteria_; }

 private:
  Dataset dataset_;
  ModelOptions options_;
  std::vector<TradingLink> links_;
  std::vector<int> n_buyer_;
  socialnet::CriteriaTable criteria_;
};

struct ModelState {
  const PreparedModel* model{nullptr};
  GlobalParams params;
  std::vector<TradingLink> trading_links;
  /// Active social links (after pruning and activation).
  std::vector<SocialLink> social_links;
  std::vector<std::vector<socialnet::Influence>> influences;
  /// Random priorities that order exactly tied links, drawn once per run.
  std::vector<std::uint64_t> tie_keys;
  std::size_t iteration{0};
  bool converged{false};
  bool cycle_detected{false};
  std::uint64_t rng_seed{0};
  std::deque<std::vector<std::uint8_t>> history;

  std::vector<std::uint8_t> selection() const;
  std::set<LinkKey> active_links() const;
};

struct RunReport {
  std::size_t iterations_used{0};
  bool converged{false};
  bool cycle_detected{false};
  metrics::ObservationRecord observation;
  std::set<LinkKey> active_links;
};

/// Builds links, preliminary scores and the active social network for
/// `params`. The initial selection uses the preliminary scores.
ModelState init_model(const PreparedModel& model, const GlobalParams& params, std::uint64_t seed);

/// Recomputes every link's social sub-score from the previous iteration's
/// scores of its active influencers, then rescales by the global maximum.
void social_subscore_pass(ModelState& state);

/// Final scores into the staging slot, then committed for every link at once.
void final_score_pass(ModelState& state);

/// Per seller, activates the n_buyer highest-scored links.
void select_active_trading(ModelState& state);

/// One model loop; sets `converged` when two consecutive loops select the
/// same network.
void step(ModelState& state);

RunReport run(const PreparedModel& model, const GlobalParams& params, std::uint64_t seed);
RunReport run(const Dataset& dataset, const GlobalParams& params, std::uint64_t seed,
              const ModelOptions& options = {});

/// One random priority per link, drawn in link order from a generator seeded
/// with `seed`. Ordering exactly tied links by these keys picks a uniformly
/// random subset among them.
std::vector<std::uint64_t> draw_tie_keys(std::size_t n_links, std::uint64_t seed);

/// Marks the `count` best entries of `scores` in `out` (1 = chosen). Higher
/// scores win; exact ties go to the smaller key.
void select_top(std::span<const double> scores, std::span<const std::uint64_t> keys, std::size_t count,
                std::span<std::uint8_t> out);

/// Observation of the state's current active network.
metrics::ObservationRecord observe(const ModelState& state);

const char* to_string(NBuyerMode mode);
const char* to_string(NormalizationScope scope);
const char* to_string(SocialSignal signal);
NBuyerMode parse_n_buyer_mode(const std::string& text);
NormalizationScope parse_scope(const std::string& text);
SocialSignal parse_social_signal(const std::string& text);

}  // namespace tradenet::sim
