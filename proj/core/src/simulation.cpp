#include "tradenet/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tradenet/parallel.hpp"
#include "tradenet/scoring.hpp"

namespace tradenet::sim {

namespace {

constexpr std::size_t kHistory = 8;

Dataset sorted_by_id(const Dataset& ds) {
  Dataset out = ds;
  std::sort(out.sellers.begin(), out.sellers.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(out.buyers.begin(), out.buyers.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  if (out.sellers.empty()) throw DomainError("model: dataset has no sellers");
  if (out.buyers.empty()) throw DomainError("model: dataset has no buyers");
  out.sellers = scoring::compute_preferences(std::move(out.sellers));
  return out;
}

// Normalizes one criterion over index ranges [begin, begin + len) of `links`.
template <class Get, class Set>
void normalize_range(std::vector<TradingLink>& links, std::size_t begin, std::size_t len, bool inverted, Get get,
                     Set set) {
  std::vector<double> values(len);
  std::vector<double> scaled(len);
  for (std::size_t k = 0; k < len; ++k) values[k] = get(links[begin + k]);
  scoring::normalize_subscores_into(values, inverted, scaled);
  for (std::size_t k = 0; k < len; ++k) set(links[begin + k], scaled[k]);
}

}  // namespace

int predict_n_buyer(double total_sales) {
  if (!(total_sales > 0.0)) throw DomainError("predict_n_buyer: total_sales must be > 0");
  const double raw = 0.045 + 0.065 * std::log(total_sales);
  return std::max(1, static_cast<int>(std::floor(raw + 0.5)));
}

PreparedModel::PreparedModel(const Dataset& dataset, ModelOptions options)
    : dataset_(sorted_by_id(dataset)), options_(options), criteria_(dataset_.sellers) {
  const std::size_t ns = dataset_.sellers.size();
  const std::size_t nb = dataset_.buyers.size();

  links_.resize(ns * nb);
  n_buyer_.resize(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    const auto& s = dataset_.sellers[i];
    const int wanted =
        options_.n_buyer_mode == NBuyerMode::empirical ? s.n_buyer_empirical : predict_n_buyer(s.total_sales);
    n_buyer_[i] = std::clamp(wanted, 1, static_cast<int>(nb));
    for (std::size_t j = 0; j < nb; ++j) {
      const auto& b = dataset_.buyers[j];
      auto& l = links_[i * nb + j];
      l.seller_id = s.id;
      l.buyer_id = b.id;
      l.length = dataset_.distance.at(s.id, b.id);
      l.price = b.price;
      l.debts = s.debt_with(b.id);
      const LinkKey key{s.id, b.id};
      l.status_data = dataset_.empirical_links.count(key) != 0;
      if (auto it = dataset_.tons.find(key); it != dataset_.tons.end()) l.tons = it->second;
    }
  }

  auto price = [](const TradingLink& l) { return l.price; };
  auto length = [](const TradingLink& l) { return l.length; };
  auto debts = [](const TradingLink& l) { return l.debts; };
  auto set_price = [](TradingLink& l, double v) { l.score_price = v; };
  auto set_dist = [](TradingLink& l, double v) { l.score_dist = v; };
  auto set_debts = [](TradingLink& l, double v) { l.score_debts = v; };
  if (options_.scope == NormalizationScope::per_seller) {
    for (std::size_t i = 0; i < ns; ++i) {
      normalize_range(links_, i * nb, nb, false, price, set_price);
      normalize_range(links_, i * nb, nb, true, length, set_dist);
      normalize_range(links_, i * nb, nb, false, debts, set_debts);
    }
  } else {
    normalize_range(links_, 0, links_.size(), false, price, set_price);
    normalize_range(links_, 0, links_.size(), true, length, set_dist);
    normalize_range(links_, 0, links_.size(), false, debts, set_debts);
  }
}

std::vector<std::uint8_t> ModelState::selection() const {
  std::vector<std::uint8_t> out(trading_links.size());
  for (std::size_t k = 0; k < trading_links.size(); ++k) out[k] = trading_links[k].status_model ? 1 : 0;
  return out;
}

std::set<LinkKey> ModelState::active_links() const {
  std::set<LinkKey> out;
  for (const auto& l : trading_links) {
    if (l.status_model) out.insert({l.seller_id, l.buyer_id});
  }
  return out;
}

std::vector<std::uint64_t> draw_tie_keys(std::size_t n_links, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> keys(n_links);
  for (auto& k : keys) k = rng();
  return keys;
}

void select_top(std::span<const double> scores, std::span<const std::uint64_t> keys, std::size_t count,
                std::span<std::uint8_t> out) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const std::size_t take = std::min(count, n);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      if (keys[a] != keys[b]) return keys[a] < keys[b];
                      return a < b;
                    });
  std::fill(out.begin(), out.end(), std::uint8_t{0});
  for (std::size_t k = 0; k < take; ++k) out[order[k]] = 1;
}

ModelState init_model(const PreparedModel& model, const GlobalParams& params, std::uint64_t seed) {
  require_valid(validate(params), "parameters");
  ModelState st;
  st.model = &model;
  st.params = params;
  st.rng_seed = seed;
  st.trading_links = model.links();

  const auto& sellers = model.dataset().sellers;
  const std::size_t nb = model.n_buyers();
  for (std::size_t k = 0; k < st.trading_links.size(); ++k) {
    auto& l = st.trading_links[k];
    l.score = scoring::preliminary_score(l.score_price, l.score_dist, l.score_debts, params, sellers[k / nb].pref);
    l.score_next = l.score;
  }

  const double social_weight_sum = params.w_s_education + params.w_s_ethnicity + params.w_s_activegroup +
                                   params.w_s_prestigious_job + params.w_s_proximity;
  if (social_weight_sum > 0.0) {
    st.influences = socialnet::active_network(model.criteria(), params);
  } else {
    // Only reachable with w_social == 0, where the social network has no effect.
    st.influences.assign(model.n_sellers(), {});
  }
  for (std::size_t b = 0; b < st.influences.size(); ++b) {
    for (const auto& in : st.influences[b]) {
      st.social_links.push_back({sellers[in.from].id, sellers[b].id, in.score, true});
    }
  }

  st.tie_keys = draw_tie_keys(st.trading_links.size(), seed);
  select_active_trading(st);
  return st;
}

void social_subscore_pass(ModelState& st) {
  const auto& model = *st.model;
  const std::size_t ns = model.n_sellers();
  const std::size_t nb = model.n_buyers();
  const bool use_scores = model.options().social_signal == SocialSignal::scores;
  auto& links = st.trading_links;

  std::vector<double> raw(links.size(), 0.0);
  parallel_for(ns, model.options().threads, [&](std::size_t b) {
    for (const auto& in : st.influences[b]) {
      for (std::size_t x = 0; x < nb; ++x) {
        const auto& src = links[in.from * nb + x];
        const double signal = use_scores ? src.score : (src.status_model ? 1.0 : 0.0);
        raw[b * nb + x] += signal * in.score;
      }
    }
  });

  const double max = raw.empty() ? 0.0 : *std::max_element(raw.begin(), raw.end());
  for (std::size_t k = 0; k < links.size(); ++k) links[k].score_social = max > 0.0 ? raw[k] / max : 0.0;
}

void final_score_pass(ModelState& st) {
  const auto& model = *st.model;
  const auto& sellers = model.dataset().sellers;
  const std::size_t nb = model.n_buyers();
  auto& links = st.trading_links;
  parallel_for(model.n_sellers(), model.options().threads, [&](std::size_t i) {
    for (std::size_t x = 0; x < nb; ++x) {
      auto& l = links[i * nb + x];
      l.score_next = scoring::final_score(l.score_price, l.score_dist, l.score_debts, l.score_social, st.params,
                                          sellers[i].pref);
    }
  });
  for (auto& l : links) l.score = l.score_next;
}

void select_active_trading(ModelState& st) {
  const auto& model = *st.model;
  const std::size_t nb = model.n_buyers();
  auto& links = st.trading_links;
  parallel_for(model.n_sellers(), model.options().threads, [&](std::size_t i) {
    std::vector<double> scores(nb);
    std::vector<std::uint8_t> chosen(nb);
    for (std::size_t x = 0; x < nb; ++x) scores[x] = links[i * nb + x].score;
    select_top(scores, std::span(st.tie_keys).subspan(i * nb, nb), static_cast<std::size_t>(model.n_buyer()[i]),
               chosen);
    for (std::size_t x = 0; x < nb; ++x) links[i * nb + x].status_model = chosen[x] != 0;
  });
}

void step(ModelState& st) {
  social_subscore_pass(st);
  final_score_pass(st);
  select_active_trading(st);
  ++st.iteration;

  auto current = st.selection();
  if (st.iteration >= 2 && !st.history.empty()) {
    if (st.history.back() == current) {
      st.converged = true;
    } else {
      for (std::size_t lag = 0; lag + 1 < st.history.size(); ++lag) {
        if (st.history[lag] == current) st.cycle_detected = true;
      }
    }
  }
  st.history.push_back(std::move(current));
  if (st.history.size() > kHistory) st.history.pop_front();
}

metrics::ObservationRecord observe(const ModelState& st) {
  return metrics::observe(st.model->dataset(), st.active_links());
}

RunReport run(const PreparedModel& model, const GlobalParams& params, std::uint64_t seed) {
  const std::size_t max_iter = model.options().max_iter;
  if (max_iter < 1) throw DomainError("run: max_iter must be >= 1");
  ModelState st = init_model(model, params, seed);
  while (st.iteration < max_iter) {
    step(st);
    if (st.converged) break;
    if (st.cycle_detected && model.options().stop_on_cycle) break;
  }
  RunReport report;
  report.iterations_used = st.iteration;
  report.converged = st.converged;
  report.cycle_detected = st.cycle_detected;
  report.active_links = st.active_links();
  report.observation = metrics::observe(model.dataset(), report.active_links);
  return report;
}

RunReport run(const Dataset& dataset, const GlobalParams& params, std::uint64_t seed, const ModelOptions& options) {
  PreparedModel model(dataset, options);
  return run(model, params, seed);
}

const char* to_string(NBuyerMode mode) { return mode == NBuyerMode::empirical ? "empirical" : "regression"; }
const char* to_string(NormalizationScope scope) {
  return scope == NormalizationScope::per_seller ? "per_seller" : "global";
}
const char* to_string(SocialSignal signal) { return signal == SocialSignal::scores ? "scores" : "active"; }

NBuyerMode parse_n_buyer_mode(const std::string& text) {
  if (text == "empirical") return NBuyerMode::empirical;
  if (text == "regression") return NBuyerMode::regression;
  throw DomainError("unknown n_buyer mode '" + text + "' (empirical|regression)");
}

NormalizationScope parse_scope(const std::string& text) {
  if (text == "per_seller") return NormalizationScope::per_seller;
  if (text == "global") return NormalizationScope::global;
  throw DomainError("unknown normalization scope '" + text + "' (per_seller|global)");
}

SocialSignal parse_social_signal(const std::string& text) {
  if (text == "scores") return SocialSignal::scores;
  if (text == "active") return SocialSignal::active;
  throw DomainError("unknown social signal '" + text + "' (scores|active)");
}

}  // namespace tradenet::sim
