#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tradenet/calibration.hpp"
#include "tradenet/csv.hpp"
#include "tradenet/dataio.hpp"
#include "tradenet/metrics.hpp"
#include "tradenet/nullmodels.hpp"
#include "tradenet/scenarios.hpp"
#include "tradenet/scoring.hpp"
#include "tradenet/simulation.hpp"

using namespace tradenet;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass{false};
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

const std::pair<Dataset, dataio::PlantedTruth>& planted() {
  static const auto data = dataio::gen_synthetic(testing::planted_config());
  return data;
}

const Dataset& default_synthetic() {
  static const auto data = dataio::gen_synthetic(dataio::SyntheticConfig{}).first;
  return data;
}

std::string links_text(const std::set<LinkKey>& links) {
  std::ostringstream os;
  os << "seller_id,buyer_id\n";
  for (const auto& l : links) os << l.seller.value << ',' << l.buyer.value << '\n';
  return os.str();
}

Outcome equation_fidelity() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.0, 100.0);
  std::uniform_real_distribution<double> pref(1.0, 2.0);
  double worst_gap = 0.0;
  std::size_t out_of_range = 0;
  std::size_t scale_mismatch = 0;
  for (int t = 0; t < 10000; ++t) {
    GlobalParams g;
    g.w_price = weight(rng);
    g.w_dist = weight(rng);
    g.w_debts = weight(rng) + 1e-6;
    g.w_social = weight(rng);
    const WeightPreferences p{pref(rng), pref(rng), pref(rng), pref(rng)};
    const double s[4] = {unit(rng), unit(rng), unit(rng), unit(rng)};

    const double f = scoring::final_score(s[0], s[1], s[2], s[3], g, p);
    const double pre = scoring::preliminary_score(s[0], s[1], s[2], g, p);
    if (f < 0.0 || f > 1.0 || pre < 0.0 || pre > 1.0) ++out_of_range;

    GlobalParams g0 = g;
    g0.w_social = 0.0;
    worst_gap = std::max(worst_gap, std::abs(scoring::final_score(s[0], s[1], s[2], s[3], g0, p) -
                                             scoring::preliminary_score(s[0], s[1], s[2], g0, p)));

    GlobalParams g2 = g;
    g2.w_price *= 2;
    g2.w_dist *= 2;
    g2.w_debts *= 2;
    g2.w_social *= 2;
    if (scoring::final_score(s[0], s[1], s[2], s[3], g2, p) != f) ++scale_mismatch;

    scoring::SocialCriteria c{unit(rng), unit(rng), unit(rng), unit(rng), unit(rng)};
    g.w_s_education = weight(rng);
    g.w_s_ethnicity = weight(rng);
    g.w_s_activegroup = weight(rng);
    g.w_s_prestigious_job = weight(rng);
    g.w_s_proximity = weight(rng) + 1e-6;
    const double soc = scoring::social_link_score(c, g);
    if (soc < 0.0 || soc > 1.0) ++out_of_range;
  }
  return {worst_gap <= 1e-12 && out_of_range == 0 && scale_mismatch == 0,
          "max |final(w_social=0) - preliminary| = " + fmt(worst_gap, 17) + ", out of [0,1]: " + std::to_string(out_of_range) +
              ", scale mismatches: " + std::to_string(scale_mismatch)};
}

Outcome component_oracle() {
  std::mt19937_64 rng(77);
  std::size_t mismatches = 0;
  for (int g = 0; g < 200; ++g) {
    const std::size_t n = 1 + rng() % 50;
    std::vector<AgentId> agents;
    for (std::size_t i = 0; i < n; ++i) agents.push_back(AgentId{static_cast<std::int64_t>(i)});
    std::set<LinkKey> links;
    const std::size_t m = rng() % (2 * n + 1);
    for (std::size_t k = 0; k < m; ++k) {
      links.insert({AgentId{static_cast<std::int64_t>(rng() % n)}, AgentId{static_cast<std::int64_t>(rng() % n)}});
    }
    for (bool iso : {true, false}) {
      const auto got = metrics::components(agents, links, iso);
      const auto want = testing::bfs_components(agents, links, iso);
      if (got.count != want.count || got.mean_size != want.mean_size) ++mismatches;
    }
  }
  return {mismatches == 0, "200 graphs, mismatches: " + std::to_string(mismatches)};
}

Outcome determinism() {
  const auto& ds = default_synthetic();
  std::set<std::string> texts;
  for (unsigned threads : {1u, 8u}) {
    sim::ModelOptions o;
    o.threads = threads;
    for (int rep = 0; rep < 2; ++rep) texts.insert(links_text(sim::run(ds, reference_params(), 2024, o).active_links));
  }
  return {texts.size() == 1, "distinct active-link CSVs over 2 runs x threads {1,8}: " + std::to_string(texts.size())};
}

Outcome self_consistency() {
  const auto& [ds, truth] = planted();
  const double fit = calibration::evaluate(ds, truth.params, truth.seed);
  return {fit == 1.0, "evaluate(planted params, seed " + std::to_string(truth.seed) + ") = " + fmt(fit, 6)};
}

Outcome ga_recovery() {
  const auto& [ds, truth] = planted();
  const sim::PreparedModel model(ds);
  int debts_largest = 0;
  int fit_ok = 0;
  int monotone = 0;
  double min_fit = 1.0;
  for (int run = 0; run < 10; ++run) {
    calibration::GAConfig cfg;
    cfg.population_size = 50;
    cfg.generations = 200;
    cfg.seed = 1000 + static_cast<std::uint64_t>(run);
    cfg.eval_seed = truth.seed;
    cfg.threads = workers();
    const auto r = calibration::ga_run(model, cfg);
    const auto& b = r.best;
    if (b.w_debts > b.w_price && b.w_debts > b.w_dist && b.w_debts > b.w_social) ++debts_largest;
    if (r.best_fitness >= 0.9) ++fit_ok;
    min_fit = std::min(min_fit, r.best_fitness);
    bool mono = true;
    for (std::size_t g = 1; g < r.trace.generations.size(); ++g) {
      mono = mono && r.trace.generations[g].best >= r.trace.generations[g - 1].best;
    }
    monotone += mono;
  }
  return {debts_largest >= 8 && fit_ok == 10 && monotone == 10,
          "w_debts largest in " + std::to_string(debts_largest) + "/10, best fitness >= 0.9 in " +
              std::to_string(fit_ok) + "/10 (min " + fmt(min_fit) + "), monotone traces " + std::to_string(monotone) +
              "/10"};
}

double null_mean(const sim::PreparedModel& m, nullmodels::NullModelKind kind, int seeds) {
  double sum = 0.0;
  for (int s = 0; s < seeds; ++s) {
    sum += nullmodels::run_null(m, kind, static_cast<std::uint64_t>(s)).observation.correct_tradings_p;
  }
  return sum / seeds;
}

Outcome null_ordering() {
  const sim::PreparedModel m(planted().first);
  const double debts = null_mean(m, nullmodels::NullModelKind::debts_only, 100);
  const double random = null_mean(m, nullmodels::NullModelKind::random, 100);
  const double price = null_mean(m, nullmodels::NullModelKind::price_only, 100);
  const bool ok = debts - random > 0.05 && random - price > 0.05;
  return {ok, "debts_only " + fmt(debts) + ", random " + fmt(random) + ", price_only " + fmt(price)};
}

Outcome random_null_calibration() {
  Dataset ds = planted().first;
  std::set<LinkKey> one_each;
  std::set<AgentId> seen;
  for (const auto& l : ds.empirical_links) {
    if (seen.insert(l.seller).second) one_each.insert(l);
  }
  ds.empirical_links = one_each;
  for (auto& s : ds.sellers) s.n_buyer_empirical = 1;
  const sim::PreparedModel m(ds);
  const int n = 1000;
  double sum = 0.0, sq = 0.0;
  for (int s = 0; s < n; ++s) {
    const double p =
        nullmodels::run_null(m, nullmodels::NullModelKind::random, static_cast<std::uint64_t>(s)).observation.correct_tradings_p;
    sum += p;
    sq += p * p;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sq - n * mean * mean) / (n - 1)) / std::sqrt(static_cast<double>(n));
  const double target = 1.0 / static_cast<double>(ds.buyers.size());
  return {std::abs(mean - target) <= 3 * se,
          "mean " + fmt(mean, 5) + " vs 1/B = " + fmt(target, 5) + " (3 SE = " + fmt(3 * se, 5) + ")"};
}

Outcome scenario_invariances() {
  const auto& ds = planted().first;
  const auto a1 = scenarios::apply_scenario(ds, scenarios::ScenarioId::A1);
  int same = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    same += sim::run(ds, reference_params(), seed).active_links == sim::run(a1, reference_params(), seed).active_links;
  }
  const sim::PreparedModel a2(scenarios::apply_scenario(ds, scenarios::ScenarioId::A2));
  std::size_t not_half = 0;
  for (const auto& l : a2.links()) not_half += l.score_debts != 0.5;

  const auto c = scenarios::apply_scenario(ds, scenarios::ScenarioId::C);
  std::vector<double> t;
  for (const auto& s : ds.sellers) t.push_back(s.transport);
  std::sort(t.begin(), t.end());
  const std::size_t n = t.size();
  const double median = n % 2 ? t[n / 2] : 0.5 * (t[n / 2 - 1] + t[n / 2]);
  std::size_t upper_changed = 0;
  for (std::size_t i = 0; i < ds.sellers.size(); ++i) {
    if (ds.sellers[i].transport >= median) upper_changed += c.sellers[i].transport != ds.sellers[i].transport;
  }
  return {same == 20 && not_half == 0 && upper_changed == 0,
          "A1 == baseline on " + std::to_string(same) + "/20 seeds, A2 debt sub-scores != 0.5: " +
              std::to_string(not_half) + ", C upper-half changes: " + std::to_string(upper_changed)};
}

Outcome convergence() {
  const sim::PreparedModel m(default_synthetic());
  int ok = 0;
  std::size_t max_it = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = sim::run(m, reference_params(), seed);
    ok += r.converged && r.iterations_used <= 50;
    max_it = std::max(max_it, r.iterations_used);
  }
  sim::ModelOptions capped;
  capped.max_iter = 1;
  bool flagged = false;
  try {
    const auto r = sim::run(default_synthetic(), reference_params(), 0, capped);
    flagged = !r.converged && !r.active_links.empty();
  } catch (...) {
    flagged = false;
  }
  return {ok >= 19 && flagged, std::to_string(ok) + "/20 converged within 50 iterations (max " +
                                   std::to_string(max_it) + "), capped run flagged without error: " +
                                   (flagged ? "yes" : "no")};
}

Outcome round_trip() {
  const auto& ds = default_synthetic();
  const auto dir1 = fs::temp_directory_path() / "tradenet_accept_rt1";
  const auto dir2 = fs::temp_directory_path() / "tradenet_accept_rt2";
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  dataio::save_dataset(ds, dir1.string());
  dataio::save_dataset(dataio::load_dataset(dataio::DatasetPaths::in_directory(dir1.string())), dir2.string());
  int identical = 0;
  for (auto f : {"sellers.csv", "buyers.csv", "links.csv", "distances.csv"}) {
    identical += csv::read_file((dir1 / f).string()) == csv::read_file((dir2 / f).string());
  }

  // Independent tally straight from the saved links file.
  std::map<std::string, int> indeg;
  std::istringstream in(csv::read_file((dir1 / "links.csv").string()));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() == 5 && f[4] == "1") ++indeg[f[1]];
  }
  std::set<std::string> expected_removed;
  for (const auto& [b, d] : indeg) {
    if (d == 1) expected_removed.insert(b);
  }
  const auto reduced = dataio::reduced_sample(ds);
  std::set<std::string> kept;
  for (const auto& b : reduced.buyers) kept.insert(std::to_string(b.id.value));
  std::set<std::string> removed;
  for (const auto& b : ds.buyers) {
    if (!kept.count(std::to_string(b.id.value))) removed.insert(std::to_string(b.id.value));
  }
  return {identical == 4 && removed == expected_removed,
          std::to_string(identical) + "/4 files byte-identical, removed buyers " + std::to_string(removed.size()) +
              " vs tally " + std::to_string(expected_removed.size())};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "equation fidelity", 1, equation_fidelity},
      {2, "component oracle", 5, component_oracle},
      {3, "determinism", 30, determinism},
      {4, "self-consistency recovery", 10, self_consistency},
      {5, "GA recovery", 900, ga_recovery},
      {6, "null-model ordering", 120, null_ordering},
      {7, "random-null calibration", 60, random_null_calibration},
      {8, "scenario invariances", 60, scenario_invariances},
      {9, "convergence", 120, convergence},
      {10, "data round-trip", 10, round_trip},
  };
  // Shared datasets are built up front so their cost is not charged to one criterion.
  planted();
  default_synthetic();

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("criterion %d %s: %s - %s [%.2fs of %.0fs]\n", c.id, c.name, pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
