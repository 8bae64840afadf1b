#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "manifest.hpp"
#include "tradenet/calibration.hpp"
#include "tradenet/config.hpp"
#include "tradenet/csv.hpp"
#include "tradenet/dataio.hpp"
#include "tradenet/nullmodels.hpp"
#include "tradenet/scenarios.hpp"
#include "tradenet/simulation.hpp"

namespace fs = std::filesystem;
using namespace tradenet;

namespace {

struct Globals {
  std::uint64_t seed{1};
  unsigned threads{1};
  std::string out{"out"};
  bool seed_set{false};
};

struct DataFlags {
  std::string dir;
  std::string sample{"complete"};
};

struct ModelFlags {
  std::string n_buyer_mode{"empirical"};
  std::string scope{"per_seller"};
  std::string social_signal{"scores"};
  std::size_t max_iter{500};

  sim::ModelOptions options(unsigned threads) const {
    sim::ModelOptions o;
    o.n_buyer_mode = sim::parse_n_buyer_mode(n_buyer_mode);
    o.scope = sim::parse_scope(scope);
    o.social_signal = sim::parse_social_signal(social_signal);
    o.max_iter = max_iter;
    o.threads = threads;
    return o;
  }
};

struct ParamFlags {
  std::string path;
  std::array<std::optional<double>, GlobalParams::kSize> overrides;

  GlobalParams resolve() const {
    GlobalParams p = path.empty() ? reference_params() : config::load_params(path);
    auto values = p.to_array();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (overrides[i]) values[i] = *overrides[i];
    }
    return GlobalParams::from_array(values);
  }
};

void add_data_flags(CLI::App* app, DataFlags& f) {
  app->add_option("--data", f.dir, "Directory with sellers.csv, buyers.csv, links.csv [, distances.csv]")->required();
  app->add_option("--sample", f.sample, "complete or reduced")->check(CLI::IsMember({"complete", "reduced"}));
}

void add_model_flags(CLI::App* app, ModelFlags& f) {
  app->add_option("--n-buyer-mode", f.n_buyer_mode, "empirical or regression")
      ->check(CLI::IsMember({"empirical", "regression"}));
  app->add_option("--scope", f.scope, "Sub-score rescaling: per_seller or global")
      ->check(CLI::IsMember({"per_seller", "global"}));
  app->add_option("--social-signal", f.social_signal, "scores or active")->check(CLI::IsMember({"scores", "active"}));
  app->add_option("--max-iter", f.max_iter, "Iteration cap");
}

void add_param_flags(CLI::App* app, ParamFlags& f) {
  app->add_option("--params", f.path, "Parameter JSON (default: reference values)");
  const auto& names = GlobalParams::names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::string flag = std::string("--") + names[i];
    for (auto& ch : flag) {
      if (ch == '_') ch = '-';
    }
    app->add_option(flag, f.overrides[i], std::string("Override ") + names[i]);
  }
}

Dataset load(const DataFlags& f, cli::Manifest& m) {
  const auto paths = dataio::DatasetPaths::in_directory(f.dir);
  Dataset ds = dataio::load_dataset(paths);
  m.add_input(paths.sellers);
  m.add_input(paths.buyers);
  m.add_input(paths.links);
  if (paths.distances) m.add_input(*paths.distances);
  m.parameters["sample"] = f.sample;
  if (f.sample == "reduced") ds = dataio::reduced_sample(ds);
  return ds;
}

nlohmann::json params_json(const GlobalParams& p) {
  return nlohmann::json::parse(config::params_to_json(p)).at("params");
}

nlohmann::json options_json(const sim::ModelOptions& o) {
  return {{"n_buyer_mode", sim::to_string(o.n_buyer_mode)},
          {"scope", sim::to_string(o.scope)},
          {"social_signal", sim::to_string(o.social_signal)},
          {"max_iter", o.max_iter}};
}

std::string out_path(const Globals& g, const std::string& name) { return (fs::path(g.out) / name).string(); }

void ensure_out(const Globals& g) {
  std::error_code ec;
  fs::create_directories(g.out, ec);
  if (ec) throw IoError("cannot create directory " + g.out + ": " + ec.message());
}

void write(const Globals& g, cli::Manifest& m, const std::string& name, const std::string& content) {
  const auto path = out_path(g, name);
  csv::write_file_atomic(path, content);
  m.outputs.push_back(path);
}

std::string active_links_csv(const Dataset& ds, const std::set<LinkKey>& active) {
  std::ostringstream os;
  os << "seller_id,buyer_id,empirical\n";
  for (const auto& l : active) {
    os << l.seller.value << ',' << l.buyer.value << ',' << (ds.empirical_links.count(l) ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string seller_report_csv(const Dataset& ds, const std::set<LinkKey>& active) {
  std::map<AgentId, std::pair<int, int>> counts;
  for (const auto& l : active) {
    auto& c = counts[l.seller];
    ++c.first;
    if (ds.empirical_links.count(l)) ++c.second;
  }
  std::vector<const SellerAgent*> order;
  for (const auto& s : ds.sellers) order.push_back(&s);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->id < b->id; });
  std::ostringstream os;
  os << "seller_id,village_id,education,ethnicity,transport,total_debt,total_sales,n_buyer_empirical,n_active,"
        "n_correct,all_correct\n";
  for (const auto* s : order) {
    double debt = 0.0;
    for (const auto& [b, d] : s->debt_by_buyer) debt += d;
    const auto c = counts.count(s->id) ? counts.at(s->id) : std::pair<int, int>{0, 0};
    os << s->id.value << ',' << s->village_id << ',' << s->education << ',' << s->ethnicity << ','
       << csv::format_double(s->transport) << ',' << csv::format_double(debt) << ','
       << csv::format_double(s->total_sales) << ',' << s->n_buyer_empirical << ',' << c.first << ',' << c.second
       << ',' << (c.first > 0 && c.first == c.second ? 1 : 0) << '\n';
  }
  return os.str();
}

int cmd_gen_data(const Globals& g, const std::string& config_path, cli::Manifest& m) {
  dataio::SyntheticConfig cfg;
  try {
    if (!config_path.empty()) {
      cfg = config::load_synthetic_config(config_path);
      m.add_input(config_path);
    }
    if (g.seed_set) cfg.seed = g.seed;
    dataio::validate_config(cfg);
  } catch (const DomainError& e) {
    throw IoError(std::string("unusable generator config: ") + e.what());
  }
  m.config_path = config_path;
  m.seeds = {cfg.seed};
  m.parameters = nlohmann::json::parse(config::synthetic_config_to_json(cfg));
  auto [ds, truth] = dataio::gen_synthetic(cfg);
  ensure_out(g);
  write(g, m, "sellers.csv", dataio::sellers_csv(ds));
  write(g, m, "buyers.csv", dataio::buyers_csv(ds));
  write(g, m, "links.csv", dataio::links_csv(ds));
  write(g, m, "distances.csv", dataio::distances_csv(ds));
  write(g, m, "planted_truth.json", config::planted_truth_to_json(truth));
  write(g, m, "planted_params.json", config::params_to_json(truth.params));
  m.results = {{"sellers", ds.sellers.size()},
               {"buyers", ds.buyers.size()},
               {"links", ds.empirical_links.size()},
               {"planted_iterations", truth.iterations},
               {"planted_converged", truth.converged}};
  std::cout << "wrote " << ds.sellers.size() << " sellers, " << ds.buyers.size() << " buyers, "
            << ds.empirical_links.size() << " links to " << g.out << "\n";
  return 0;
}

int cmd_simulate(const Globals& g, const DataFlags& d, const ModelFlags& mf, const ParamFlags& pf, cli::Manifest& m) {
  const Dataset ds = load(d, m);
  const auto params = pf.resolve();
  if (!pf.path.empty()) m.add_input(pf.path);
  m.config_path = pf.path;
  const auto options = mf.options(g.threads);
  m.parameters["params"] = params_json(params);
  m.parameters["options"] = options_json(options);
  m.seeds = {g.seed};
  const auto report = sim::run(ds, params, g.seed, options);
  ensure_out(g);
  write(g, m, "observation.csv",
        metrics::observation_csv_header() + "\n" +
            metrics::observation_csv_row("simulate", g.seed, report.iterations_used, report.converged,
                                         report.observation) +
            "\n");
  write(g, m, "active_links.csv", active_links_csv(ds, report.active_links));
  write(g, m, "seller_report.csv", seller_report_csv(ds, report.active_links));
  m.results = {{"iterations", report.iterations_used},
               {"converged", report.converged},
               {"cycle_detected", report.cycle_detected},
               {"buyers", ds.buyers.size()},
               {"sellers", ds.sellers.size()},
               {"correct_tradings_p", report.observation.correct_tradings_p}};
  if (!report.converged) spdlog::warn("no convergence after {} iterations", report.iterations_used);
  std::cout << "iterations " << report.iterations_used << (report.converged ? " (converged)" : " (not converged)")
            << ", correct_tradings_p " << report.observation.correct_tradings_p << "\n";
  return 0;
}

int cmd_calibrate(const Globals& g, const DataFlags& d, const ModelFlags& mf, const std::string& ga_path,
                  std::optional<std::size_t> pop, std::optional<std::size_t> gens, std::optional<std::uint64_t> eval_seed,
                  cli::Manifest& m) {
  const Dataset ds = load(d, m);
  calibration::GAConfig cfg;
  if (!ga_path.empty()) {
    cfg = config::load_ga_config(ga_path);
    m.add_input(ga_path);
  } else {
    cfg.model_options = mf.options(1);
  }
  m.config_path = ga_path;
  if (pop) cfg.population_size = *pop;
  if (gens) cfg.generations = *gens;
  if (eval_seed) cfg.eval_seed = *eval_seed;
  if (g.seed_set) cfg.seed = g.seed;
  cfg.threads = g.threads;
  calibration::validate(cfg);
  m.parameters = nlohmann::json::parse(config::ga_config_to_json(cfg));
  m.seeds = {cfg.seed, cfg.eval_seed};
  ensure_out(g);
  const auto result = calibration::ga_run(ds, cfg, [](const calibration::GenerationStats& s) {
    spdlog::info("generation {} best {:.4f} mean {:.4f} worst {:.4f}", s.generation, s.best, s.mean, s.worst);
  });
  write(g, m, "best_params.json", config::best_params_to_json(result));
  write(g, m, "best_params_normalized.json", config::params_to_json(calibration::normalized(result.best)));
  write(g, m, "trace.csv", calibration::trace_csv(result.trace));
  m.results = {{"best_fitness", result.best_fitness}, {"best", params_json(result.best)}};
  std::cout << "best fitness " << result.best_fitness << "\n";
  return 0;
}

int cmd_nullmodels(const Globals& g, const DataFlags& d, const ModelFlags& mf, const ParamFlags& pf,
                   std::size_t n_seeds, cli::Manifest& m) {
  const Dataset ds = load(d, m);
  const auto params = pf.resolve();
  if (!pf.path.empty()) m.add_input(pf.path);
  m.config_path = pf.path;
  auto options = mf.options(1);
  m.parameters["params"] = params_json(params);
  m.parameters["options"] = options_json(options);
  const sim::PreparedModel model(ds, options);
  for (std::size_t i = 0; i < n_seeds; ++i) m.seeds.push_back(g.seed + i);

  std::ostringstream os;
  os << "kind,seed,correct_tradings_p,correct_tradings_n,active_tradings_n,components_n,components_size_mu\n";
  auto row = [&](const std::string& kind, std::uint64_t seed, const metrics::ObservationRecord& o) {
    os << kind << ',' << seed << ',' << csv::format_double(o.correct_tradings_p) << ',' << o.correct_tradings_n
       << ',' << o.active_tradings_n << ',' << o.components_n_active_only << ','
       << csv::format_double(o.components_size_mu) << '\n';
  };
  nlohmann::json means = nlohmann::json::object();
  for (auto kind : nullmodels::kAllKinds) {
    double sum = 0.0;
    for (auto seed : m.seeds) {
      const auto r = nullmodels::run_null(model, kind, seed);
      row(nullmodels::to_string(kind), seed, r.observation);
      sum += r.observation.correct_tradings_p;
    }
    means[nullmodels::to_string(kind)] = n_seeds ? sum / static_cast<double>(n_seeds) : 0.0;
  }
  double sum = 0.0;
  for (auto seed : m.seeds) {
    const auto r = sim::run(model, params, seed);
    row("model", seed, r.observation);
    sum += r.observation.correct_tradings_p;
  }
  means["model"] = n_seeds ? sum / static_cast<double>(n_seeds) : 0.0;
  ensure_out(g);
  write(g, m, "nullmodels.csv", os.str());
  m.results = {{"mean_correct_tradings_p", means}};
  for (auto it = means.begin(); it != means.end(); ++it) std::cout << it.key() << ' ' << it.value() << '\n';
  return 0;
}

int cmd_scenario(const Globals& g, const DataFlags& d, const ModelFlags& mf, const ParamFlags& pf,
                 const std::vector<std::string>& ids, std::size_t replications, cli::Manifest& m) {
  std::vector<scenarios::ScenarioId> wanted = {scenarios::ScenarioId::baseline};
  for (const auto& id : ids) {
    const auto s = scenarios::parse_scenario(id);
    if (std::find(wanted.begin(), wanted.end(), s) == wanted.end()) wanted.push_back(s);
  }
  const Dataset ds = load(d, m);
  const auto params = pf.resolve();
  if (!pf.path.empty()) m.add_input(pf.path);
  m.config_path = pf.path;
  const auto options = mf.options(g.threads);
  m.parameters["params"] = params_json(params);
  m.parameters["options"] = options_json(options);
  m.parameters["replications"] = replications;
  nlohmann::json names = nlohmann::json::array();
  for (auto s : wanted) names.push_back(scenarios::to_string(s));
  m.parameters["scenarios"] = names;
  for (std::size_t r = 0; r < replications; ++r) m.seeds.push_back(g.seed + r);

  std::string reps = scenarios::replications_csv_header() + "\n";
  std::string summary = scenarios::summary_csv_header() + "\n";
  std::size_t failures = 0;
  for (auto id : wanted) {
    const auto result = scenarios::run_scenario(ds, params, {id, replications, g.seed}, options);
    for (const auto& r : result.replications) {
      reps += scenarios::replication_csv_row(r) + "\n";
      if (!r.indicators) {
        ++failures;
        spdlog::warn("scenario {} replication {} failed: {}", scenarios::to_string(id), r.replication, r.error);
      }
    }
    for (const auto& s : result.summary) summary += scenarios::summary_csv_row(s) + "\n";
  }
  ensure_out(g);
  write(g, m, "scenario_replications.csv", reps);
  write(g, m, "scenario_summary.csv", summary);
  m.results = {{"failed_replications", failures}};
  std::cout << summary;
  return 0;
}

int cmd_validate(const DataFlags& d, cli::Manifest& m) {
  const Dataset ds = load(d, m);
  m.results = {{"sellers", ds.sellers.size()}, {"buyers", ds.buyers.size()}, {"links", ds.empirical_links.size()}};
  std::cout << "ok: " << ds.sellers.size() << " sellers, " << ds.buyers.size() << " buyers, "
            << ds.empirical_links.size() << " links\n";
  return 0;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("tradenet");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* lvl = std::getenv("TRADENET_LOG")) spdlog::set_level(spdlog::level::from_str(lvl));
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Trader channel-choice simulator with social peer effects"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->each([&](const std::string&) { g.seed_set = true; });
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output directory");

  DataFlags data;
  ModelFlags model;
  ParamFlags params;

  auto* gen = app.add_subcommand("gen-data", "Generate a synthetic dataset with planted network");
  std::string gen_config;
  gen->add_option("--config", gen_config, "Synthetic config JSON");

  auto* simulate = app.add_subcommand("simulate", "Run the model once");
  add_data_flags(simulate, data);
  add_model_flags(simulate, model);
  add_param_flags(simulate, params);

  auto* calibrate = app.add_subcommand("calibrate", "Fit parameters with the genetic algorithm");
  std::string ga_config;
  std::optional<std::size_t> pop, gens;
  std::optional<std::uint64_t> eval_seed;
  add_data_flags(calibrate, data);
  add_model_flags(calibrate, model);
  calibrate->add_option("--ga-config", ga_config, "GA config JSON");
  calibrate->add_option("--population", pop, "Population size");
  calibrate->add_option("--generations", gens, "Generations");
  calibrate->add_option("--eval-seed", eval_seed, "Seed of every fitness run");

  auto* nulls = app.add_subcommand("nullmodels", "Compare null models with the full model");
  std::size_t n_seeds = 100;
  add_data_flags(nulls, data);
  add_model_flags(nulls, model);
  add_param_flags(nulls, params);
  nulls->add_option("--seeds", n_seeds, "Number of seeds, starting at --seed");

  auto* scen = app.add_subcommand("scenario", "Run policy scenarios");
  std::vector<std::string> scenario_ids;
  std::size_t replications = 20;
  add_data_flags(scen, data);
  add_model_flags(scen, model);
  add_param_flags(scen, params);
  scen->add_option("--scenario", scenario_ids, "A1, A2, B1, B2, C (baseline always runs)");
  scen->add_option("--replications", replications, "Replications per scenario")->check(CLI::PositiveNumber);

  auto* val = app.add_subcommand("validate", "Load and validate a dataset");
  add_data_flags(val, data);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  cli::Manifest manifest;
  manifest.argv.assign(argv, argv + argc);
  const auto start = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    if (gen->parsed()) {
      manifest.command = "gen-data";
      rc = cmd_gen_data(g, gen_config, manifest);
    } else if (simulate->parsed()) {
      manifest.command = "simulate";
      rc = cmd_simulate(g, data, model, params, manifest);
    } else if (calibrate->parsed()) {
      manifest.command = "calibrate";
      rc = cmd_calibrate(g, data, model, ga_config, pop, gens, eval_seed, manifest);
    } else if (nulls->parsed()) {
      manifest.command = "nullmodels";
      rc = cmd_nullmodels(g, data, model, params, n_seeds, manifest);
    } else if (scen->parsed()) {
      manifest.command = "scenario";
      rc = cmd_scenario(g, data, model, params, scenario_ids, replications, manifest);
    } else if (val->parsed()) {
      manifest.command = "validate";
      return cmd_validate(data, manifest);
    }
    manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    csv::write_file_atomic(out_path(g, "manifest.json"), manifest.to_json());
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
