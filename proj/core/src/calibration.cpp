#include "tradenet/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <spdlog/spdlog.h>

#include "tradenet/csv.hpp"
#include "tradenet/parallel.hpp"

namespace tradenet::calibration {

void validate(const GAConfig& c) {
  if (c.population_size < 2) throw DomainError("GA config: population_size must be >= 2");
  if (c.generations < 1) throw DomainError("GA config: generations must be >= 1");
  if (!(c.elitism_fraction >= 0.0 && c.elitism_fraction < 1.0)) {
    throw DomainError("GA config: elitism_fraction must lie in [0,1)");
  }
  if (c.elitism_fraction * static_cast<double>(c.population_size) < 1.0) {
    throw DomainError("GA config: elitism_fraction * population_size must be >= 1");
  }
  if (!(c.mutation_rate > 0.0 && c.mutation_rate < 1.0)) throw DomainError("GA config: mutation_rate must lie in (0,1)");
  if (!(c.mutation_sigma > 0.0) || !std::isfinite(c.mutation_sigma)) {
    throw DomainError("GA config: mutation_sigma must be > 0");
  }
  if (!(c.lower_bound >= 0.0 && c.upper_bound <= 100.0 && c.lower_bound < c.upper_bound)) {
    throw DomainError("GA config: bounds must satisfy 0 <= lower < upper <= 100");
  }
  if (c.replications_per_candidate < 1) throw DomainError("GA config: replications_per_candidate must be >= 1");
}

std::size_t elite_count(const GAConfig& c) {
  return static_cast<std::size_t>(std::floor(c.elitism_fraction * static_cast<double>(c.population_size) + 1e-9));
}

double evaluate(const sim::PreparedModel& model, const GlobalParams& params, std::uint64_t eval_seed,
                std::size_t replications) {
  if (replications < 1) replications = 1;
  double sum = 0.0;
  for (std::size_t r = 0; r < replications; ++r) {
    try {
      sum += sim::run(model, params, eval_seed + r).observation.correct_tradings_p;
    } catch (const DomainError& e) {
      spdlog::debug("evaluate: genome scored 0: {}", e.what());
      return 0.0;
    }
  }
  return sum / static_cast<double>(replications);
}

double evaluate(const Dataset& dataset, const GlobalParams& params, std::uint64_t eval_seed,
                const sim::ModelOptions& options, std::size_t replications) {
  const sim::PreparedModel model(dataset, options);
  return evaluate(model, params, eval_seed, replications);
}

std::vector<double> rank_weights(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<double>(n - i);
  return w;
}

GlobalParams normalized(const GlobalParams& p) {
  GlobalParams out = p;
  const double main = p.w_price + p.w_dist + p.w_debts + p.w_social;
  if (main > 0.0) {
    out.w_price = 100.0 * p.w_price / main;
    out.w_dist = 100.0 * p.w_dist / main;
    out.w_debts = 100.0 * p.w_debts / main;
    out.w_social = 100.0 * p.w_social / main;
  }
  const double social =
      p.w_s_education + p.w_s_ethnicity + p.w_s_activegroup + p.w_s_prestigious_job + p.w_s_proximity;
  if (social > 0.0) {
    out.w_s_education = 100.0 * p.w_s_education / social;
    out.w_s_ethnicity = 100.0 * p.w_s_ethnicity / social;
    out.w_s_activegroup = 100.0 * p.w_s_activegroup / social;
    out.w_s_prestigious_job = 100.0 * p.w_s_prestigious_job / social;
    out.w_s_proximity = 100.0 * p.w_s_proximity / social;
  }
  return out;
}

namespace {

struct Candidate {
  Genome genome{};
  double fitness{0.0};
  bool evaluated{false};
};

void evaluate_all(const sim::PreparedModel& model, const GAConfig& c, std::vector<Candidate>& pop) {
  parallel_for(pop.size(), c.threads, [&](std::size_t i) {
    auto& cand = pop[i];
    if (cand.evaluated) return;
    cand.fitness = evaluate(model, GlobalParams::from_array(cand.genome), c.eval_seed, c.replications_per_candidate);
    cand.evaluated = true;
  });
}

// Best first; ties keep the earlier index.
void rank(std::vector<Candidate>& pop) {
  std::stable_sort(pop.begin(), pop.end(), [](const Candidate& a, const Candidate& b) { return a.fitness > b.fitness; });
}

GenerationStats stats_of(std::size_t generation, const std::vector<Candidate>& ranked) {
  GenerationStats s;
  s.generation = generation;
  s.best = ranked.front().fitness;
  s.worst = ranked.back().fitness;
  double sum = 0.0;
  for (const auto& c : ranked) sum += c.fitness;
  s.mean = sum / static_cast<double>(ranked.size());
  s.best_genome = ranked.front().genome;
  return s;
}

}  // namespace

GAResult ga_run(const sim::PreparedModel& model, const GAConfig& config, const GenerationCallback& on_generation) {
  validate(config);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> init(config.lower_bound, config.upper_bound);

  std::vector<Candidate> pop(config.population_size);
  for (auto& c : pop) {
    for (auto& x : c.genome) x = init(rng);
  }
  evaluate_all(model, config, pop);
  rank(pop);

  GAResult result;
  auto record = [&](std::size_t g) {
    const auto s = stats_of(g, pop);
    result.trace.generations.push_back(s);
    if (on_generation) on_generation(s);
  };
  record(0);

  const std::size_t n_elite = elite_count(config);
  const auto weights = rank_weights(pop.size());
  for (std::size_t g = 1; g < config.generations; ++g) {
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::vector<Candidate> next(pop.begin(), pop.begin() + static_cast<std::ptrdiff_t>(n_elite));
    next.reserve(pop.size());
    while (next.size() < pop.size()) {
      const auto& a = pop[pick(rng)];
      const auto& b = pop[pick(rng)];
      Candidate child;
      child.genome = uniform_crossover(a.genome, b.genome, rng);
      gaussian_mutation(child.genome, config.mutation_rate, config.mutation_sigma, config.lower_bound,
                        config.upper_bound, rng);
      next.push_back(child);
    }
    evaluate_all(model, config, next);
    pop = std::move(next);
    rank(pop);
    record(g);
  }

  result.best = GlobalParams::from_array(pop.front().genome);
  result.best_fitness = pop.front().fitness;
  return result;
}

GAResult ga_run(const Dataset& dataset, const GAConfig& config, const GenerationCallback& on_generation) {
  validate(config);
  sim::ModelOptions options = config.model_options;
  options.threads = 1;
  const sim::PreparedModel model(dataset, options);
  return ga_run(model, config, on_generation);
}

std::string trace_csv_header() {
  std::string h = "generation,best,mean,worst";
  for (const auto* n : GlobalParams::names()) h += std::string(",") + n;
  return h;
}

std::string trace_csv(const FitnessTrace& trace) {
  std::ostringstream os;
  os << trace_csv_header() << '\n';
  for (const auto& s : trace.generations) {
    os << s.generation << ',' << csv::format_double(s.best) << ',' << csv::format_double(s.mean) << ','
       << csv::format_double(s.worst);
    for (double x : s.best_genome) os << ',' << csv::format_double(x);
    os << '\n';
  }
  return os.str();
}

}  // namespace tradenet::calibration
