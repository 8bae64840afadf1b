#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tradenet/domain.hpp"
#include "tradenet/simulation.hpp"

namespace tradenet::calibration {

using Genome = std::array<double, GlobalParams::kSize>;

struct GAConfig {
  std::size_t population_size{100};
  std::size_t generations{1000};
  double elitism_fraction{0.2};
  double mutation_rate{0.1};
  double mutation_sigma{10.0};
  double lower_bound{0.0};
  double upper_bound{100.0};
  std::uint64_t eval_seed{0};
  std::size_t replications_per_candidate{1};
  /// Seeds initialization, selection, crossover and mutation.
  std::uint64_t seed{1};
  unsigned threads{1};
  sim::ModelOptions model_options{};
};

/// Throws DomainError when a field is out of range.
void validate(const GAConfig& config);

std::size_t elite_count(const GAConfig& config);

struct GenerationStats {
  std::size_t generation{0};
  double best{0.0};
  double mean{0.0};
  double worst{0.0};
  Genome best_genome{};
};

struct FitnessTrace {
  std::vector<GenerationStats> generations;
};

struct GAResult {
  GlobalParams best;
  double best_fitness{0.0};
  FitnessTrace trace;
};

/// correct_tradings_p of one run, averaged over `replications` seeds starting
/// at `eval_seed`. Invalid genomes and simulation errors score 0.
double evaluate(const sim::PreparedModel& model, const GlobalParams& params, std::uint64_t eval_seed,
                std::size_t replications = 1);
double evaluate(const Dataset& dataset, const GlobalParams& params, std::uint64_t eval_seed,
                const sim::ModelOptions& options = {}, std::size_t replications = 1);

/// Called after each generation; useful for progress output.
using GenerationCallback = std::function<void(const GenerationStats&)>;

/// Generation 0 is the random initial population; each later generation keeps
/// the elites and fills the rest with mutated uniform-crossover children of
/// rank-selected parents.
GAResult ga_run(const sim::PreparedModel& model, const GAConfig& config, const GenerationCallback& on_generation = {});
GAResult ga_run(const Dataset& dataset, const GAConfig& config, const GenerationCallback& on_generation = {});

// Operators, exposed for testing.

/// Selection probabilities for a population sorted best-first: linear in rank,
/// best gets n, worst gets 1.
std::vector<double> rank_weights(std::size_t n);

template <class Rng>
Genome uniform_crossover(const Genome& a, const Genome& b, Rng& rng);

template <class Rng>
void gaussian_mutation(Genome& g, double rate, double sigma, double lo, double hi, Rng& rng);

/// Main weights scaled to sum 100 and social sub-weights scaled to sum 100;
/// n_social is left as is. Groups summing to 0 stay 0.
GlobalParams normalized(const GlobalParams& params);

std::string trace_csv_header();
std::string trace_csv(const FitnessTrace& trace);

}  // namespace tradenet::calibration

#include <random>

namespace tradenet::calibration {

template <class Rng>
Genome uniform_crossover(const Genome& a, const Genome& b, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  Genome child{};
  for (std::size_t i = 0; i < child.size(); ++i) child[i] = coin(rng) ? a[i] : b[i];
  return child;
}

template <class Rng>
void gaussian_mutation(Genome& g, double rate, double sigma, double lo, double hi, Rng& rng) {
  std::bernoulli_distribution hit(rate);
  std::normal_distribution<double> noise(0.0, sigma);
  for (auto& x : g) {
    if (hit(rng)) x += noise(rng);
    if (x < lo) x = lo;
    if (x > hi) x = hi;
  }
}

}  // namespace tradenet::calibration
