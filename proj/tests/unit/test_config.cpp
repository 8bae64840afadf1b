#include <gtest/gtest.h>

#include "tradenet/config.hpp"

using namespace tradenet;
using namespace tradenet::config;

TEST(Config, ParamsRoundTrip) {
  const auto p = reference_params();
  EXPECT_EQ(params_from_json(params_to_json(p)), p);
}

TEST(Config, ParamsPartialAndErrors) {
  const auto p = params_from_json(R"({"schema_version":1,"params":{"w_debts":50}})", reference_params());
  EXPECT_EQ(p.w_debts, 50.0);
  EXPECT_EQ(p.w_price, reference_params().w_price);
  EXPECT_THROW(params_from_json(R"({"params":{}})"), DomainError);
  EXPECT_THROW(params_from_json(R"({"schema_version":2,"params":{}})"), DomainError);
  EXPECT_THROW(params_from_json(R"({"schema_version":1,"params":{"w_bogus":1}})"), DomainError);
  EXPECT_THROW(params_from_json(R"({"schema_version":1,"params":{"w_debts":"x"}})"), DomainError);
  EXPECT_THROW(params_from_json("{not json"), DomainError);
}

TEST(Config, GaRoundTrip) {
  calibration::GAConfig c;
  c.population_size = 50;
  c.generations = 200;
  c.eval_seed = 12345678901234ull;
  c.model_options.scope = sim::NormalizationScope::global;
  const auto back = ga_config_from_json(ga_config_to_json(c));
  EXPECT_EQ(back.population_size, 50u);
  EXPECT_EQ(back.generations, 200u);
  EXPECT_EQ(back.eval_seed, c.eval_seed);
  EXPECT_EQ(back.model_options.scope, sim::NormalizationScope::global);
  EXPECT_THROW(ga_config_from_json(R"({"schema_version":1,"elitism_fraction":1.5})"), DomainError);
  EXPECT_THROW(ga_config_from_json(R"({"schema_version":1,"crossover":"one_point"})"), DomainError);
}

TEST(Config, SyntheticRoundTrip) {
  dataio::SyntheticConfig c;
  c.n_buyers = 8;
  c.seed = 3;
  c.debt_partner = dataio::DebtPartner::nearest;
  const auto text = synthetic_config_to_json(c);
  const auto back = synthetic_config_from_json(text);
  EXPECT_EQ(synthetic_config_to_json(back), text);
  EXPECT_THROW(synthetic_config_from_json(R"({"schema_version":1,"n_villages":1000})"), DomainError);
  EXPECT_THROW(synthetic_config_from_json(R"({"schema_version":1,"colour":"red"})"), DomainError);
}

TEST(Config, BestParamsLoadable) {
  calibration::GAResult r;
  r.best = reference_params();
  r.best_fitness = 0.5;
  EXPECT_EQ(params_from_json(best_params_to_json(r)), reference_params());
}
