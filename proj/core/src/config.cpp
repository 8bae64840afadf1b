#include "tradenet/config.hpp"

#include <json.hpp>

#include "tradenet/csv.hpp"

namespace tradenet::config {

using nlohmann::json;

namespace {

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string(what) + ": invalid JSON: " + e.what());
  }
}

void check_schema(const json& j, const char* what) {
  if (!j.is_object()) throw DomainError(std::string(what) + ": top level must be an object");
  if (!j.contains("schema_version")) throw DomainError(std::string(what) + ": missing schema_version");
  if (j.at("schema_version") != kSchemaVersion) {
    throw DomainError(std::string(what) + ": unsupported schema_version " + j.at("schema_version").dump());
  }
}

template <class T>
void read(const json& obj, const char* key, T& out, const char* what) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw DomainError(std::string(what) + ": field '" + key + "': " + e.what());
  }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const char* what) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw DomainError(std::string(what) + ": unknown field '" + it.key() + "'");
  }
}

json params_json(const GlobalParams& p) {
  json j = json::object();
  const auto values = p.to_array();
  const auto& names = GlobalParams::names();
  for (std::size_t i = 0; i < values.size(); ++i) j[names[i]] = values[i];
  return j;
}

GlobalParams params_from(const json& obj, const GlobalParams& base, const char* what) {
  if (!obj.is_object()) throw DomainError(std::string(what) + ": params must be an object");
  auto values = base.to_array();
  const auto& names = GlobalParams::names();
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    std::size_t k = names.size();
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (it.key() == names[i]) k = i;
    }
    if (k == names.size()) throw DomainError(std::string(what) + ": unknown parameter '" + it.key() + "'");
    if (!it->is_number()) throw DomainError(std::string(what) + ": parameter '" + it.key() + "' must be a number");
    values[k] = it->get<double>();
  }
  return GlobalParams::from_array(values);
}

json options_json(const sim::ModelOptions& o) {
  return {{"n_buyer_mode", sim::to_string(o.n_buyer_mode)},
          {"scope", sim::to_string(o.scope)},
          {"social_signal", sim::to_string(o.social_signal)},
          {"max_iter", o.max_iter},
          {"stop_on_cycle", o.stop_on_cycle}};
}

sim::ModelOptions options_from(const json& obj, const char* what) {
  sim::ModelOptions o;
  if (!obj.is_object()) throw DomainError(std::string(what) + ": model options must be an object");
  reject_unknown(obj, {"n_buyer_mode", "scope", "social_signal", "max_iter", "stop_on_cycle"}, what);
  std::string s;
  if (obj.contains("n_buyer_mode")) {
    read(obj, "n_buyer_mode", s, what);
    o.n_buyer_mode = sim::parse_n_buyer_mode(s);
  }
  if (obj.contains("scope")) {
    read(obj, "scope", s, what);
    o.scope = sim::parse_scope(s);
  }
  if (obj.contains("social_signal")) {
    read(obj, "social_signal", s, what);
    o.social_signal = sim::parse_social_signal(s);
  }
  read(obj, "max_iter", o.max_iter, what);
  read(obj, "stop_on_cycle", o.stop_on_cycle, what);
  return o;
}

}  // namespace

GlobalParams params_from_json(const std::string& text, const GlobalParams& base) {
  const auto j = parse(text, "params");
  check_schema(j, "params");
  if (!j.contains("params")) throw DomainError("params: missing 'params' object");
  return params_from(j.at("params"), base, "params");
}

std::string params_to_json(const GlobalParams& params) {
  json j = {{"schema_version", kSchemaVersion}, {"params", params_json(params)}};
  return j.dump(2) + "\n";
}

GlobalParams load_params(const std::string& path) { return params_from_json(csv::read_file(path)); }

calibration::GAConfig ga_config_from_json(const std::string& text) {
  const char* what = "GA config";
  const auto j = parse(text, what);
  check_schema(j, what);
  reject_unknown(j,
                 {"schema_version", "population_size", "generations", "elitism_fraction", "mutation_rate",
                  "mutation_sigma", "lower_bound", "upper_bound", "eval_seed", "replications_per_candidate", "seed",
                  "crossover", "model_options"},
                 what);
  calibration::GAConfig c;
  read(j, "population_size", c.population_size, what);
  read(j, "generations", c.generations, what);
  read(j, "elitism_fraction", c.elitism_fraction, what);
  read(j, "mutation_rate", c.mutation_rate, what);
  read(j, "mutation_sigma", c.mutation_sigma, what);
  read(j, "lower_bound", c.lower_bound, what);
  read(j, "upper_bound", c.upper_bound, what);
  read(j, "eval_seed", c.eval_seed, what);
  read(j, "replications_per_candidate", c.replications_per_candidate, what);
  read(j, "seed", c.seed, what);
  if (j.contains("crossover") && j.at("crossover") != "uniform") {
    throw DomainError("GA config: only uniform crossover is supported");
  }
  if (j.contains("model_options")) c.model_options = options_from(j.at("model_options"), what);
  calibration::validate(c);
  return c;
}

std::string ga_config_to_json(const calibration::GAConfig& c) {
  json j = {{"schema_version", kSchemaVersion},
            {"population_size", c.population_size},
            {"generations", c.generations},
            {"elitism_fraction", c.elitism_fraction},
            {"mutation_rate", c.mutation_rate},
            {"mutation_sigma", c.mutation_sigma},
            {"lower_bound", c.lower_bound},
            {"upper_bound", c.upper_bound},
            {"eval_seed", c.eval_seed},
            {"replications_per_candidate", c.replications_per_candidate},
            {"seed", c.seed},
            {"crossover", "uniform"},
            {"model_options", options_json(c.model_options)}};
  return j.dump(2) + "\n";
}

calibration::GAConfig load_ga_config(const std::string& path) { return ga_config_from_json(csv::read_file(path)); }

dataio::SyntheticConfig synthetic_config_from_json(const std::string& text) {
  const char* what = "synthetic config";
  const auto j = parse(text, what);
  check_schema(j, what);
  dataio::SyntheticConfig c;
  reject_unknown(j,
                 {"schema_version", "n_sellers", "n_buyers", "n_villages", "n_subdistricts", "n_districts", "seed",
                  "ethnicity_freq", "education_freq", "prestigious_job_rate", "group_activity_rate",
                  "group_count_freq", "employees_mean", "employees_sd", "transport_mean", "transport_sd", "age_mean",
                  "age_sd", "age_min", "log_house_value_mean", "log_house_value_sd", "log_income_mean",
                  "log_income_sd", "log_sales_mean", "log_sales_sd", "debt_zero_inflation", "log_debt_mean",
                  "log_debt_sd", "debt_partner", "price_mean", "price_sd", "price_remoteness_premium", "lat_min",
                  "lat_max", "lon_min", "lon_max", "subdistrict_spread", "village_spread", "household_spread",
                  "planted_params", "planted_options"},
                 what);
  read(j, "n_sellers", c.n_sellers, what);
  read(j, "n_buyers", c.n_buyers, what);
  read(j, "n_villages", c.n_villages, what);
  read(j, "n_subdistricts", c.n_subdistricts, what);
  read(j, "n_districts", c.n_districts, what);
  read(j, "seed", c.seed, what);
  read(j, "ethnicity_freq", c.ethnicity_freq, what);
  read(j, "education_freq", c.education_freq, what);
  read(j, "prestigious_job_rate", c.prestigious_job_rate, what);
  read(j, "group_activity_rate", c.group_activity_rate, what);
  read(j, "group_count_freq", c.group_count_freq, what);
  read(j, "employees_mean", c.employees_mean, what);
  read(j, "employees_sd", c.employees_sd, what);
  read(j, "transport_mean", c.transport_mean, what);
  read(j, "transport_sd", c.transport_sd, what);
  read(j, "age_mean", c.age_mean, what);
  read(j, "age_sd", c.age_sd, what);
  read(j, "age_min", c.age_min, what);
  read(j, "log_house_value_mean", c.log_house_value_mean, what);
  read(j, "log_house_value_sd", c.log_house_value_sd, what);
  read(j, "log_income_mean", c.log_income_mean, what);
  read(j, "log_income_sd", c.log_income_sd, what);
  read(j, "log_sales_mean", c.log_sales_mean, what);
  read(j, "log_sales_sd", c.log_sales_sd, what);
  read(j, "debt_zero_inflation", c.debt_zero_inflation, what);
  read(j, "log_debt_mean", c.log_debt_mean, what);
  read(j, "log_debt_sd", c.log_debt_sd, what);
  if (j.contains("debt_partner")) {
    std::string s;
    read(j, "debt_partner", s, what);
    c.debt_partner = dataio::parse_debt_partner(s);
  }
  read(j, "price_mean", c.price_mean, what);
  read(j, "price_sd", c.price_sd, what);
  read(j, "price_remoteness_premium", c.price_remoteness_premium, what);
  read(j, "lat_min", c.lat_min, what);
  read(j, "lat_max", c.lat_max, what);
  read(j, "lon_min", c.lon_min, what);
  read(j, "lon_max", c.lon_max, what);
  read(j, "subdistrict_spread", c.subdistrict_spread, what);
  read(j, "village_spread", c.village_spread, what);
  read(j, "household_spread", c.household_spread, what);
  if (j.contains("planted_params")) c.planted_params = params_from(j.at("planted_params"), c.planted_params, what);
  if (j.contains("planted_options")) c.planted_options = options_from(j.at("planted_options"), what);
  dataio::validate_config(c);
  return c;
}

std::string synthetic_config_to_json(const dataio::SyntheticConfig& c) {
  json j = {{"schema_version", kSchemaVersion},
            {"n_sellers", c.n_sellers},
            {"n_buyers", c.n_buyers},
            {"n_villages", c.n_villages},
            {"n_subdistricts", c.n_subdistricts},
            {"n_districts", c.n_districts},
            {"seed", c.seed},
            {"ethnicity_freq", c.ethnicity_freq},
            {"education_freq", c.education_freq},
            {"prestigious_job_rate", c.prestigious_job_rate},
            {"group_activity_rate", c.group_activity_rate},
            {"group_count_freq", c.group_count_freq},
            {"employees_mean", c.employees_mean},
            {"employees_sd", c.employees_sd},
            {"transport_mean", c.transport_mean},
            {"transport_sd", c.transport_sd},
            {"age_mean", c.age_mean},
            {"age_sd", c.age_sd},
            {"age_min", c.age_min},
            {"log_house_value_mean", c.log_house_value_mean},
            {"log_house_value_sd", c.log_house_value_sd},
            {"log_income_mean", c.log_income_mean},
            {"log_income_sd", c.log_income_sd},
            {"log_sales_mean", c.log_sales_mean},
            {"log_sales_sd", c.log_sales_sd},
            {"debt_zero_inflation", c.debt_zero_inflation},
            {"log_debt_mean", c.log_debt_mean},
            {"log_debt_sd", c.log_debt_sd},
            {"debt_partner", dataio::to_string(c.debt_partner)},
            {"price_mean", c.price_mean},
            {"price_sd", c.price_sd},
            {"price_remoteness_premium", c.price_remoteness_premium},
            {"lat_min", c.lat_min},
            {"lat_max", c.lat_max},
            {"lon_min", c.lon_min},
            {"lon_max", c.lon_max},
            {"subdistrict_spread", c.subdistrict_spread},
            {"village_spread", c.village_spread},
            {"household_spread", c.household_spread},
            {"planted_params", params_json(c.planted_params)},
            {"planted_options", options_json(c.planted_options)}};
  return j.dump(2) + "\n";
}

dataio::SyntheticConfig load_synthetic_config(const std::string& path) {
  return synthetic_config_from_json(csv::read_file(path));
}

std::string planted_truth_to_json(const dataio::PlantedTruth& t) {
  json links = json::array();
  for (const auto& l : t.links) links.push_back({l.seller.value, l.buyer.value});
  json j = {{"schema_version", kSchemaVersion},
            {"params", params_json(t.params)},
            {"seed", t.seed},
            {"iterations", t.iterations},
            {"converged", t.converged},
            {"links", links}};
  return j.dump(2) + "\n";
}

std::string best_params_to_json(const calibration::GAResult& r) {
  json j = {{"schema_version", kSchemaVersion},
            {"params", params_json(r.best)},
            {"normalized", params_json(calibration::normalized(r.best))},
            {"fitness", r.best_fitness},
            {"generations", r.trace.generations.size()}};
  return j.dump(2) + "\n";
}

}  // namespace tradenet::config
