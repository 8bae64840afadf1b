#include "tradenet/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "tradenet/csv.hpp"
#include "tradenet/parallel.hpp"

namespace tradenet::scenarios {

const char* to_string(ScenarioId id) {
  switch (id) {
    case ScenarioId::baseline: return "baseline";
    case ScenarioId::A1: return "A1";
    case ScenarioId::A2: return "A2";
    case ScenarioId::B1: return "B1";
    case ScenarioId::B2: return "B2";
    case ScenarioId::C: return "C";
  }
  return "?";
}

ScenarioId parse_scenario(const std::string& text) {
  for (auto id : kAllScenarios) {
    if (text == to_string(id)) return id;
  }
  throw DomainError("unknown scenario '" + text + "' (baseline|A1|A2|B1|B2|C)");
}

namespace {

void scale_debts(Dataset& ds, double factor) {
  for (auto& s : ds.sellers) {
    for (auto& [buyer, debt] : s.debt_by_buyer) debt *= factor;
  }
}

void raise_to_village_max(Dataset& ds) {
  using Village = std::tuple<std::int64_t, std::int64_t, std::int64_t>;
  std::map<Village, int> best;
  auto key = [](const SellerAgent& s) { return Village{s.district_id, s.subdistrict_id, s.village_id}; };
  for (const auto& s : ds.sellers) {
    auto [it, inserted] = best.emplace(key(s), s.education);
    if (!inserted) it->second = std::max(it->second, s.education);
  }
  for (auto& s : ds.sellers) s.education = best.at(key(s));
}

void lift_lower_transport(Dataset& ds) {
  if (ds.sellers.empty()) return;
  std::vector<double> t;
  t.reserve(ds.sellers.size());
  double sum = 0.0;
  for (const auto& s : ds.sellers) {
    t.push_back(s.transport);
    sum += s.transport;
  }
  const double mean = sum / static_cast<double>(t.size());
  std::sort(t.begin(), t.end());
  const std::size_t n = t.size();
  const double median = n % 2 == 1 ? t[n / 2] : 0.5 * (t[n / 2 - 1] + t[n / 2]);
  for (auto& s : ds.sellers) {
    if (s.transport < median) s.transport = mean;
  }
}

}  // namespace

Dataset apply_scenario(const Dataset& dataset, ScenarioId id) {
  Dataset out = dataset;
  switch (id) {
    case ScenarioId::baseline: break;
    case ScenarioId::A1: scale_debts(out, 0.5); break;
    case ScenarioId::A2: scale_debts(out, 0.0); break;
    case ScenarioId::B1:
      for (auto& s : out.sellers) {
        if (s.education == 1 || s.education == 2) s.education = 3;
      }
      break;
    case ScenarioId::B2: raise_to_village_max(out); break;
    case ScenarioId::C: lift_lower_transport(out); break;
  }
  return out;
}

ScenarioResult run_scenario(const Dataset& dataset, const GlobalParams& params, const ScenarioSpec& spec,
                            const sim::ModelOptions& options) {
  if (spec.replications < 1) throw DomainError("run_scenario: replications must be >= 1");
  const Dataset transformed = apply_scenario(dataset, spec.id);

  sim::ModelOptions inner = options;
  inner.threads = 1;
  const sim::PreparedModel model(transformed, inner);

  ScenarioResult result;
  result.replications.resize(spec.replications);
  parallel_for(spec.replications, options.threads, [&](std::size_t r) {
    auto& rep = result.replications[r];
    rep.scenario = spec.id;
    rep.replication = r;
    rep.seed = spec.base_seed + r;
    try {
      const auto report = sim::run(model, params, rep.seed);
      rep.indicators = metrics::scenario_indicators(model.dataset(), report.active_links);
    } catch (const DomainError& e) {
      rep.error = e.what();
    }
  });

  for (std::size_t k = 0; k < kIndicatorNames.size(); ++k) {
    std::vector<double> values;
    for (const auto& rep : result.replications) {
      if (!rep.indicators) continue;
      const auto& ind = *rep.indicators;
      const double v = k == 0   ? ind.mean_price
                       : k == 1 ? ind.mean_link_length
                       : k == 2 ? static_cast<double>(ind.components_n)
                                : ind.components_size_mu;
      values.push_back(v);
    }
    IndicatorSummary s;
    s.scenario = spec.id;
    s.indicator = kIndicatorNames[k];
    s.n = values.size();
    if (!values.empty()) {
      double sum = 0.0;
      for (double v : values) sum += v;
      s.mean = sum / static_cast<double>(values.size());
      if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
      }
    }
    result.summary.push_back(s);
  }
  return result;
}

std::string replications_csv_header() {
  return "scenario,replication,seed,mean_price,mean_link_length,components_n,components_size_mu";
}

std::string replication_csv_row(const ReplicationResult& r) {
  std::string row = std::string(to_string(r.scenario)) + "," + std::to_string(r.replication) + "," +
                    std::to_string(r.seed) + ",";
  if (!r.indicators) return row + "NA,NA,NA,NA";
  const auto& i = *r.indicators;
  return row + csv::format_double(i.mean_price) + "," + csv::format_double(i.mean_link_length) + "," +
         std::to_string(i.components_n) + "," + csv::format_double(i.components_size_mu);
}

std::string summary_csv_header() { return "scenario,indicator,mean,sd,n"; }

std::string summary_csv_row(const IndicatorSummary& s) {
  return std::string(to_string(s.scenario)) + "," + s.indicator + "," + csv::format_double(s.mean) + "," +
         csv::format_double(s.sd) + "," + std::to_string(s.n);
}

}  // namespace tradenet::scenarios
