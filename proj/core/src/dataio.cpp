#include "tradenet/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "tradenet/csv.hpp"

namespace tradenet::dataio {

namespace fs = std::filesystem;
using csv::format_double;

namespace {

const std::vector<std::string> kSellerColumns = {
    "id",          "village_id", "subdistrict_id",  "district_id",  "gps_s",       "gps_e",  "education",
    "ethnicity",   "transport",  "employees",       "prestigious_job", "active_group", "group_count", "age",
    "house_value", "hh_size",    "hhs_vlg",         "income",       "total_sales"};

std::string where(const csv::Table& t, std::size_t row) { return t.source() + ":" + std::to_string(t.line_of(row)); }

bool parse_flag(const csv::Table& t, std::size_t row, const std::string& col) {
  const auto v = t.integer(row, col);
  if (v != 0 && v != 1) throw DomainError(where(t, row) + ": column '" + col + "' must be 0 or 1");
  return v == 1;
}

int parse_small_int(const csv::Table& t, std::size_t row, const std::string& col) {
  return static_cast<int>(t.integer(row, col));
}

DistanceMatrix load_distances(const std::string& path) {
  const auto text = csv::read_file(path);
  const auto table = csv::Table::parse(text, path);
  const auto& header = table.header();
  if (header.empty() || header[0] != "id") throw DomainError(path + ": first header cell must be 'id'");
  std::vector<AgentId> ids;
  for (std::size_t c = 1; c < header.size(); ++c) {
    try {
      ids.push_back(AgentId{csv::parse_int(header[c])});
    } catch (const DomainError& e) {
      throw DomainError(path + ":1: " + e.what());
    }
  }
  if (table.rows() != ids.size()) {
    throw DomainError(path + ": matrix has " + std::to_string(table.rows()) + " rows for " +
                      std::to_string(ids.size()) + " columns");
  }
  DistanceMatrix m(ids);
  for (std::size_t r = 0; r < table.rows(); ++r) {
    const auto& row = table.row(r);
    AgentId rid{};
    try {
      rid = AgentId{csv::parse_int(row[0])};
    } catch (const DomainError& e) {
      throw DomainError(where(table, r) + ": " + e.what());
    }
    if (rid != ids[r]) throw DomainError(where(table, r) + ": row id " + row[0] + " does not match column order");
    for (std::size_t c = 1; c < row.size(); ++c) {
      double d = 0.0;
      try {
        d = csv::parse_double(row[c]);
      } catch (const DomainError& e) {
        throw DomainError(where(table, r) + ": " + e.what());
      }
      if (!std::isfinite(d) || d < 0.0) throw DomainError(where(table, r) + ": distance must be finite and >= 0");
      m.set_index(r, c - 1, d);
    }
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (m.at_index(i, i) != 0.0) throw DomainError(where(table, i) + ": diagonal entry must be 0");
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(m.at_index(i, j) - m.at_index(j, i)) > 1e-9) {
        throw DomainError(where(table, i) + ": asymmetric matrix at column " + to_string(ids[j]));
      }
    }
  }
  return m;
}

}  // namespace

DatasetPaths DatasetPaths::in_directory(const std::string& dir) {
  DatasetPaths p;
  const fs::path base(dir);
  p.sellers = (base / "sellers.csv").string();
  p.buyers = (base / "buyers.csv").string();
  p.links = (base / "links.csv").string();
  const auto dist = base / "distances.csv";
  if (fs::exists(dist)) p.distances = dist.string();
  return p;
}

Dataset load_dataset(const DatasetPaths& paths) {
  Dataset ds;

  const auto sellers = csv::Table::read(paths.sellers);
  sellers.require_columns(kSellerColumns);
  std::unordered_map<std::int64_t, std::size_t> seller_index;
  for (std::size_t r = 0; r < sellers.rows(); ++r) {
    SellerAgent s;
    s.id = AgentId{sellers.integer(r, "id")};
    s.village_id = sellers.integer(r, "village_id");
    s.subdistrict_id = sellers.integer(r, "subdistrict_id");
    s.district_id = sellers.integer(r, "district_id");
    s.gps_s = sellers.number(r, "gps_s");
    s.gps_e = sellers.number(r, "gps_e");
    s.education = parse_small_int(sellers, r, "education");
    s.ethnicity = parse_small_int(sellers, r, "ethnicity");
    s.transport = sellers.number(r, "transport");
    s.employees = parse_small_int(sellers, r, "employees");
    s.prestigious_job = parse_flag(sellers, r, "prestigious_job");
    s.active_group = parse_flag(sellers, r, "active_group");
    s.group_count = parse_small_int(sellers, r, "group_count");
    s.age = sellers.number(r, "age");
    s.house_value = sellers.number(r, "house_value");
    s.hh_size = sellers.number(r, "hh_size");
    s.hhs_vlg = sellers.number(r, "hhs_vlg");
    s.income = sellers.number(r, "income");
    s.total_sales = sellers.number(r, "total_sales");
    s.n_buyer_empirical = 0;
    if (!seller_index.emplace(s.id.value, ds.sellers.size()).second) {
      throw DomainError(where(sellers, r) + ": duplicate seller id " + to_string(s.id));
    }
    ds.sellers.push_back(std::move(s));
  }

  const auto buyers = csv::Table::read(paths.buyers);
  buyers.require_columns({"id", "price"});
  const bool buyer_coords = buyers.has_column("gps_s") && buyers.has_column("gps_e");
  std::unordered_set<std::int64_t> buyer_ids;
  for (std::size_t r = 0; r < buyers.rows(); ++r) {
    BuyerAgent b;
    b.id = AgentId{buyers.integer(r, "id")};
    b.price = buyers.number(r, "price");
    if (buyer_coords) {
      b.has_location = true;
      b.gps_s = buyers.number(r, "gps_s");
      b.gps_e = buyers.number(r, "gps_e");
    }
    if (!buyer_ids.insert(b.id.value).second) throw DomainError(where(buyers, r) + ": duplicate buyer id " + to_string(b.id));
    if (seller_index.count(b.id.value)) throw DomainError(where(buyers, r) + ": id " + to_string(b.id) + " is also a seller");
    ds.buyers.push_back(b);
  }

  const auto links = csv::Table::read(paths.links);
  links.require_columns({"seller_id", "buyer_id", "debts", "tons"});
  const bool has_observed = links.has_column("observed");
  for (std::size_t r = 0; r < links.rows(); ++r) {
    const AgentId seller{links.integer(r, "seller_id")};
    const AgentId buyer{links.integer(r, "buyer_id")};
    auto it = seller_index.find(seller.value);
    if (it == seller_index.end()) throw DomainError(where(links, r) + ": dangling link, unknown seller " + to_string(seller));
    if (!buyer_ids.count(buyer.value)) throw DomainError(where(links, r) + ": dangling link, unknown buyer " + to_string(buyer));
    const double debts = links.number(r, "debts");
    const double tons = links.number(r, "tons");
    const bool observed = has_observed ? parse_flag(links, r, "observed") : true;
    const LinkKey key{seller, buyer};
    auto& s = ds.sellers[it->second];
    if (s.debt_by_buyer.count(buyer) || ds.empirical_links.count(key)) {
      throw DomainError(where(links, r) + ": duplicate link " + to_string(seller) + "->" + to_string(buyer));
    }
    if (debts != 0.0 || !observed) s.debt_by_buyer[buyer] = debts;
    if (observed) {
      ds.empirical_links.insert(key);
      ds.tons[key] = tons;
      ++s.n_buyer_empirical;
    }
  }

  if (paths.distances) {
    ds.distance = load_distances(*paths.distances);
  } else {
    ds.distance = euclidean_distances(ds.sellers, ds.buyers);
  }

  require_valid(validate(ds), "dataset");
  return ds;
}

std::string sellers_csv(const Dataset& ds) {
  std::vector<const SellerAgent*> order;
  for (const auto& s : ds.sellers) order.push_back(&s);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->id < b->id; });
  std::ostringstream os;
  for (std::size_t c = 0; c < kSellerColumns.size(); ++c) os << (c ? "," : "") << kSellerColumns[c];
  os << '\n';
  for (const auto* s : order) {
    os << s->id.value << ',' << s->village_id << ',' << s->subdistrict_id << ',' << s->district_id << ','
       << format_double(s->gps_s) << ',' << format_double(s->gps_e) << ',' << s->education << ',' << s->ethnicity
       << ',' << format_double(s->transport) << ',' << s->employees << ',' << (s->prestigious_job ? 1 : 0) << ','
       << (s->active_group ? 1 : 0) << ',' << s->group_count << ',' << format_double(s->age) << ','
       << format_double(s->house_value) << ',' << format_double(s->hh_size) << ',' << format_double(s->hhs_vlg)
       << ',' << format_double(s->income) << ',' << format_double(s->total_sales) << '\n';
  }
  return os.str();
}

std::string buyers_csv(const Dataset& ds) {
  std::vector<const BuyerAgent*> order;
  bool coords = !ds.buyers.empty();
  for (const auto& b : ds.buyers) {
    order.push_back(&b);
    coords = coords && b.has_location;
  }
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->id < b->id; });
  std::ostringstream os;
  os << (coords ? "id,price,gps_s,gps_e\n" : "id,price\n");
  for (const auto* b : order) {
    os << b->id.value << ',' << format_double(b->price);
    if (coords) os << ',' << format_double(b->gps_s) << ',' << format_double(b->gps_e);
    os << '\n';
  }
  return os.str();
}

std::string links_csv(const Dataset& ds) {
  struct Row {
    double debts{0.0};
    double tons{0.0};
    bool observed{false};
  };
  std::map<LinkKey, Row> rows;
  for (const auto& key : ds.empirical_links) {
    auto& r = rows[key];
    r.observed = true;
    if (auto it = ds.tons.find(key); it != ds.tons.end()) r.tons = it->second;
  }
  for (const auto& s : ds.sellers) {
    for (const auto& [buyer, debt] : s.debt_by_buyer) {
      const LinkKey key{s.id, buyer};
      if (debt == 0.0 && !ds.empirical_links.count(key)) continue;
      rows[key].debts = debt;
    }
  }
  std::ostringstream os;
  os << "seller_id,buyer_id,debts,tons,observed\n";
  for (const auto& [key, r] : rows) {
    os << key.seller.value << ',' << key.buyer.value << ',' << format_double(r.debts) << ','
       << format_double(r.tons) << ',' << (r.observed ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string distances_csv(const Dataset& ds) {
  const auto& m = ds.distance;
  std::ostringstream os;
  os << "id";
  for (const auto& id : m.ids()) os << ',' << id.value;
  os << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << m.ids()[i].value;
    for (std::size_t j = 0; j < m.size(); ++j) os << ',' << format_double(m.at_index(i, j));
    os << '\n';
  }
  return os.str();
}

void save_dataset(const Dataset& ds, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
  const fs::path base(dir);
  csv::write_file_atomic((base / "sellers.csv").string(), sellers_csv(ds));
  csv::write_file_atomic((base / "buyers.csv").string(), buyers_csv(ds));
  csv::write_file_atomic((base / "links.csv").string(), links_csv(ds));
  csv::write_file_atomic((base / "distances.csv").string(), distances_csv(ds));
}

Dataset reduced_sample(const Dataset& ds) {
  std::map<AgentId, std::size_t> in_degree;
  for (const auto& l : ds.empirical_links) ++in_degree[l.buyer];
  std::set<AgentId> dropped_buyers;
  for (const auto& [buyer, deg] : in_degree) {
    if (deg == 1) dropped_buyers.insert(buyer);
  }

  Dataset out;
  for (const auto& b : ds.buyers) {
    if (!dropped_buyers.count(b.id)) out.buyers.push_back(b);
  }
  if (out.buyers.empty()) throw DomainError("reduced_sample: no buyers left");

  for (const auto& l : ds.empirical_links) {
    if (dropped_buyers.count(l.buyer)) continue;
    out.empirical_links.insert(l);
    if (auto it = ds.tons.find(l); it != ds.tons.end()) out.tons[l] = it->second;
  }
  std::map<AgentId, int> n_links;
  for (const auto& l : out.empirical_links) ++n_links[l.seller];

  for (const auto& s : ds.sellers) {
    auto it = n_links.find(s.id);
    if (it == n_links.end()) continue;
    SellerAgent copy = s;
    copy.n_buyer_empirical = it->second;
    std::erase_if(copy.debt_by_buyer, [&](const auto& kv) { return dropped_buyers.count(kv.first) != 0; });
    out.sellers.push_back(std::move(copy));
  }

  std::vector<AgentId> keep;
  for (const auto& id : ds.distance.ids()) {
    if (n_links.count(id) || (ds.find_buyer(id) && !dropped_buyers.count(id))) keep.push_back(id);
  }
  out.distance = ds.distance.subset(keep);
  require_valid(validate(out), "reduced sample");
  return out;
}

GlobalParams SyntheticConfig::debt_dominant_params() {
  GlobalParams p;
  p.n_social = 3.0;
  p.w_price = 2.0;
  p.w_dist = 10.0;
  p.w_debts = 80.0;
  p.w_social = 8.0;
  p.w_s_education = 4.0;
  p.w_s_ethnicity = 6.0;
  p.w_s_activegroup = 5.0;
  p.w_s_prestigious_job = 1.0;
  p.w_s_proximity = 10.0;
  return p;
}

const char* to_string(DebtPartner p) { return p == DebtPartner::nearest ? "nearest" : "random"; }

DebtPartner parse_debt_partner(const std::string& text) {
  if (text == "nearest") return DebtPartner::nearest;
  if (text == "random") return DebtPartner::random;
  throw DomainError("unknown debt partner rule '" + text + "' (nearest|random)");
}

namespace {

void check_frequencies(const std::vector<double>& f, const std::string& name) {
  if (f.empty()) throw DomainError("config: " + name + " is empty");
  double sum = 0.0;
  for (double v : f) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("config: " + name + " entries must lie in [0,1]");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-3) throw DomainError("config: " + name + " must sum to 1");
}

void check_rate(double v, const std::string& name) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError("config: " + name + " must lie in [0,1]");
}

}  // namespace

void validate_config(const SyntheticConfig& c) {
  if (c.n_sellers < 2) throw DomainError("config: n_sellers must be >= 2");
  if (c.n_buyers < 1) throw DomainError("config: n_buyers must be >= 1");
  if (c.n_villages < 1) throw DomainError("config: n_villages must be >= 1");
  if (c.n_villages > c.n_sellers) throw DomainError("config: more villages than sellers");
  if (c.n_subdistricts < 1 || c.n_subdistricts > c.n_villages) {
    throw DomainError("config: n_subdistricts must lie in 1..n_villages");
  }
  if (c.n_districts < 1 || c.n_districts > c.n_subdistricts) {
    throw DomainError("config: n_districts must lie in 1..n_subdistricts");
  }
  check_frequencies(c.ethnicity_freq, "ethnicity_freq");
  check_frequencies(c.education_freq, "education_freq");
  if (c.education_freq.size() != 6) throw DomainError("config: education_freq needs 6 entries");
  check_frequencies(c.group_count_freq, "group_count_freq");
  if (c.group_count_freq.size() != 4) throw DomainError("config: group_count_freq needs 4 entries");
  check_rate(c.prestigious_job_rate, "prestigious_job_rate");
  check_rate(c.group_activity_rate, "group_activity_rate");
  check_rate(c.debt_zero_inflation, "debt_zero_inflation");
  if (!(c.lat_max > c.lat_min) || !(c.lon_max > c.lon_min)) throw DomainError("config: empty region");
  if (!(c.price_mean > 0.0)) throw DomainError("config: price_mean must be > 0");
  require_valid(validate(c.planted_params), "planted parameters");
}

Dataset draw_population(const SyntheticConfig& c) {
  validate_config(c);
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto gauss = [&](double mean, double sd) { return mean + sd * normal(rng); };

  // Geography: districts -> subdistricts -> villages.
  std::vector<std::pair<double, double>> district_xy(c.n_districts);
  for (auto& xy : district_xy) {
    xy = {c.lat_min + (c.lat_max - c.lat_min) * unit(rng), c.lon_min + (c.lon_max - c.lon_min) * unit(rng)};
  }
  std::vector<std::pair<double, double>> sub_xy(c.n_subdistricts);
  for (std::size_t s = 0; s < c.n_subdistricts; ++s) {
    const auto& d = district_xy[s % c.n_districts];
    sub_xy[s] = {gauss(d.first, c.subdistrict_spread), gauss(d.second, c.subdistrict_spread)};
  }
  std::vector<std::pair<double, double>> village_xy(c.n_villages);
  std::vector<double> village_households(c.n_villages);
  for (std::size_t v = 0; v < c.n_villages; ++v) {
    const auto& s = sub_xy[v % c.n_subdistricts];
    village_xy[v] = {gauss(s.first, c.village_spread), gauss(s.second, c.village_spread)};
    village_households[v] = std::floor(100.0 + 700.0 * unit(rng));
  }

  // Every village gets one seller, the rest are spread uniformly.
  std::vector<std::size_t> village_of(c.n_sellers);
  for (std::size_t i = 0; i < c.n_sellers; ++i) {
    village_of[i] = i < c.n_villages ? i : static_cast<std::size_t>(unit(rng) * static_cast<double>(c.n_villages));
    village_of[i] = std::min(village_of[i], c.n_villages - 1);
  }

  std::discrete_distribution<int> ethnicity(c.ethnicity_freq.begin(), c.ethnicity_freq.end());
  std::discrete_distribution<int> education(c.education_freq.begin(), c.education_freq.end());
  std::discrete_distribution<int> groups(c.group_count_freq.begin(), c.group_count_freq.end());
  std::poisson_distribution<int> household(3.5);

  Dataset ds;
  ds.sellers.reserve(c.n_sellers);
  for (std::size_t i = 0; i < c.n_sellers; ++i) {
    SellerAgent s;
    s.id = AgentId{static_cast<std::int64_t>(i + 1)};
    const std::size_t v = village_of[i];
    const std::size_t sub = v % c.n_subdistricts;
    s.village_id = static_cast<std::int64_t>(v + 1);
    s.subdistrict_id = static_cast<std::int64_t>(sub + 1);
    s.district_id = static_cast<std::int64_t>(sub % c.n_districts + 1);
    s.gps_s = gauss(village_xy[v].first, c.household_spread);
    s.gps_e = gauss(village_xy[v].second, c.household_spread);
    s.ethnicity = ethnicity(rng) + 1;
    s.education = education(rng) + 1;
    s.prestigious_job = unit(rng) < c.prestigious_job_rate;
    s.active_group = unit(rng) < c.group_activity_rate;
    s.group_count = s.active_group ? groups(rng) + 1 : 0;
    s.employees = static_cast<int>(std::lround(std::max(0.0, gauss(c.employees_mean, c.employees_sd))));
    s.transport = std::round(std::max(0.0, gauss(c.transport_mean, c.transport_sd)));
    s.age = std::round(std::max(c.age_min, gauss(c.age_mean, c.age_sd)));
    s.house_value = std::round(std::exp(gauss(c.log_house_value_mean, c.log_house_value_sd)));
    s.hh_size = static_cast<double>(1 + household(rng));
    s.hhs_vlg = village_households[v];
    s.income = std::round(std::exp(gauss(c.log_income_mean, c.log_income_sd)));
    s.total_sales = std::round(std::exp(gauss(c.log_sales_mean, c.log_sales_sd))) + 1.0;
    s.n_buyer_empirical = std::min(sim::predict_n_buyer(s.total_sales), static_cast<int>(c.n_buyers));
    ds.sellers.push_back(std::move(s));
  }

  ds.buyers.reserve(c.n_buyers);
  for (std::size_t j = 0; j < c.n_buyers; ++j) {
    BuyerAgent b;
    b.id = AgentId{static_cast<std::int64_t>(c.n_sellers + j + 1)};
    b.has_location = true;
    b.gps_s = c.lat_min + (c.lat_max - c.lat_min) * unit(rng);
    b.gps_e = c.lon_min + (c.lon_max - c.lon_min) * unit(rng);
    ds.buyers.push_back(b);
  }
  auto planar = [](const SellerAgent& s, const BuyerAgent& b) { return std::hypot(s.gps_s - b.gps_s, s.gps_e - b.gps_e); };

  // Remote buyers pay a premium to attract supply.
  std::vector<double> remoteness(c.n_buyers, 0.0);
  for (std::size_t j = 0; j < c.n_buyers; ++j) {
    for (const auto& s : ds.sellers) remoteness[j] += planar(s, ds.buyers[j]);
  }
  const auto [rmin, rmax] = std::minmax_element(remoteness.begin(), remoteness.end());
  const double rspan = *rmax - *rmin;
  for (std::size_t j = 0; j < c.n_buyers; ++j) {
    const double r = rspan > 0.0 ? (remoteness[j] - *rmin) / rspan : 0.0;
    ds.buyers[j].price = std::max(1.0, std::round(gauss(c.price_mean, c.price_sd) + c.price_remoteness_premium * r));
  }

  for (auto& s : ds.sellers) {
    if (unit(rng) < c.debt_zero_inflation) continue;
    const double amount = std::round(std::exp(gauss(c.log_debt_mean, c.log_debt_sd)));
    std::size_t partner = 0;
    if (c.debt_partner == DebtPartner::random) {
      partner = std::min(c.n_buyers - 1, static_cast<std::size_t>(unit(rng) * static_cast<double>(c.n_buyers)));
    } else {
      for (std::size_t j = 1; j < c.n_buyers; ++j) {
        if (planar(s, ds.buyers[j]) < planar(s, ds.buyers[partner])) partner = j;
      }
    }
    s.debt_by_buyer[ds.buyers[partner].id] = amount;
  }
  return ds;
}

std::pair<Dataset, PlantedTruth> gen_synthetic(const SyntheticConfig& c) {
  Dataset ds = draw_population(c);
  ds.distance = euclidean_distances(ds.sellers, ds.buyers);

  const auto report = sim::run(ds, c.planted_params, c.seed, c.planted_options);
  ds.empirical_links = report.active_links;
  std::unordered_map<AgentId, const SellerAgent*> seller_by_id;
  for (const auto& s : ds.sellers) seller_by_id.emplace(s.id, &s);
  std::unordered_map<AgentId, double> price_by_id;
  for (const auto& b : ds.buyers) price_by_id.emplace(b.id, b.price);
  for (const auto& key : ds.empirical_links) {
    const auto* s = seller_by_id.at(key.seller);
    const double tons = s->total_sales / price_by_id.at(key.buyer) / s->n_buyer_empirical / 1000.0;
    ds.tons[key] = std::round(tons * 1000.0) / 1000.0;
  }
  require_valid(validate(ds), "synthetic dataset");

  PlantedTruth truth;
  truth.params = c.planted_params;
  truth.seed = c.seed;
  truth.iterations = report.iterations_used;
  truth.converged = report.converged;
  truth.links = report.active_links;
  return {std::move(ds), std::move(truth)};
}

}  // namespace tradenet::dataio
