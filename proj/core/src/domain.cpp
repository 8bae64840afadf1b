#include "tradenet/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace tradenet {

std::string to_string(AgentId id) { return std::to_string(id.value); }

const std::array<const char*, GlobalParams::kSize>& GlobalParams::names() {
  static const std::array<const char*, kSize> kNames = {
      "n_social",      "w_price",         "w_dist",          "w_debts",
      "w_social",      "w_s_education",   "w_s_ethnicity",   "w_s_activegroup",
      "w_s_prestigious_job", "w_s_proximity"};
  return kNames;
}

std::array<double, GlobalParams::kSize> GlobalParams::to_array() const {
  return {n_social,      w_price,         w_dist,          w_debts,
          w_social,      w_s_education,   w_s_ethnicity,   w_s_activegroup,
          w_s_prestigious_job, w_s_proximity};
}

GlobalParams GlobalParams::from_array(const std::array<double, kSize>& g) {
  GlobalParams p;
  p.n_social = g[0];
  p.w_price = g[1];
  p.w_dist = g[2];
  p.w_debts = g[3];
  p.w_social = g[4];
  p.w_s_education = g[5];
  p.w_s_ethnicity = g[6];
  p.w_s_activegroup = g[7];
  p.w_s_prestigious_job = g[8];
  p.w_s_proximity = g[9];
  return p;
}

int GlobalParams::social_capacity() const {
  if (!(n_social > 0.0)) return 0;
  return static_cast<int>(std::floor(n_social + 0.5));
}

GlobalParams reference_params() {
  GlobalParams p;
  p.n_social = 1.61;
  p.w_price = 3.30;
  p.w_dist = 12.12;
  p.w_debts = 64.07;
  p.w_social = 20.52;
  p.w_s_education = 5.96;
  p.w_s_ethnicity = 9.12;
  p.w_s_activegroup = 9.91;
  p.w_s_prestigious_job = 0.01;
  p.w_s_proximity = 75.01;
  return p;
}

DistanceMatrix::DistanceMatrix(std::vector<AgentId> ids)
    : ids_(std::move(ids)), data_(ids_.size() * ids_.size(), 0.0) {
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i].value, i).second) {
      throw DomainError("distance matrix: duplicate id " + to_string(ids_[i]));
    }
  }
}

std::size_t DistanceMatrix::index_of(AgentId id) const {
  auto it = index_.find(id.value);
  if (it == index_.end()) throw DomainError("distance matrix: unknown id " + to_string(id));
  return it->second;
}

double DistanceMatrix::at(AgentId a, AgentId b) const { return at_index(index_of(a), index_of(b)); }

void DistanceMatrix::set(AgentId a, AgentId b, double d) { set_index(index_of(a), index_of(b), d); }

DistanceMatrix DistanceMatrix::subset(const std::vector<AgentId>& keep) const {
  DistanceMatrix out(keep);
  std::vector<std::size_t> src;
  src.reserve(keep.size());
  for (AgentId id : keep) src.push_back(index_of(id));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = 0; j < keep.size(); ++j) out.set_index(i, j, at_index(src[i], src[j]));
  }
  return out;
}

const SellerAgent* Dataset::find_seller(AgentId id) const {
  auto it = std::find_if(sellers.begin(), sellers.end(), [&](const SellerAgent& s) { return s.id == id; });
  return it == sellers.end() ? nullptr : &*it;
}

const BuyerAgent* Dataset::find_buyer(AgentId id) const {
  auto it = std::find_if(buyers.begin(), buyers.end(), [&](const BuyerAgent& b) { return b.id == id; });
  return it == buyers.end() ? nullptr : &*it;
}

DistanceMatrix euclidean_distances(const std::vector<SellerAgent>& sellers,
                                   const std::vector<BuyerAgent>& buyers) {
  std::vector<AgentId> ids;
  std::vector<std::pair<double, double>> xy;
  for (const auto& s : sellers) {
    ids.push_back(s.id);
    xy.emplace_back(s.gps_s, s.gps_e);
  }
  for (const auto& b : buyers) {
    if (!b.has_location) {
      throw DomainError("buyer " + to_string(b.id) + " has no coordinates; a distance matrix is required");
    }
    ids.push_back(b.id);
    xy.emplace_back(b.gps_s, b.gps_e);
  }
  DistanceMatrix m(std::move(ids));
  for (std::size_t i = 0; i < xy.size(); ++i) {
    for (std::size_t j = i + 1; j < xy.size(); ++j) {
      double d = std::hypot(xy[i].first - xy[j].first, xy[i].second - xy[j].second);
      m.set_index(i, j, d);
      m.set_index(j, i, d);
    }
  }
  return m;
}

std::string to_string(const Violation& v) { return v.subject + " [" + v.field + "]: " + v.message; }

namespace {

struct Reporter {
  ValidationReport report;

  void add(std::string subject, std::string field, std::string message) {
    report.push_back({std::move(subject), std::move(field), std::move(message)});
  }

  void check(bool ok, const std::string& subject, const std::string& field, const std::string& message) {
    if (!ok) add(subject, field, message);
  }
};

bool in_unit_pref(double p) { return std::isfinite(p) && p >= 1.0 && p <= 2.0; }

}  // namespace

ValidationReport validate(const Dataset& ds) {
  Reporter r;
  std::unordered_set<std::int64_t> seller_ids;
  std::unordered_set<std::int64_t> buyer_ids;

  for (const auto& s : ds.sellers) {
    const std::string who = "seller " + to_string(s.id);
    r.check(seller_ids.insert(s.id.value).second, who, "id", "duplicate seller id");
    r.check(s.education >= 1 && s.education <= 6, who, "education", "must be in 1..6");
    r.check(s.group_count >= 0 && s.group_count <= 4, who, "group_count", "must be in 0..4");
    r.check(std::isfinite(s.transport) && s.transport >= 0.0, who, "transport", "must be finite and >= 0");
    r.check(s.employees >= 0, who, "employees", "must be >= 0");
    r.check(std::isfinite(s.age) && s.age > 0.0, who, "age", "must be > 0");
    r.check(std::isfinite(s.house_value) && s.house_value > 0.0, who, "house_value", "must be > 0");
    r.check(std::isfinite(s.total_sales) && s.total_sales > 0.0, who, "total_sales", "must be > 0");
    r.check(std::isfinite(s.gps_s) && std::isfinite(s.gps_e), who, "gps", "coordinates must be finite");
    r.check(s.n_buyer_empirical >= 1, who, "n_buyer_empirical", "must be >= 1");
    r.check(in_unit_pref(s.pref.price) && in_unit_pref(s.pref.dist) && in_unit_pref(s.pref.debts) &&
                in_unit_pref(s.pref.social),
            who, "pref", "weight preferences must lie in [1,2]");
    for (const auto& [buyer, debt] : s.debt_by_buyer) {
      r.check(std::isfinite(debt) && debt >= 0.0, who, "debts",
              "debt with buyer " + to_string(buyer) + " must be finite and >= 0");
    }
  }

  for (const auto& b : ds.buyers) {
    const std::string who = "buyer " + to_string(b.id);
    r.check(buyer_ids.insert(b.id.value).second, who, "id", "duplicate buyer id");
    r.check(std::isfinite(b.price) && b.price > 0.0, who, "price", "must be > 0");
    r.check(seller_ids.count(b.id.value) == 0, who, "id", "id also used by a seller");
  }

  for (const auto& s : ds.sellers) {
    for (const auto& [buyer, debt] : s.debt_by_buyer) {
      r.check(buyer_ids.count(buyer.value) != 0, "seller " + to_string(s.id), "debts",
              "dangling debt to unknown buyer " + to_string(buyer));
    }
  }

  for (const auto& link : ds.empirical_links) {
    const std::string who = "link " + to_string(link.seller) + "->" + to_string(link.buyer);
    r.check(seller_ids.count(link.seller.value) != 0, who, "seller_id", "dangling link: unknown seller");
    r.check(buyer_ids.count(link.buyer.value) != 0, who, "buyer_id", "dangling link: unknown buyer");
  }

  const auto& m = ds.distance;
  for (const auto& s : ds.sellers) {
    r.check(m.contains(s.id), "seller " + to_string(s.id), "distance", "missing from distance matrix");
  }
  for (const auto& b : ds.buyers) {
    r.check(m.contains(b.id), "buyer " + to_string(b.id), "distance", "missing from distance matrix");
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::string who = "distance row " + to_string(m.ids()[i]);
    if (m.at_index(i, i) != 0.0) r.add(who, "diagonal", "must be zero");
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      double a = m.at_index(i, j);
      double b = m.at_index(j, i);
      if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0) {
        r.add(who, "value", "entry for " + to_string(m.ids()[j]) + " must be finite and >= 0");
      } else if (std::abs(a - b) > 1e-9) {
        r.add(who, "symmetry", "asymmetric entry for " + to_string(m.ids()[j]));
      }
    }
  }
  return r.report;
}

ValidationReport validate(const GlobalParams& p) {
  Reporter r;
  const auto values = p.to_array();
  const auto& names = GlobalParams::names();
  for (std::size_t i = 0; i < values.size(); ++i) {
    r.check(std::isfinite(values[i]) && values[i] >= 0.0 && values[i] <= 100.0, "params", names[i],
            "must lie in [0,100]");
  }
  r.check(p.w_price > 0.0 || p.w_dist > 0.0 || p.w_debts > 0.0 || p.w_social > 0.0, "params", "w_*",
          "at least one main weight must be > 0");
  const double social_sum =
      p.w_s_education + p.w_s_ethnicity + p.w_s_activegroup + p.w_s_prestigious_job + p.w_s_proximity;
  r.check(!(p.w_social > 0.0) || social_sum > 0.0, "params", "w_s_*",
          "at least one social sub-weight must be > 0 when w_social > 0");
  return r.report;
}

void require_valid(const ValidationReport& report, const std::string& what) {
  if (report.empty()) return;
  std::ostringstream os;
  os << what << ": " << report.size() << " violation(s)";
  for (const auto& v : report) os << "\n  " << to_string(v);
  throw DomainError(os.str());
}

}  // namespace tradenet
