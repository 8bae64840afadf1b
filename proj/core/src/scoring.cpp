#include "tradenet/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tradenet::scoring {

namespace {

// Maps raw values onto [1,2]; constant input maps to 1.
void map_to_preference(std::span<const double> raw, auto&& assign) {
  const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  const double min = *lo;
  const double span = *hi - *lo;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    assign(i, span > 0.0 ? 1.0 + (raw[i] - min) / span : 1.0);
  }
}

}  // namespace

std::vector<SellerAgent> compute_preferences(std::vector<SellerAgent> sellers) {
  if (sellers.empty()) throw DomainError("compute_preferences: empty population");

  double eps = std::numeric_limits<double>::infinity();
  for (const auto& s : sellers) {
    if (!(s.age > 0.0) || !(s.house_value > 0.0)) {
      throw DomainError("compute_preferences: seller " + to_string(s.id) + " needs age > 0 and house_value > 0");
    }
    if (s.transport > 0.0) eps = std::min(eps, s.transport);
  }
  if (!std::isfinite(eps)) eps = 1.0;

  const std::size_t n = sellers.size();
  std::vector<double> r_dist(n), r_price(n), r_age(n);
  for (std::size_t i = 0; i < n; ++i) {
    r_dist[i] = 1.0 / std::max(sellers[i].transport, eps);
    r_price[i] = 1.0 / sellers[i].house_value;
    r_age[i] = 1.0 / sellers[i].age;
  }
  map_to_preference(r_dist, [&](std::size_t i, double p) { sellers[i].pref.dist = p; });
  map_to_preference(r_price, [&](std::size_t i, double p) { sellers[i].pref.price = p; });
  map_to_preference(r_age, [&](std::size_t i, double p) {
    sellers[i].pref.debts = p;
    sellers[i].pref.social = p;
  });
  return sellers;
}

void normalize_subscores_into(std::span<const double> values, bool inverted, std::span<double> out) {
  if (values.empty()) throw DomainError("normalize_subscores: empty input");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo;
  const double max = *hi;
  if (!std::isfinite(min) || !std::isfinite(max)) throw DomainError("normalize_subscores: non-finite input");
  if (!(max > min)) {
    std::fill(out.begin(), out.end(), 0.5);
    return;
  }
  const double span = max - min;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = inverted ? (max - values[i]) / span : (values[i] - min) / span;
  }
}

std::vector<double> normalize_subscores(std::span<const double> values, bool inverted) {
  std::vector<double> out(values.size());
  normalize_subscores_into(values, inverted, out);
  return out;
}

double preliminary_score(double s_price, double s_dist, double s_debts, const GlobalParams& w,
                         const WeightPreferences& pref) {
  const double den = w.w_price * pref.price + w.w_dist * pref.dist + w.w_debts * pref.debts;
  if (!(den > 0.0)) throw DomainError("preliminary_score: all effective weights zero");
  const double num = s_price * w.w_price * pref.price + s_dist * w.w_dist * pref.dist +
                     s_debts * w.w_debts * pref.debts;
  return num / den;
}

SocialCriteria social_criteria(const SellerAgent& a, const SellerAgent& b) {
  SocialCriteria c;
  if (a.district_id == b.district_id) {
    c.proximity = 0.33;
    if (a.subdistrict_id == b.subdistrict_id) {
      c.proximity = 0.66;
      if (a.village_id == b.village_id) c.proximity = 1.0;
    }
  }
  static constexpr double kEducation[] = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  c.education = kEducation[std::clamp(a.education, 1, 6) - 1];
  c.ethnicity = a.ethnicity == b.ethnicity ? 1.0 : 0.0;
  static constexpr double kGroups[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  c.activegroup = kGroups[std::clamp(a.group_count, 0, 4)];
  c.prestigious_job = a.prestigious_job ? 1.0 : 0.0;
  return c;
}

double social_link_score(const SocialCriteria& c, const GlobalParams& w) {
  const double den =
      w.w_s_proximity + w.w_s_education + w.w_s_ethnicity + w.w_s_activegroup + w.w_s_prestigious_job;
  if (!(den > 0.0)) throw DomainError("social_link_score: social sub-weights sum to zero");
  const double num = c.proximity * w.w_s_proximity + c.education * w.w_s_education +
                     c.ethnicity * w.w_s_ethnicity + c.activegroup * w.w_s_activegroup +
                     c.prestigious_job * w.w_s_prestigious_job;
  return num / den;
}

double final_score(double s_price, double s_dist, double s_debts, double s_social, const GlobalParams& w,
                   const WeightPreferences& pref) {
  // Same left-to-right order as preliminary_score so that a zero social term
  // leaves both sums untouched.
  const double den =
      w.w_price * pref.price + w.w_dist * pref.dist + w.w_debts * pref.debts + w.w_social * pref.social;
  if (!(den > 0.0)) throw DomainError("final_score: all effective weights zero");
  const double num = s_price * w.w_price * pref.price + s_dist * w.w_dist * pref.dist +
                     s_debts * w.w_debts * pref.debts + s_social * w.w_social * pref.social;
  return num / den;
}

}  // namespace tradenet::scoring
