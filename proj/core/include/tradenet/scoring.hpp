#pragma once

#include <span>
#include <vector>

#include "tradenet/domain.hpp"

namespace tradenet::scoring {

/// Pairwise similarity criteria of a social link A->B, each in [0,1].
struct SocialCriteria {
  double proximity{0.0};
  double education{0.0};
  double ethnicity{0.0};
  double activegroup{0.0};
  double prestigious_job{0.0};
};

/// Fills `pref` of every seller from transport, house value and age.
/// Raw preferences are reciprocals, min-max mapped onto [1,2] per criterion;
/// a criterion with no spread maps to 1 for everyone.
std::vector<SellerAgent> compute_preferences(std::vector<SellerAgent> sellers);

/// Min-max rescale into [0,1]. `inverted` maps the largest input to 0.
/// All-equal inputs map to 0.5.
std::vector<double> normalize_subscores(std::span<const double> values, bool inverted);

/// In-place variant over a strided view, used on the link table.
void normalize_subscores_into(std::span<const double> values, bool inverted, std::span<double> out);

/// Weighted mean of price, distance and debts sub-scores.
double preliminary_score(double s_price, double s_dist, double s_debts, const GlobalParams& w,
                         const WeightPreferences& pref);

SocialCriteria social_criteria(const SellerAgent& a, const SellerAgent& b);

/// Weighted mean of the five social criteria under the social sub-weights.
double social_link_score(const SocialCriteria& c, const GlobalParams& w);

/// Weighted mean of all four sub-scores. With w_social == 0 this is
/// bit-identical to preliminary_score.
double final_score(double s_price, double s_dist, double s_debts, double s_social, const GlobalParams& w,
                   const WeightPreferences& pref);

}  // namespace tradenet::scoring
