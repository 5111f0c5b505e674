#pragma once

// Shared machinery of the product-limit estimators: event aggregation,
// interval risk sets and forward/reverse products with the 0/0 = 0 rule.

#include "pobs/step_distribution.hpp"

#include <span>
#include <vector>

namespace pobs::detail {

//! Record j belongs to the risk set at v when lo <= v <= hi.
struct RiskInterval
{
  double lo;
  double hi;
  double weight;
};

struct Event
{
  double at;
  double mass;
};

//! Events sorted by location with tied locations merged. Zero-mass events are
//! dropped.
std::vector<Event> aggregate_events(std::vector<Event> events);

//! Weighted risk-set size sum_j w_j 1{lo_j <= v <= hi_j} at each location of
//! `at` (ascending). Requires lo_j <= hi_j.
std::vector<double> risk_mass(std::span<const RiskInterval> risk,
                              std::span<const double> at);

//! 1 - d / r, with a vanishing risk set contributing the neutral factor.
double product_factor(double d, double r);

//! CDF 1 - prod_{v_k <= y} (1 - d_k / r_k).
StepDistribution forward_product_limit(std::span<const Event> events,
                                       std::span<const RiskInterval> risk);

//! CDF prod_{v_k > y} (1 - d_k / r_k).
StepDistribution reverse_product_limit(std::span<const Event> events,
                                       std::span<const RiskInterval> risk);

} // namespace pobs::detail
