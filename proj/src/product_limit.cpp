#include "product_limit.hpp"

#include <algorithm>
#include <stdexcept>

namespace pobs::detail {

std::vector<Event> aggregate_events(std::vector<Event> events)
{
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return a.at < b.at;
  });
  std::vector<Event> out;
  out.reserve(events.size());
  for (const Event& e : events) {
    if (!(e.mass > 0.0))
      continue;
    if (!out.empty() && out.back().at == e.at)
      out.back().mass += e.mass;
    else
      out.push_back(e);
  }
  return out;
}

std::vector<double> risk_mass(std::span<const RiskInterval> risk,
                              std::span<const double> at)
{
  std::vector<RiskInterval> by_lo;
  by_lo.reserve(risk.size());
  for (const auto& r : risk)
    if (r.weight > 0.0)
      by_lo.push_back(r);
  std::vector<RiskInterval> by_hi = by_lo;
  std::sort(by_lo.begin(), by_lo.end(), [](const auto& a, const auto& b) {
    return a.lo < b.lo;
  });
  std::sort(by_hi.begin(), by_hi.end(), [](const auto& a, const auto& b) {
    return a.hi < b.hi;
  });

  std::vector<double> out(at.size());
  size_t entered = 0;
  size_t left = 0;
  double sum = 0.0;
  for (size_t k = 0; k < at.size(); ++k) {
    const double v = at[k];
    if (k > 0 && at[k - 1] > v)
      throw std::logic_error("risk_mass: locations must be ascending");
    while (entered < by_lo.size() && by_lo[entered].lo <= v)
      sum += by_lo[entered++].weight;
    while (left < by_hi.size() && by_hi[left].hi < v)
      sum -= by_hi[left++].weight;
    // an empty risk set is exactly empty, whatever the rounding history
    if (entered == left)
      sum = 0.0;
    out[k] = std::max(sum, 0.0);
  }
  return out;
}

double product_factor(double d, double r)
{
  if (!(r > 0.0))
    return 1.0;
  return std::clamp(1.0 - d / r, 0.0, 1.0);
}

StepDistribution forward_product_limit(std::span<const Event> events,
                                       std::span<const RiskInterval> risk)
{
  std::vector<double> at(events.size());
  for (size_t k = 0; k < events.size(); ++k)
    at[k] = events[k].at;
  const auto r = risk_mass(risk, at);
  std::vector<double> cdf(events.size());
  double surv = 1.0;
  for (size_t k = 0; k < events.size(); ++k) {
    surv *= product_factor(events[k].mass, r[k]);
    cdf[k] = 1.0 - surv;
  }
  return StepDistribution::from_cdf_values(std::move(at), std::move(cdf));
}

StepDistribution reverse_product_limit(std::span<const Event> events,
                                       std::span<const RiskInterval> risk)
{
  std::vector<double> at(events.size());
  for (size_t k = 0; k < events.size(); ++k)
    at[k] = events[k].at;
  const auto r = risk_mass(risk, at);
  std::vector<double> cdf(events.size());
  double f = 1.0;
  for (size_t k = events.size(); k-- > 0;) {
    cdf[k] = f;
    f *= product_factor(events[k].mass, r[k]);
  }
  return StepDistribution::from_cdf_values(std::move(at), std::move(cdf));
}

} // namespace pobs::detail
