#include "pobs/step_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace pobs {

namespace {

constexpr double mass_slack = 1e-12;

void check_locations(const std::vector<double>& locations)
{
  for (size_t i = 0; i < locations.size(); ++i) {
    if (std::isnan(locations[i]))
      throw std::invalid_argument("step distribution: NaN jump location");
    if (i > 0 && !(locations[i - 1] < locations[i]))
      throw std::invalid_argument(
        "step distribution: jump locations must be strictly increasing");
  }
}

} // namespace

StepDistribution::StepDistribution(std::vector<double> locations,
                                   std::vector<double> masses)
  : locations_(std::move(locations))
  , masses_(std::move(masses))
{
  if (locations_.size() != masses_.size())
    throw std::invalid_argument("step distribution: size mismatch");
  check_locations(locations_);
  cdf_.resize(masses_.size());
  double acc = 0.0;
  for (size_t i = 0; i < masses_.size(); ++i) {
    if (!(masses_[i] >= 0.0))
      throw std::invalid_argument("step distribution: negative jump mass");
    acc += masses_[i];
    cdf_[i] = std::min(acc, 1.0);
  }
  if (acc > 1.0 + mass_slack)
    throw std::invalid_argument("step distribution: total mass exceeds one");
}

StepDistribution StepDistribution::from_cdf_values(
  std::vector<double> locations,
  std::vector<double> cdf_values)
{
  if (locations.size() != cdf_values.size())
    throw std::invalid_argument("step distribution: size mismatch");
  check_locations(locations);
  StepDistribution d;
  d.masses_.resize(cdf_values.size());
  double prev = 0.0;
  for (size_t i = 0; i < cdf_values.size(); ++i) {
    const double v = cdf_values[i];
    if (!(v >= prev - mass_slack) || v > 1.0 + mass_slack)
      throw std::invalid_argument(
        "step distribution: CDF values must be nondecreasing in [0, 1]");
    cdf_values[i] = std::clamp(v, prev, 1.0);
    d.masses_[i] = cdf_values[i] - prev;
    prev = cdf_values[i];
  }
  d.locations_ = std::move(locations);
  d.cdf_ = std::move(cdf_values);
  return d;
}

double StepDistribution::cdf(double y) const
{
  auto it = std::upper_bound(locations_.begin(), locations_.end(), y);
  if (it == locations_.begin())
    return 0.0;
  return cdf_[static_cast<size_t>(it - locations_.begin()) - 1];
}

double StepDistribution::left_limit(double y) const
{
  auto it = std::lower_bound(locations_.begin(), locations_.end(), y);
  if (it == locations_.begin())
    return 0.0;
  return cdf_[static_cast<size_t>(it - locations_.begin()) - 1];
}

double StepDistribution::jump_sum() const
{
  double s = 0.0;
  for (size_t i = 0; i < locations_.size(); ++i)
    if (masses_[i] > 0.0)
      s += locations_[i] * masses_[i];
  return s;
}

StepDistribution StepDistribution::shifted(double offset) const
{
  StepDistribution d = *this;
  for (double& l : d.locations_)
    l += offset;
  return d;
}

StepDistribution mixture(std::span<const StepDistribution> parts,
                         std::span<const double> weights)
{
  if (parts.size() != weights.size())
    throw std::invalid_argument("mixture: size mismatch");
  std::vector<std::pair<double, double>> jumps;
  for (size_t k = 0; k < parts.size(); ++k) {
    const auto locs = parts[k].locations();
    const auto ms = parts[k].masses();
    for (size_t i = 0; i < locs.size(); ++i)
      if (ms[i] > 0.0)
        jumps.emplace_back(locs[i], weights[k] * ms[i]);
  }
  std::sort(jumps.begin(), jumps.end());
  std::vector<double> locations;
  std::vector<double> masses;
  for (const auto& [at, m] : jumps) {
    if (!locations.empty() && locations.back() == at) {
      masses.back() += m;
    } else {
      locations.push_back(at);
      masses.push_back(m);
    }
  }
  // rounding can push the accumulated mass a hair above one
  double total = 0.0;
  for (double m : masses)
    total += m;
  if (total > 1.0 && total < 1.0 + 1e-9)
    for (double& m : masses)
      m /= total;
  return StepDistribution(std::move(locations), std::move(masses));
}

} // namespace pobs
