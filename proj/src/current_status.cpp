#include "pobs/current_status.hpp"
#include "pobs/errors.hpp"
#include "pobs/isotonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace pobs {

namespace {

std::vector<double> covariates(std::span<const CsRecord> data)
{
  std::vector<double> xs(data.size());
  for (size_t i = 0; i < data.size(); ++i)
    xs[i] = data[i].x;
  return xs;
}

std::vector<double> local_weights(std::span<const CsRecord> data,
                                  const Smoother& smoother,
                                  double x)
{
  if (data.empty())
    throw DataError("empty sample");
  const auto xs = covariates(data);
  check_in_window(smoother, xs, x);
  auto w = kernel_weights(smoother, xs, x);
  if (!(std::accumulate(w.begin(), w.end(), 0.0) > 0.0))
    throw NotEstimable("zero kernel mass at x = " + std::to_string(x));
  return w;
}

} // namespace

void validate_records(std::span<const CsRecord> data)
{
  if (data.empty())
    throw DataError("empty sample");
  for (size_t i = 0; i < data.size(); ++i)
    if (!std::isfinite(data[i].x) || !std::isfinite(data[i].c))
      throw DataError("record " + std::to_string(i) + " is not finite");
}

double estimate_B_interval(std::span<const CsRecord> data,
                           const Smoother& smoother,
                           double t,
                           double x)
{
  const auto w = local_weights(data, smoother, x);
  double num = 0.0;
  double den = 0.0;
  for (size_t i = 0; i < data.size(); ++i) {
    den += w[i];
    if (data[i].delta && data[i].c <= t)
      num += w[i];
  }
  return num / den;
}

double CurrentStatusFit::operator()(double t) const
{
  auto it = std::upper_bound(points.begin(), points.end(), t);
  if (it == points.begin())
    return 0.0;
  return values[static_cast<size_t>(it - points.begin()) - 1];
}

StepDistribution CurrentStatusFit::as_distribution() const
{
  return StepDistribution::from_cdf_values(points, values);
}

CurrentStatusFit fit_current_status(std::span<const CsRecord> data,
                                    const Smoother& smoother,
                                    double x)
{
  const auto w = local_weights(data, smoother, x);

  // pool records sharing an inspection value
  std::vector<size_t> order;
  for (size_t i = 0; i < data.size(); ++i)
    if (w[i] > 0.0)
      order.push_back(i);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return data[a].c < data[b].c;
  });
  CurrentStatusFit fit;
  std::vector<double> events;
  for (size_t i : order) {
    const double d = data[i].delta ? w[i] : 0.0;
    if (!fit.points.empty() && fit.points.back() == data[i].c) {
      fit.weights.back() += w[i];
      events.back() += d;
    } else {
      fit.points.push_back(data[i].c);
      fit.weights.push_back(w[i]);
      events.push_back(d);
    }
  }
  if (fit.points.size() < 2)
    throw DataError("current-status fit needs at least two distinct "
                    "inspection values with positive kernel weight");

  std::vector<double> freq(fit.points.size());
  for (size_t k = 0; k < freq.size(); ++k)
    freq[k] = events[k] / fit.weights[k];
  fit.values = isotonic_regression(freq, fit.weights, Direction::increasing);
  for (double& v : fit.values)
    v = std::clamp(v, 0.0, 1.0);
  return fit;
}

double regression_mean_interval(std::span<const CsRecord> data,
                                const Smoother& smoother,
                                double x,
                                Interval support,
                                double max_tail_mass)
{
  const CurrentStatusFit fit = fit_current_status(data, smoother, x);
  const double lower = fit.values.front();
  const double upper = 1.0 - fit.values.back();
  if (lower + upper > max_tail_mass)
    throw NotEstimable(
      "fitted curve leaves " + std::to_string(lower + upper) +
      " of its mass outside the inspection range (lower " +
      std::to_string(lower) + ", upper " + std::to_string(upper) + ")");
  double mean = support.lo * lower + support.hi * upper;
  for (size_t k = 1; k < fit.points.size(); ++k)
    mean += fit.points[k] * (fit.values[k] - fit.values[k - 1]);
  return mean;
}

std::vector<DeconvolutionBin> deconvolution_diagnostic(
  std::span<const CsRecord> data,
  const Smoother& smoother,
  double x,
  std::span<const double> cuts)
{
  if (cuts.size() < 2 || !std::is_sorted(cuts.begin(), cuts.end()))
    throw ConfigError("need at least two sorted cut points");
  const double n = static_cast<double>(data.size());
  auto empirical_c = [&](double t) {
    double k = 0.0;
    for (const auto& r : data)
      if (r.c <= t)
        k += 1.0;
    return k / n;
  };
  std::vector<DeconvolutionBin> bins;
  for (size_t k = 1; k < cuts.size(); ++k) {
    const double dc = empirical_c(cuts[k]) - empirical_c(cuts[k - 1]);
    const double db = estimate_B_interval(data, smoother, cuts[k], x) -
                      estimate_B_interval(data, smoother, cuts[k - 1], x);
    bins.push_back({ cuts[k - 1], cuts[k],
                     dc > 0.0 ? db / dc
                              : std::numeric_limits<double>::quiet_NaN() });
  }
  return bins;
}

} // namespace pobs
