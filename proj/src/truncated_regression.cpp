#include "pobs/truncated_regression.hpp"
#include "pobs/errors.hpp"
#include "product_limit.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pobs {

namespace {

std::vector<double> covariates(std::span<const LtRecord> data)
{
  std::vector<double> xs(data.size());
  for (size_t i = 0; i < data.size(); ++i)
    xs[i] = data[i].x;
  return xs;
}

std::vector<double> local_weights(std::span<const LtRecord> data,
                                  const Smoother& smoother,
                                  double x)
{
  if (data.empty())
    throw DataError("empty sample");
  const auto xs = covariates(data);
  check_in_window(smoother, xs, x);
  auto w = kernel_weights(smoother, xs, x);
  double total = 0.0;
  for (double v : w)
    total += v;
  if (!(total > 0.0))
    throw NotEstimable("zero kernel mass at x = " + std::to_string(x));
  return w;
}

StepDistribution weighted_product_limit(std::span<const LtRecord> data,
                                        std::span<const double> w)
{
  std::vector<detail::Event> events;
  std::vector<detail::RiskInterval> risk;
  events.reserve(data.size());
  risk.reserve(data.size());
  for (size_t i = 0; i < data.size(); ++i) {
    if (!(w[i] > 0.0))
      continue;
    events.push_back({ data[i].y, w[i] });
    risk.push_back({ data[i].t, data[i].y, w[i] });
  }
  return detail::forward_product_limit(
    detail::aggregate_events(std::move(events)), risk);
}

} // namespace

void validate_records(std::span<const LtRecord> data)
{
  if (data.empty())
    throw DataError("empty sample");
  for (size_t i = 0; i < data.size(); ++i) {
    const auto& r = data[i];
    if (!std::isfinite(r.x) || !std::isfinite(r.y) || std::isnan(r.t) ||
        r.t == std::numeric_limits<double>::infinity())
      throw DataError("record " + std::to_string(i) + " is not finite");
    if (r.t > r.y)
      throw DataError("record " + std::to_string(i) +
                      " violates the truncation condition t <= y");
  }
}

double estimate_A(std::span<const LtRecord> data,
                  const Smoother& smoother,
                  double y,
                  double x)
{
  const auto w = local_weights(data, smoother, x);
  double num = 0.0;
  double den = 0.0;
  for (size_t i = 0; i < data.size(); ++i) {
    den += w[i];
    if (data[i].y <= y)
      num += w[i];
  }
  return num / den;
}

double estimate_B(std::span<const LtRecord> data,
                  const Smoother& smoother,
                  double y,
                  double x)
{
  const auto w = local_weights(data, smoother, x);
  double num = 0.0;
  double den = 0.0;
  for (size_t i = 0; i < data.size(); ++i) {
    den += w[i];
    if (data[i].t <= y && y <= data[i].y)
      num += w[i];
  }
  return num / den;
}

StepDistribution conditional_cdf(std::span<const LtRecord> data,
                                 const Smoother& smoother,
                                 double x)
{
  const auto w = local_weights(data, smoother, x);
  return weighted_product_limit(data, w);
}

ConditionalCdfEstimate conditional_cdf_estimate(std::vector<LtRecord> data,
                                                Smoother smoother)
{
  validate_records(data);
  Interval window{ -std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity() };
  if (smoother.window_policy == WindowPolicy::enforce)
    window = evaluation_window(covariates(data), smoother.bandwidth);
  return ConditionalCdfEstimate(
    window, [data = std::move(data), smoother](double x) {
      return conditional_cdf(data, smoother, x);
    });
}

double regression_mean(std::span<const LtRecord> data,
                       const Smoother& smoother,
                       double x)
{
  return conditional_cdf(data, smoother, x).jump_sum();
}

StepDistribution marginal_survival_Y(std::span<const LtRecord> data)
{
  if (data.empty())
    throw DataError("empty sample");
  const std::vector<double> ones(data.size(), 1.0);
  return weighted_product_limit(data, ones);
}

StepDistribution truncation_cdf_T(std::span<const LtRecord> data)
{
  if (data.empty())
    throw DataError("empty sample");
  std::vector<detail::Event> events;
  std::vector<detail::RiskInterval> risk;
  for (const auto& r : data) {
    events.push_back({ r.t, 1.0 });
    risk.push_back({ r.t, r.y, 1.0 });
  }
  return detail::reverse_product_limit(
    detail::aggregate_events(std::move(events)), risk);
}

ResidualCdf residual_cdf(std::span<const LtRecord> data,
                         const Smoother& smoother,
                         const std::function<double(double)>& m_hat)
{
  if (data.empty())
    throw DataError("empty sample");
  const auto xs = covariates(data);
  Interval window{ -std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity() };
  if (smoother.window_policy == WindowPolicy::enforce)
    window = evaluation_window(xs, smoother.bandwidth);

  ResidualCdf out;
  std::vector<StepDistribution> parts;
  for (const auto& r : data) {
    if (!window.contains(r.x)) {
      ++out.skipped;
      continue;
    }
    // F(s + m(X_i); X_i) as a function of s is the slice moved by -m(X_i)
    parts.push_back(conditional_cdf(data, smoother, r.x).shifted(-m_hat(r.x)));
  }
  out.used = parts.size();
  if (out.used == 0)
    throw DataError("no record lies inside the evaluation window");
  const std::vector<double> weights(out.used, 1.0 / double(out.used));
  out.distribution = mixture(parts, weights);
  return out;
}

double mean_T(std::span<const LtRecord> data)
{
  return truncation_cdf_T(data).jump_sum();
}

double mean_Y(std::span<const LtRecord> data)
{
  return marginal_survival_Y(data).jump_sum();
}

} // namespace pobs
