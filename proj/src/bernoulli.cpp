#include "pobs/bernoulli.hpp"
#include "pobs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace pobs {

namespace {

std::vector<BinaryRecord> sampled_rows(std::span<const BinaryRecord> data)
{
  std::vector<BinaryRecord> rows;
  rows.reserve(data.size());
  for (const auto& r : data)
    if (r.s)
      rows.push_back(r);
  return rows;
}

std::vector<double> covariates(std::span<const BinaryRecord> rows)
{
  std::vector<double> xs(rows.size());
  for (size_t i = 0; i < rows.size(); ++i)
    xs[i] = rows[i].x;
  return xs;
}

struct KernelSums
{
  double cases = 0.0;    // sum w y
  double controls = 0.0; // sum w (1 - y)
  double total() const { return cases + controls; }
};

KernelSums kernel_sums(std::span<const BinaryRecord> data,
                       const Smoother& smoother,
                       double x)
{
  const auto rows = sampled_rows(data);
  if (rows.empty())
    throw DataError("no sampled records");
  check_in_window(smoother, covariates(rows), x);
  KernelSums s;
  for (const auto& r : rows) {
    const double w = smoother.weight(x, r.x);
    (r.y ? s.cases : s.controls) += w;
  }
  return s;
}

[[noreturn]] void not_estimable(double x)
{
  throw NotEstimable("zero kernel mass at x = " + std::to_string(x));
}

} // namespace

SamplingRatio::SamplingRatio(double theta)
  : theta_(theta)
{
  if (!std::isfinite(theta) || theta <= 0.0)
    throw ConfigError("theta must be positive and finite");
}

SamplingRatio SamplingRatio::from_lambdas(double lambda0, double lambda1)
{
  if (!(lambda0 > 0.0 && lambda0 <= 1.0 && lambda1 > 0.0 && lambda1 <= 1.0))
    throw ConfigError("sampling probabilities must lie in (0, 1]");
  return SamplingRatio(lambda0 / lambda1);
}

double BernoulliFit::at(double x) const
{
  auto it = std::lower_bound(points.begin(), points.end(), x);
  if (it == points.end() || *it != x)
    throw std::out_of_range("not a grid point: " + std::to_string(x));
  return values[static_cast<size_t>(it - points.begin())];
}

BernoulliFit fit_discrete_mle(std::span<const BinaryRecord> data)
{
  std::map<double, std::pair<double, double>> cells; // x -> (cases, count)
  for (const auto& r : data) {
    if (!r.s)
      continue;
    auto& c = cells[r.x];
    c.first += r.y ? 1.0 : 0.0;
    c.second += 1.0;
  }
  if (cells.empty())
    throw DataError("no sampled records");
  BernoulliFit fit;
  fit.kind = FitKind::discrete_grid;
  for (const auto& [x, c] : cells) {
    fit.points.push_back(x);
    fit.values.push_back(c.first / c.second);
    fit.weights.push_back(c.second);
  }
  return fit;
}

double fit_kernel(std::span<const BinaryRecord> data,
                  const Smoother& smoother,
                  double x)
{
  const KernelSums s = kernel_sums(data, smoother, x);
  if (!(s.total() > 0.0))
    not_estimable(x);
  return s.cases / s.total();
}

BernoulliFit fit_kernel_grid(std::span<const BinaryRecord> data,
                             const Smoother& smoother,
                             std::span<const double> grid)
{
  BernoulliFit fit;
  fit.kind = FitKind::kernel;
  for (double x : grid) {
    const KernelSums s = kernel_sums(data, smoother, x);
    if (!(s.total() > 0.0))
      not_estimable(x);
    fit.points.push_back(x);
    fit.values.push_back(s.cases / s.total());
    fit.weights.push_back(s.total());
  }
  return fit;
}

namespace {

struct SampledCounts
{
  double sampled = 0.0;
  double cases = 0.0;
};

SampledCounts sampled_counts(std::span<const BinaryRecord> data)
{
  double sampled = 0.0;
  double cases = 0.0;
  for (const auto& r : data) {
    if (!r.s)
      continue;
    sampled += 1.0;
    cases += r.y ? 1.0 : 0.0;
  }
  if (sampled == 0.0)
    throw DataError("no sampled records");
  return { sampled, cases };
}

} // namespace

double control_proportion(std::span<const BinaryRecord> data)
{
  const auto c = sampled_counts(data);
  return 1.0 - c.cases / c.sampled;
}

double estimate_theta_gamma(std::span<const BinaryRecord> data)
{
  const auto c = sampled_counts(data);
  if (c.cases == 0.0)
    return std::numeric_limits<double>::infinity();
  return (c.sampled - c.cases) / c.cases;
}

double estimate_alpha(std::span<const BinaryRecord> data,
                      const Smoother& smoother,
                      double x)
{
  const KernelSums s = kernel_sums(data, smoother, x);
  if (!(s.total() > 0.0))
    not_estimable(x);
  if (s.cases == 0.0)
    return std::numeric_limits<double>::infinity();
  return s.controls / s.cases;
}

double estimate_alpha_discrete(std::span<const BinaryRecord> data, double xj)
{
  double cases = 0.0;
  double controls = 0.0;
  for (const auto& r : data) {
    if (!r.s || r.x != xj)
      continue;
    (r.y ? cases : controls) += 1.0;
  }
  if (cases + controls == 0.0)
    throw NotEstimable("no sampled records at level x = " +
                       std::to_string(xj));
  if (cases == 0.0)
    return std::numeric_limits<double>::infinity();
  return controls / cases;
}

double debias_probability(double pi, SamplingRatio theta)
{
  if (!(pi >= 0.0 && pi <= 1.0))
    throw ConfigError("probability outside [0, 1]");
  const double t = theta.value();
  return t * pi / (1.0 + (t - 1.0) * pi);
}

double bias_forward(double p, SamplingRatio theta)
{
  if (!(p >= 0.0 && p <= 1.0))
    throw ConfigError("probability outside [0, 1]");
  return p / (p + theta.value() * (1.0 - p));
}

double probability_from_alpha(double alpha, SamplingRatio theta)
{
  if (!(alpha >= 0.0))
    throw ConfigError("alpha must be nonnegative");
  if (std::isinf(alpha))
    return 0.0;
  return theta.value() / (theta.value() + alpha);
}

BernoulliFit fit_debiased_discrete(std::span<const BinaryRecord> data,
                                   SamplingRatio theta)
{
  const double t = theta.value();
  std::map<double, std::tuple<double, double, double>> cells;
  for (const auto& r : data) {
    if (!r.s)
      continue;
    auto& [num, den, count] = cells[r.x];
    num += r.y ? t : 0.0;
    den += r.y ? t : 1.0;
    count += 1.0;
  }
  if (cells.empty())
    throw DataError("no sampled records");
  BernoulliFit fit;
  fit.kind = FitKind::discrete_grid;
  for (const auto& [x, c] : cells) {
    const auto& [num, den, count] = c;
    fit.points.push_back(x);
    fit.values.push_back(num / den);
    fit.weights.push_back(count);
  }
  return fit;
}

double fit_debiased(std::span<const BinaryRecord> data,
                    SamplingRatio theta,
                    const Smoother& smoother,
                    double x)
{
  const KernelSums s = kernel_sums(data, smoother, x);
  const double t = theta.value();
  const double den = s.controls + t * s.cases;
  if (!(den > 0.0))
    not_estimable(x);
  return t * s.cases / den;
}

BernoulliFit fit_debiased_grid(std::span<const BinaryRecord> data,
                               SamplingRatio theta,
                               const Smoother& smoother,
                               std::span<const double> grid)
{
  BernoulliFit fit;
  fit.kind = FitKind::kernel;
  const double t = theta.value();
  for (double x : grid) {
    const KernelSums s = kernel_sums(data, smoother, x);
    const double den = s.controls + t * s.cases;
    if (!(den > 0.0))
      not_estimable(x);
    fit.points.push_back(x);
    fit.values.push_back(t * s.cases / den);
    fit.weights.push_back(s.total());
  }
  return fit;
}

BernoulliFit monotonize(const BernoulliFit& fit, Direction direction)
{
  if (is_monotone(fit.values, direction))
    return fit;
  BernoulliFit out = fit;
  out.values = isotonic_regression(fit.values, fit.weights, direction);
  return out;
}

Inversion invert_monotone(const BernoulliFit& fit,
                          double u,
                          Direction direction)
{
  const size_t n = fit.points.size();
  if (n == 0)
    throw DataError("cannot invert an empty fit");
  if (direction == Direction::increasing) {
    for (size_t i = 0; i < n; ++i)
      if (fit.values[i] >= u)
        return { fit.points[i], i == 0 };
    return { fit.points.back(), true };
  }
  for (size_t i = n; i-- > 0;)
    if (fit.values[i] >= u)
      return { fit.points[i], i == n - 1 };
  return { fit.points.front(), true };
}

} // namespace pobs
