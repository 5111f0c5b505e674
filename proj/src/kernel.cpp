#include "pobs/kernel.hpp"
#include "pobs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace pobs {

std::string_view to_string(KernelKind kind)
{
  switch (kind) {
    case KernelKind::epanechnikov:
      return "epanechnikov";
    case KernelKind::triangular:
      return "triangular";
    case KernelKind::gaussian:
      return "gaussian";
    case KernelKind::uniform:
      return "uniform";
  }
  return "unknown";
}

KernelKind kernel_kind_from_string(std::string_view name)
{
  for (auto kind : { KernelKind::epanechnikov,
                     KernelKind::triangular,
                     KernelKind::gaussian,
                     KernelKind::uniform }) {
    if (to_string(kind) == name)
      return kind;
  }
  throw ConfigError("unknown kernel '" + std::string(name) + "'");
}

Kernel::Kernel(KernelKind kind)
  : kind_(kind)
{
  // closed-form second moments and L2 norms
  switch (kind) {
    case KernelKind::epanechnikov:
      kappa1_ = 1.0 / 5.0;
      kappa2_ = 3.0 / 5.0;
      break;
    case KernelKind::triangular:
      kappa1_ = 1.0 / 6.0;
      kappa2_ = 2.0 / 3.0;
      break;
    case KernelKind::gaussian:
      kappa1_ = 1.0;
      kappa2_ = 0.5 / std::sqrt(std::numbers::pi);
      break;
    case KernelKind::uniform:
      kappa1_ = 1.0 / 3.0;
      kappa2_ = 1.0 / 2.0;
      break;
  }
}

double Kernel::operator()(double u) const
{
  const double a = std::abs(u);
  switch (kind_) {
    case KernelKind::epanechnikov:
      return a <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
    case KernelKind::triangular:
      return a <= 1.0 ? 1.0 - a : 0.0;
    case KernelKind::gaussian:
      return std::exp(-0.5 * u * u) * std::numbers::inv_sqrtpi /
             std::numbers::sqrt2;
    case KernelKind::uniform:
      return a <= 1.0 ? 0.5 : 0.0;
  }
  return 0.0;
}

double Kernel::radius() const
{
  return kind_ == KernelKind::gaussian
           ? std::numeric_limits<double>::infinity()
           : 1.0;
}

Bandwidth::Bandwidth(double h, BandwidthRule rule)
  : h_(h)
  , rule_(rule)
{
  if (!std::isfinite(h) || h <= 0.0)
    throw ConfigError("bandwidth must be positive and finite, got " +
                      std::to_string(h));
}

Bandwidth Bandwidth::fixed(double h)
{
  return Bandwidth(h, BandwidthRule::fixed);
}

double kernel_weight(const Kernel& k, Bandwidth h, double x, double xi)
{
  if (!(h.h() > 0.0))
    throw ConfigError("bandwidth must be positive");
  return k((x - xi) / h.h()) / h.h();
}

double Smoother::weight(double x, double xi) const
{
  return kernel_weight(kernel, bandwidth, x, xi);
}

std::vector<double> kernel_weights(const Smoother& s,
                                   std::span<const double> xs,
                                   double x)
{
  std::vector<double> w(xs.size());
  const double h = s.bandwidth.h();
  for (size_t i = 0; i < xs.size(); ++i)
    w[i] = s.kernel((x - xs[i]) / h) / h;
  return w;
}

Bandwidth default_bandwidth(std::span<const double> xs, double a)
{
  if (xs.size() < 2)
    throw DataError("default bandwidth needs at least two covariate values");
  if (!(a > 0.2 && a < 1.0 / 3.0))
    throw ConfigError("bandwidth exponent must lie in (1/5, 1/3), got " +
                      std::to_string(a));
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs)
    mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : xs)
    ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > 0.0))
    throw DataError("covariate values are constant; no bandwidth can be "
                    "derived from them");
  return Bandwidth(1.06 * sd * std::pow(n, -a), BandwidthRule::scaled_power);
}

Interval evaluation_window(std::span<const double> xs, Bandwidth h)
{
  if (xs.empty())
    throw DataError("no covariate values");
  const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
  if (!(*mx - *mn > 2.0 * h.h()))
    throw ConfigError("empty evaluation window: need max(x) - min(x) > 2h, "
                      "got range " + std::to_string(*mx - *mn) +
                      " and h = " + std::to_string(h.h()));
  return { *mn + h.h(), *mx - h.h() };
}

void check_in_window(const Smoother& s, std::span<const double> xs, double x)
{
  if (s.window_policy == WindowPolicy::unrestricted)
    return;
  const Interval w = evaluation_window(xs, s.bandwidth);
  if (!w.contains(x))
    throw ConfigError("x = " + std::to_string(x) +
                      " lies outside the evaluation window [" +
                      std::to_string(w.lo) + ", " + std::to_string(w.hi) +
                      "]");
}

} // namespace pobs
