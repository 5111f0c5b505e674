#include "pobs/quantile.hpp"
#include "pobs/errors.hpp"

#include <algorithm>
#include <string>

namespace pobs {

namespace {

void check_level(double u, bool allow_one)
{
  if (!(u > 0.0 && (u < 1.0 || (allow_one && u == 1.0))))
    throw ConfigError(std::string("quantile level must lie in ") +
                      (allow_one ? "(0, 1]" : "(0, 1)") + ", got " +
                      std::to_string(u));
}

} // namespace

QuantileResult slice_quantile(const StepDistribution& slice, double u)
{
  if (slice.empty())
    throw NotEstimable("empty distribution slice");
  const auto cdf = slice.cdf_values();
  const auto locs = slice.locations();
  auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end())
    return { locs.back(), true };
  return { locs[static_cast<size_t>(it - cdf.begin())], false };
}

QuantileResult quantile_in_y(const ConditionalCdfEstimate& cdf,
                             double u,
                             double x)
{
  check_level(u, true);
  return slice_quantile(cdf.slice(x), u);
}

QuantileResult quantile_in_x(const ConditionalCdfEstimate& cdf,
                             double u,
                             double y,
                             std::span<const double> grid,
                             InXOptions options)
{
  check_level(u, false);
  if (grid.empty())
    throw ConfigError("empty x grid");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw ConfigError("x grid must be sorted");

  std::vector<double> profile(grid.size());
  for (size_t i = 0; i < grid.size(); ++i)
    profile[i] = cdf.evaluate(y, grid[i]);
  if (options.monotonize)
    profile = isotonic_regression(profile, {}, options.profile);

  const size_t n = grid.size();
  if (options.profile == Direction::increasing) {
    for (size_t i = 0; i < n; ++i)
      if (profile[i] >= u)
        return { grid[i], i == 0 };
    return { grid.back(), true };
  }
  for (size_t i = n; i-- > 0;)
    if (profile[i] >= u)
      return { grid[i], i == n - 1 };
  return { grid.front(), true };
}

std::vector<double> window_grid(const Interval& window, size_t points)
{
  if (points < 2)
    throw ConfigError("a grid needs at least two points");
  std::vector<double> grid(points);
  for (size_t i = 0; i < points; ++i)
    grid[i] = window.lo + window.length() * double(i) / double(points - 1);
  grid.back() = window.hi;
  return grid;
}

} // namespace pobs
