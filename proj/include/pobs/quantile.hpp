#pragma once

#include "pobs/conditional_cdf.hpp"
#include "pobs/isotonic.hpp"
#include "pobs/step_distribution.hpp"

#include <span>
#include <vector>

namespace pobs {

struct QuantileResult
{
  double value;
  //! The level is not crossed strictly inside the searched range.
  bool boundary;
};

//! inf{y : F(y) >= u} over the jump locations of a slice. When u exceeds the
//! total mass (defective slice) the last location is returned, flagged.
QuantileResult slice_quantile(const StepDistribution& slice, double u);

//! Conditional quantile in y at fixed x, for u in (0, 1].
QuantileResult quantile_in_y(const ConditionalCdfEstimate& cdf,
                             double u,
                             double x);

struct InXOptions
{
  //! Monotonicity of x -> F(y; x). An increasing regression function gives a
  //! decreasing profile.
  Direction profile = Direction::decreasing;
  //! Isotonic smoothing of the profile before inversion.
  bool monotonize = false;
};

//! Conditional quantile in x at fixed y over a grid inside the window:
//! sup{x : F(y; x) >= u} for a decreasing profile, inf{x : F(y; x) >= u} for
//! an increasing one.
QuantileResult quantile_in_x(const ConditionalCdfEstimate& cdf,
                             double u,
                             double y,
                             std::span<const double> grid,
                             InXOptions options = {});

//! Equispaced grid of `points` values over the window.
std::vector<double> window_grid(const Interval& window, size_t points = 101);

} // namespace pobs
