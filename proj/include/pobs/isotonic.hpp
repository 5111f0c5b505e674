#pragma once

#include <span>
#include <vector>

namespace pobs {

enum class Direction
{
  increasing,
  decreasing
};

//! Weighted least-squares projection of `values` onto monotone sequences in
//! the given direction (pool-adjacent-violators). Weights must be positive;
//! an empty weight span means unit weights.
std::vector<double> isotonic_regression(std::span<const double> values,
                                        std::span<const double> weights,
                                        Direction direction);

bool is_monotone(std::span<const double> values, Direction direction);

} // namespace pobs
