#include "pobs/isotonic.hpp"

#include <stdexcept>

namespace pobs {

std::vector<double> isotonic_regression(std::span<const double> values,
                                        std::span<const double> weights,
                                        Direction direction)
{
  const size_t n = values.size();
  if (!weights.empty() && weights.size() != n)
    throw std::invalid_argument("isotonic regression: size mismatch");

  // A decreasing fit is the increasing fit of the negated sequence.
  const double sign = direction == Direction::increasing ? 1.0 : -1.0;

  struct Block
  {
    double mean;
    double weight;
    size_t count;
  };
  std::vector<Block> blocks;
  blocks.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    if (!(w > 0.0))
      throw std::invalid_argument("isotonic regression: weights must be "
                                  "positive");
    blocks.push_back({ sign * values[i], w, 1 });
    while (blocks.size() > 1 &&
           blocks[blocks.size() - 2].mean >= blocks.back().mean) {
      Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      const double wsum = prev.weight + top.weight;
      prev.mean = (prev.weight * prev.mean + top.weight * top.mean) / wsum;
      prev.weight = wsum;
      prev.count += top.count;
    }
  }

  // Recompute each block mean with a plain left-to-right sum so the result
  // depends only on the block partition, not on the merge history. A constant
  // block keeps its value exactly. Rounding
  // can leave recomputed neighbours tied or reversed; pool those as well so
  // the partition is always the coarsest one.
  auto block_mean = [&](size_t start, size_t count) {
    bool constant = true;
    for (size_t i = start + 1; i < start + count; ++i)
      constant = constant && values[i] == values[start];
    if (constant)
      return sign * values[start];
    double swv = 0.0;
    double sw = 0.0;
    for (size_t i = start; i < start + count; ++i) {
      const double w = weights.empty() ? 1.0 : weights[i];
      swv += w * values[i];
      sw += w;
    }
    return sign * (swv / sw);
  };
  std::vector<size_t> starts;
  starts.reserve(blocks.size());
  size_t start = 0;
  for (Block& b : blocks) {
    starts.push_back(start);
    b.mean = block_mean(start, b.count);
    start += b.count;
  }
  for (size_t k = 1; k < blocks.size();) {
    if (blocks[k - 1].mean >= blocks[k].mean) {
      blocks[k - 1].count += blocks[k].count;
      blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(k));
      starts.erase(starts.begin() + static_cast<std::ptrdiff_t>(k));
      blocks[k - 1].mean = block_mean(starts[k - 1], blocks[k - 1].count);
      k = k > 1 ? k - 1 : 1;
    } else {
      ++k;
    }
  }

  std::vector<double> fit;
  fit.reserve(n);
  for (const Block& b : blocks)
    fit.insert(fit.end(), b.count, sign * b.mean);
  return fit;
}

bool is_monotone(std::span<const double> values, Direction direction)
{
  for (size_t i = 1; i < values.size(); ++i) {
    if (direction == Direction::increasing && values[i] < values[i - 1])
      return false;
    if (direction == Direction::decreasing && values[i] > values[i - 1])
      return false;
  }
  return true;
}

} // namespace pobs
