#pragma once

#include "pobs/kernel.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace testing {

inline pobs::Smoother smoother(pobs::KernelKind kind, double h)
{
  return pobs::Smoother{ pobs::Kernel(kind), pobs::Bandwidth::fixed(h),
                         pobs::WindowPolicy::unrestricted };
}

// uniform kernel wide enough to give every record the same weight
inline pobs::Smoother flat() { return smoother(pobs::KernelKind::uniform, 1e6); }

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// sorted distinct evaluation points: every value, midpoints and both ends
inline std::vector<double> probe_points(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<double> out;
  if (v.empty())
    return out;
  out.push_back(v.front() - 1.0);
  for (size_t i = 0; i < v.size(); ++i) {
    out.push_back(v[i]);
    if (i + 1 < v.size())
      out.push_back(0.5 * (v[i] + v[i + 1]));
  }
  out.push_back(v.back() + 1.0);
  return out;
}

} // namespace testing
