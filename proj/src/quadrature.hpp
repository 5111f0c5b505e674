#pragma once

#include "pobs/distributions.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace pobs::detail {

constexpr double quadrature_tolerance = 1e-12;

//! Adaptive Gauss-Kronrod integral over [lo, hi], split at the breakpoints
//! that fall strictly inside so kinks of piecewise integrands sit on panel
//! boundaries.
template<class F>
double integrate(F&& f, double lo, double hi, std::vector<double> breaks = {})
{
  if (!(lo < hi))
    return 0.0;
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  double prev = lo;
  for (double b : breaks) {
    if (!std::isfinite(b) || b <= prev || b > hi)
      continue;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, prev, b, 15, quadrature_tolerance);
    prev = b;
  }
  return total;
}

//! E g(V) for V ~ dist.
template<class G>
double expect(const Distribution& dist, G&& g, std::vector<double> breaks = {})
{
  if (!dist.is_continuous())
    return g(dist.quantile(0.5));
  return integrate([&](double v) { return g(v) * dist.pdf(v); },
                   dist.support_lo(),
                   dist.support_hi(),
                   std::move(breaks));
}

} // namespace pobs::detail
