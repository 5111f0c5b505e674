#pragma once

#include "pobs/kernel.hpp"
#include "pobs/step_distribution.hpp"

#include <functional>

namespace pobs {

//! Conditional distribution function estimate (y, x) -> F(y; x), evaluated
//! slice by slice in x. Slices are only produced inside the window.
class ConditionalCdfEstimate
{
public:
  using Slicer = std::function<StepDistribution(double)>;

  ConditionalCdfEstimate(Interval window, Slicer slicer);

  Interval window() const { return window_; }
  StepDistribution slice(double x) const;
  double evaluate(double y, double x) const { return slice(x).cdf(y); }

private:
  Interval window_;
  Slicer slicer_;
};

} // namespace pobs
