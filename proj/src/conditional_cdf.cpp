#include "pobs/conditional_cdf.hpp"
#include "pobs/errors.hpp"

#include <string>

namespace pobs {

ConditionalCdfEstimate::ConditionalCdfEstimate(Interval window, Slicer slicer)
  : window_(window)
  , slicer_(std::move(slicer))
{}

StepDistribution ConditionalCdfEstimate::slice(double x) const
{
  if (!window_.contains(x))
    throw ConfigError("x = " + std::to_string(x) +
                      " lies outside the evaluation window");
  return slicer_(x);
}

} // namespace pobs
