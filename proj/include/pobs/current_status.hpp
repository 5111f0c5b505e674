#pragma once

// Current-status observation: only an inspection value c and the indicator
// delta = 1{Y <= c} are recorded for each covariate value.

#include "pobs/kernel.hpp"
#include "pobs/step_distribution.hpp"

#include <span>
#include <vector>

namespace pobs {

struct CsRecord
{
  double x;
  double c;
  bool delta;
};

void validate_records(std::span<const CsRecord> data);

//! B(t; x) = P(Y <= C <= t | X = x), estimated by the kernel-weighted
//! proportion of records with delta = 1 and c <= t.
double estimate_B_interval(std::span<const CsRecord> data,
                           const Smoother& smoother,
                           double t,
                           double x);

//! Monotone estimate of t -> P(Y <= t | X = x) at the distinct inspection
//! values with positive kernel weight.
struct CurrentStatusFit
{
  std::vector<double> points;
  std::vector<double> values;
  //! kernel mass of each point
  std::vector<double> weights;

  //! Step function: value at the largest point <= t, 0 before the first.
  double operator()(double t) const;
  //! Jumps v_k - v_{k-1} (v_0 = 0) placed at the points.
  StepDistribution as_distribution() const;
};

//! Kernel-weighted isotonic regression of delta on c, the local maximizer of
//! sum_i w_i [delta_i log F(c_i) + (1 - delta_i) log(1 - F(c_i))] over
//! nondecreasing F. Needs two distinct inspection values with positive weight.
CurrentStatusFit fit_current_status(std::span<const CsRecord> data,
                                    const Smoother& smoother,
                                    double x);

//! Mean of the fitted curve. The mass below the first inspection point is
//! placed at support.lo and the mass never reached at support.hi; the two
//! together may not exceed `max_tail_mass`.
double regression_mean_interval(std::span<const CsRecord> data,
                                const Smoother& smoother,
                                double x,
                                Interval support,
                                double max_tail_mass = 0.05);

//! Diagnostic comparison with the deconvolution route: on each bin between
//! consecutive cut points, the ratio of the increase of B(.; x) to the
//! increase of the empirical distribution of C, which estimates F(t) on the
//! bin.
struct DeconvolutionBin
{
  double lo;
  double hi;
  double ratio; // NaN when the empirical C mass of the bin is zero
};

std::vector<DeconvolutionBin> deconvolution_diagnostic(
  std::span<const CsRecord> data,
  const Smoother& smoother,
  double x,
  std::span<const double> cuts);

} // namespace pobs
