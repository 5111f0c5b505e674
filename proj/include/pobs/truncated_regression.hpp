#pragma once

// Regression and distribution estimators for Y = m(X) + eps observed under
// left truncation: a record exists only when t <= y.

#include "pobs/conditional_cdf.hpp"
#include "pobs/kernel.hpp"
#include "pobs/step_distribution.hpp"

#include <functional>
#include <span>
#include <vector>

namespace pobs {

struct LtRecord
{
  double x;
  double t;
  double y;
};

//! Throws DataError on an empty sample, non-finite covariates or responses, or
//! a record with t > y. The truncation value may be -infinity.
void validate_records(std::span<const LtRecord> data);

//! Kernel estimate of A(y; x) = P(Y <= y | X = x, T <= Y).
double estimate_A(std::span<const LtRecord> data,
                  const Smoother& smoother,
                  double y,
                  double x);

//! Kernel estimate of B(y; x) = P(T <= y <= Y | X = x, T <= Y).
double estimate_B(std::span<const LtRecord> data,
                  const Smoother& smoother,
                  double y,
                  double x);

//! Kernel-weighted product-limit estimate of F_{Y|X}(. ; x):
//!   1 - prod_{Y_i <= y} (1 - K_h(x - X_i) / sum_j K_h(x - X_j) 1{T_j <= Y_i <= Y_j})
//! Tied responses share one factor. A record whose risk set is empty
//! contributes the factor one.
StepDistribution conditional_cdf(std::span<const LtRecord> data,
                                 const Smoother& smoother,
                                 double x);

ConditionalCdfEstimate conditional_cdf_estimate(std::vector<LtRecord> data,
                                                Smoother smoother);

//! Mean of the conditional product-limit distribution (jump sum, no
//! renormalization of defective slices).
double regression_mean(std::span<const LtRecord> data,
                       const Smoother& smoother,
                       double x);

//! Kernel-free product-limit distribution of Y under left truncation; its
//! survival() is the marginal survival estimate.
StepDistribution marginal_survival_Y(std::span<const LtRecord> data);

//! Product-limit estimate of F_T, treating T as right-truncated by Y:
//! F_T(t) = prod_{T_i > t} (1 - 1 / #{j : T_j <= T_i <= Y_j}).
StepDistribution truncation_cdf_T(std::span<const LtRecord> data);

struct ResidualCdf
{
  StepDistribution distribution;
  size_t used = 0;
  //! records whose covariate lies outside the evaluation window
  size_t skipped = 0;
};

//! F_eps(s) = average over usable records of F_{Y|X}(s + m_hat(X_i); X_i).
ResidualCdf residual_cdf(std::span<const LtRecord> data,
                         const Smoother& smoother,
                         const std::function<double(double)>& m_hat);

//! Mean of truncation_cdf_T.
double mean_T(std::span<const LtRecord> data);
//! Mean of marginal_survival_Y.
double mean_Y(std::span<const LtRecord> data);

} // namespace pobs
