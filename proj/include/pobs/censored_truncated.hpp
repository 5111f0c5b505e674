#pragma once

// Product-limit estimators for three further observation schemes:
//  - left truncation by T with right censoring by C (records kept when
//    T <= min(Y, C));
//  - right truncation by C (records kept when Y <= C);
//  - double truncation (records kept when T <= Y <= C).

#include "pobs/conditional_cdf.hpp"
#include "pobs/kernel.hpp"
#include "pobs/step_distribution.hpp"

#include <span>
#include <vector>

namespace pobs {

struct LtrcRecord
{
  double x;
  double t;
  double z; // min(Y, C)
  bool delta; // Y <= C
};

struct RtRecord
{
  double x;
  double y;
  double c;
};

struct DtRecord
{
  double x;
  double t;
  double y;
  double c;
};

void validate_records(std::span<const LtrcRecord> data);
void validate_records(std::span<const RtRecord> data);
void validate_records(std::span<const DtRecord> data);

// --- left truncation and right censoring ---

//! Kernel-weighted product-limit distribution of Y given x; survival() gives
//!   prod (1 - K_h(x - X_i) 1{delta_i, Z_i <= y} / sum_j K_h(x - X_j) 1{T_j <= Z_i <= Z_j}).
//! At tied values events are counted before censorings (censored records stay
//! in the risk set).
StepDistribution ltrc_conditional_survival(std::span<const LtrcRecord> data,
                                           const Smoother& smoother,
                                           double x);

ConditionalCdfEstimate ltrc_conditional_cdf_estimate(
  std::vector<LtrcRecord> data,
  Smoother smoother);

double ltrc_regression_mean(std::span<const LtrcRecord> data,
                            const Smoother& smoother,
                            double x);

StepDistribution ltrc_marginal_survival(std::span<const LtrcRecord> data);

// --- right truncation ---

//! Reverse-time product limit
//!   F(y; x) = prod_{Y_i > y} (1 - K_h(x - X_i) / sum_j K_h(x - X_j) 1{Y_j <= Y_i <= C_j}).
StepDistribution rt_conditional_cdf(std::span<const RtRecord> data,
                                    const Smoother& smoother,
                                    double x);

ConditionalCdfEstimate rt_conditional_cdf_estimate(std::vector<RtRecord> data,
                                                   Smoother smoother);

//! Distribution of C, which is left-truncated by Y:
//!   survival(s) = prod_{C_i <= s} (1 - 1 / #{j : Y_j <= C_i <= C_j}).
StepDistribution rt_censoring_survival(std::span<const RtRecord> data);

double rt_regression_mean(std::span<const RtRecord> data,
                          const Smoother& smoother,
                          double x);

// --- double truncation ---

//! survival(s) = prod_{C_i <= s} (1 - 1 / #{j : Y_j <= C_i <= C_j})
StepDistribution dt_censoring_survival(std::span<const DtRecord> data);

enum class DtTruncationForm
{
  //! F_T(t) = prod_{T_i > t} (1 - 1 / #{j : T_j <= T_i <= Y_j})
  reverse_time,
  //! Literal product over records with C_i <= t, reported through
  //! survival(t); it is not a distribution function of T.
  as_printed
};

StepDistribution dt_truncation_cdf(
  std::span<const DtRecord> data,
  DtTruncationForm form = DtTruncationForm::reverse_time);

//! Kernel-weighted product limit with risk sets {j : T_j <= Y_i <= Y_j <= C_j};
//! survival() is H(y; x) normalized to one at -infinity.
StepDistribution dt_H(std::span<const DtRecord> data,
                      const Smoother& smoother,
                      double x);

struct DtConditionalCdf
{
  StepDistribution distribution;
  //! jumps of H dropped because the censoring survival vanished there
  size_t excluded = 0;
  //! CDF values clipped to one (unnormalized form only)
  size_t clipped = 0;
  //! sum of the reweighted H jumps before normalization
  double raw_total = 0.0;
};

enum class DtNormalization
{
  //! divide by the total reweighted mass, giving a proper distribution
  renormalize,
  //! sum of reweighted H jumps, clipped at one
  clip
};

//! F(y; x) = sum_{Y_i <= y} (-dH(Y_i; x)) / Fbar_C(Y_i).
DtConditionalCdf dt_conditional_cdf(
  std::span<const DtRecord> data,
  const Smoother& smoother,
  double x,
  const StepDistribution& censoring,
  DtNormalization normalization = DtNormalization::renormalize);

ConditionalCdfEstimate dt_conditional_cdf_estimate(
  std::vector<DtRecord> data,
  Smoother smoother,
  DtNormalization normalization = DtNormalization::renormalize);

double dt_regression_mean(std::span<const DtRecord> data,
                          const Smoother& smoother,
                          double x);

} // namespace pobs
