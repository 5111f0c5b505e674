#pragma once

// Quadrature oracles for the population functionals estimated by the
// library, and first-order bias/variance formulas for the kernel estimates
// of A and B under left truncation.

#include "pobs/kernel.hpp"
#include "pobs/simulation.hpp"

#include <optional>

namespace pobs {

//! Population functionals at (y, x). A and B are conditional on the sampling
//! event of the design. The marginal quantities of the double-truncation
//! design (A', B', B'') are returned unnormalized; H is the unnormalized
//! integral int_y^inf Fbar_C dF_{Y|X}.
struct OracleValues
{
  double alpha = 0.0;
  double A = 0.0;
  double B = 0.0;
  std::optional<double> A_prime;
  std::optional<double> B_prime;
  std::optional<double> B_second;
  std::optional<double> H;
};

OracleValues oracle_alpha_A_B(const DesignTruth& truth,
                              Design design,
                              double y,
                              double x);

//! F_{Y|X}(y; x) = F_eps(y - m(x)).
double oracle_conditional_cdf(const DesignTruth& truth, double y, double x);

//! Marginal distribution function of Y (integrated over F_X).
double oracle_marginal_cdf_Y(const DesignTruth& truth, double y);

//! E(Y | X = x, T <= Y): the mean seen in a left-truncated sample.
double oracle_apparent_mean(const DesignTruth& truth, double x);

//! Expected acceptance probability of the design (integrated over F_X).
double oracle_acceptance(const DesignTruth& truth, Design design);

struct TruncationLambdas
{
  double lambda0;
  double lambda1;
  double theta;
};

//! Sampling probabilities of controls and cases when X is only observed on
//! the truncation interval.
TruncationLambdas truncation_lambdas(const DesignTruth& truth);

//! gamma = Pr(Y=0) / Pr(Y=1) under the probability model.
double oracle_gamma(const DesignTruth& truth);

//! alpha(x) = theta (1 - p(x)) / p(x) in the case-control design.
double oracle_case_control_alpha(const DesignTruth& truth, double x);

struct TheoreticalMoments
{
  double alpha;
  double A;
  double B;
  double bias_A;
  double bias_B;
  double var_A;
  double var_B;
  //! dF_{Y|X}/dx, d2F_{Y|X}/dx2 and dF_{Y|X}/dy at (y, x)
  double dF_dx;
  double d2F_dx2;
  double dF_dy;
};

constexpr double derivative_step = 1e-3;

//! First-order bias (order h^2) and variance (order (nh)^-1) of the kernel
//! estimates of A(y; x) and B(y; x) for the left-truncated design.
//! Derivatives in x use central differences with `derivative_step`.
TheoreticalMoments theoretical_moments(const DesignTruth& truth,
                                       const Kernel& kernel,
                                       double n,
                                       double h,
                                       double y,
                                       double x);

} // namespace pobs
