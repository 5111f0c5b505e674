#pragma once

#include "pobs/isotonic.hpp"
#include "pobs/kernel.hpp"

#include <span>
#include <vector>

namespace pobs {

//! Binary response with its covariate and sampling indicator. Rows with
//! s = false are ignored by every estimator.
struct BinaryRecord
{
  double x;
  bool y;
  bool s = true;
};

//! Ratio lambda0 / lambda1 of the sampling probabilities of controls and
//! cases. Only alpha(x) = theta (1 - p) / p is identifiable from biased data,
//! so every estimator of p itself takes this explicitly.
class SamplingRatio
{
public:
  explicit SamplingRatio(double theta);
  static SamplingRatio from_lambdas(double lambda0, double lambda1);

  double value() const { return theta_; }

private:
  double theta_;
};

//! Case-control sampling design: lambda1 = Pr(S=1|Y=1), lambda0 = Pr(S=1|Y=0)
//! and gamma = Pr(Y=0)/Pr(Y=1).
struct BiasDesign
{
  double lambda1;
  double lambda0;
  double gamma;

  SamplingRatio theta() const
  {
    return SamplingRatio::from_lambdas(lambda0, lambda1);
  }
};

enum class FitKind
{
  discrete_grid,
  kernel
};

//! Probabilities on an ordered grid. `weights` hold the cell counts (discrete
//! grid) or kernel masses (kernel fits) used when monotonizing.
struct BernoulliFit
{
  FitKind kind = FitKind::discrete_grid;
  std::vector<double> points;
  std::vector<double> values;
  std::vector<double> weights;

  //! Value at a grid point; throws std::out_of_range if `x` is not a point.
  double at(double x) const;
};

//! Cell proportions of y = 1 at each distinct x level.
BernoulliFit fit_discrete_mle(std::span<const BinaryRecord> data);

//! Nadaraya-Watson estimate of Pr(Y=1 | X=x). Throws NotEstimable when the
//! kernel mass at x is zero.
double fit_kernel(std::span<const BinaryRecord> data,
                  const Smoother& smoother,
                  double x);

//! fit_kernel over a grid of points (all within the window).
BernoulliFit fit_kernel_grid(std::span<const BinaryRecord> data,
                             const Smoother& smoother,
                             std::span<const double> grid);

//! Proportion of controls among the sampled rows, 1 - sum(y s) / sum(s).
double control_proportion(std::span<const BinaryRecord> data);

//! Maximum likelihood estimate of theta * gamma: the sampled control/case odds
//! (1 - q) / q with q the sampled case proportion. +infinity without cases.
double estimate_theta_gamma(std::span<const BinaryRecord> data);

//! Kernel estimate of alpha(x). Returns +infinity when the weighted case mass
//! is zero (a cell without cases maps to p = 0 downstream).
double estimate_alpha(std::span<const BinaryRecord> data,
                      const Smoother& smoother,
                      double x);

//! Discrete-design estimate of alpha at the level x_j; +infinity without cases.
double estimate_alpha_discrete(std::span<const BinaryRecord> data, double xj);

//! p = theta pi / (1 + (theta - 1) pi)
double debias_probability(double pi, SamplingRatio theta);

//! pi = p / (p + theta (1 - p)), the inverse of debias_probability.
double bias_forward(double p, SamplingRatio theta);

//! p = theta / (theta + alpha); alpha = +infinity gives 0.
double probability_from_alpha(double alpha, SamplingRatio theta);

//! Debiased cell estimates of p at each distinct sampled x level.
BernoulliFit fit_debiased_discrete(std::span<const BinaryRecord> data,
                                   SamplingRatio theta);

//! Debiased kernel estimate of p(x).
double fit_debiased(std::span<const BinaryRecord> data,
                    SamplingRatio theta,
                    const Smoother& smoother,
                    double x);

BernoulliFit fit_debiased_grid(std::span<const BinaryRecord> data,
                               SamplingRatio theta,
                               const Smoother& smoother,
                               std::span<const double> grid);

//! Weighted isotonic projection of the fitted values.
BernoulliFit monotonize(const BernoulliFit& fit, Direction direction);

struct Inversion
{
  double value;
  //! The level was not crossed strictly inside the grid.
  bool boundary;
};

//! Increasing fits: inf{x : p(x) >= u}. Decreasing fits: sup{x : p(x) >= u}.
//! If the set is empty, or reaches the grid edge, the edge is returned with
//! the boundary flag set.
Inversion invert_monotone(const BernoulliFit& fit,
                          double u,
                          Direction direction);

} // namespace pobs
