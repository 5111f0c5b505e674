#pragma once

#include "pobs/simulation.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pobs {

struct GridPoint
{
  double x;
  double y = 0.0;
};

//! Estimator under study: maps one simulated sample to estimates at every
//! grid point (NaN marks a failure at that point), plus the target value.
struct EstimatorBinding
{
  std::string name;
  std::function<std::vector<double>(const SimulatedData&,
                                    std::span<const GridPoint>)>
    estimate;
  std::function<double(const GridPoint&)> truth;
};

struct PointSummary
{
  GridPoint at;
  double truth = 0.0;
  double mean = 0.0;
  double bias = 0.0;
  double variance = 0.0;
  double rmse = 0.0;
  size_t failures = 0;
};

struct EstimatorReport
{
  Design design;
  std::string estimator;
  size_t n = 0;
  size_t reps = 0;
  std::uint64_t seed = 0;
  double mean_acceptance = 0.0;
  std::vector<PointSummary> points;
  //! max over grid points of |estimate - truth|, per replication (NaN when
  //! the replication failed at every point)
  std::vector<double> sup_error;

  double grid_mean_rmse() const;
  double mean_sup_error() const;
  double max_sup_error() const;
  size_t total_failures() const;
};

//! Number of worker threads: POBS_THREADS if set, else the hardware count.
unsigned default_thread_count();

//! Replicates simulate -> estimate `reps` times. Replication r uses
//! replication_seed(seed, r); results do not depend on the thread count.
EstimatorReport monte_carlo(const DesignTruth& truth,
                            Design design,
                            const EstimatorBinding& binding,
                            std::span<const GridPoint> grid,
                            size_t n,
                            size_t reps,
                            std::uint64_t seed,
                            unsigned threads = 0);

//! Bandwidth used by the standard bindings: Epanechnikov kernel with
//! h = 1.06 sd(X) n^(-1/4).
Smoother standard_smoother(std::span<const double> xs);

//! Standard validation setup for one design: truth model, estimator
//! bindings (conditional distribution and, where defined, regression mean or
//! probability) and evaluation grids.
struct ValidationSetup
{
  DesignTruth truth;
  std::vector<EstimatorBinding> bindings;
  std::vector<std::vector<GridPoint>> grids; // one per binding
};

ValidationSetup standard_validation(Design design);

} // namespace pobs
