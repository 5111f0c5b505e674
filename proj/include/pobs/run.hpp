#pragma once

#include "pobs/censored_truncated.hpp"
#include "pobs/design.hpp"
#include "pobs/io.hpp"
#include "pobs/isotonic.hpp"
#include "pobs/kernel.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace pobs {

using Json = nlohmann::ordered_json;

struct RunConfig
{
  std::vector<Design> designs{ Design::left_truncated };
  KernelKind kernel = KernelKind::epanechnikov;
  //! fixed bandwidth; when empty h = 1.06 sd(X) n^(-exponent)
  std::optional<double> bandwidth;
  double exponent = default_bandwidth_exponent;
  std::vector<double> x_grid;
  std::vector<double> y_grid;
  std::vector<double> levels;
  std::optional<double> theta;
  //! monotonicity used for inversion in x; default increasing for binary
  //! designs and decreasing for conditional distribution functions
  std::optional<Direction> direction;
  bool monotonize = false;
  //! support endpoints for the current-status mean; default the range of c
  std::optional<Interval> support;
  DtNormalization dt_normalization = DtNormalization::renormalize;

  std::uint64_t seed = 1;
  size_t n = 2000;
  size_t reps = 100;
  //! overrides the default validation tolerance of every estimator
  std::optional<double> tolerance;
  //! 0: POBS_THREADS or the hardware count. Not part of the config hash.
  unsigned threads = 0;
  //! Not part of the config hash.
  std::filesystem::path output_dir = ".";
};

//! Config echo as written into manifests (output paths and thread count
//! excluded, so equal manifests mean equal results).
Json config_json(const RunConfig& config);
std::string config_hash(const RunConfig& config);

//! Parses "a,b,c" or "lo:hi:count" into a list of values.
std::vector<double> parse_grid(std::string_view spec);

struct RunOutcome
{
  Json manifest;
  std::vector<std::filesystem::path> files;
  bool passed = true;
};

//! Estimates over the configured grid and writes estimates.csv and
//! manifest.json. Grid points outside the evaluation window throw
//! NotEstimable before anything is estimated.
RunOutcome run_estimate(const Dataset& data, const RunConfig& config);

//! One dataset CSV per configured design, plus manifest.json.
RunOutcome run_simulate(const RunConfig& config);

//! Monte Carlo validation of the standard estimators: validation.csv with
//! per-point summaries and validation.json with the pass/fail verdicts.
RunOutcome run_validate(const RunConfig& config);

//! Summary of a dataset and its design checks.
Json inspect(const Dataset& data, const RunConfig& config);

//! Default tolerance on the mean (over replications) of the sup error.
double default_tolerance(Design design, std::string_view estimator);

} // namespace pobs
