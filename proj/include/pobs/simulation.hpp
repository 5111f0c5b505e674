#pragma once

#include "pobs/design.hpp"
#include "pobs/distributions.hpp"
#include "pobs/kernel.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace pobs {

//! Generative model behind every simulated design: Y = m(X) + eps with
//! companions T (left truncation), C (censoring / right truncation /
//! inspection), and for binary designs p(x) = Pr(Y=1 | X=x) with the
//! case-control sampling probabilities.
struct DesignTruth
{
  std::function<double(double)> m;
  Distribution eps = Distribution::normal(0.0, 1.0);
  Distribution x_dist = Distribution::uniform(0.0, 1.0);
  std::optional<Distribution> t_dist;
  std::optional<Distribution> c_dist;

  std::function<double(double)> p;
  std::optional<double> lambda0;
  std::optional<double> lambda1;
  std::optional<Interval> trunc_interval;

  //! Throws ConfigError when a handle the design needs is missing, when eps
  //! is not centred, or when the left-truncation support condition fails.
  void check(Design design) const;
};

//! Models used by the CLI `simulate` / `validate` commands and the test
//! suites.
DesignTruth scenario(Design design);

struct SimulatedData
{
  Design design;
  RecordSet records;
  //! raw draws needed to accept the requested records
  size_t draws = 0;
  double acceptance_rate = 0.0;
};

//! Rejection sampling of `n` records satisfying the design's observation
//! condition. Deterministic in `seed`. Throws DataError when fewer than one in
//! a thousand probe draws is accepted.
SimulatedData simulate_design(const DesignTruth& truth,
                              Design design,
                              size_t n,
                              std::uint64_t seed);

//! Deterministic 64-bit mixer used to derive independent seeds.
std::uint64_t splitmix64(std::uint64_t x);

//! Seed of replication `rep` in a run seeded with `seed`.
std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t rep);

} // namespace pobs
