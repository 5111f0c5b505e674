#include "pobs/simulation.hpp"
#include "pobs/errors.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace pobs {

namespace {

constexpr size_t probe_draws = 10000;
constexpr double min_acceptance = 1e-3;

double logistic(double v)
{
  return 1.0 / (1.0 + std::exp(-v));
}

//! Uniform draws in (0, 1) from the top 53 bits of a 64-bit engine.
class UniformSource
{
public:
  explicit UniformSource(std::uint64_t seed)
    : engine_(seed)
  {}

  double operator()()
  {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

private:
  std::mt19937_64 engine_;
};

[[noreturn]] void missing(std::string_view what, Design design)
{
  throw ConfigError("design " + std::string(to_string(design)) +
                    " needs " + std::string(what));
}

} // namespace

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t rep)
{
  return splitmix64(seed ^ splitmix64(rep));
}

void DesignTruth::check(Design design) const
{
  if (is_binary_design(design)) {
    if (!p)
      missing("a probability model p(x)", design);
    if (design == Design::case_control && !(lambda0 && lambda1))
      missing("sampling probabilities lambda0 and lambda1", design);
    if (design == Design::x_truncated && !trunc_interval)
      missing("a truncation interval [a, b]", design);
    return;
  }
  if (!m)
    missing("a regression function m(x)", design);
  if (std::abs(eps.mean()) > 1e-12 || !std::isfinite(eps.variance()))
    throw ConfigError("the noise distribution must be centred with finite "
                      "variance");
  const bool needs_t = design == Design::left_truncated ||
                       design == Design::ltrc ||
                       design == Design::double_truncated;
  const bool needs_c = design != Design::left_truncated;
  if (needs_t && !t_dist)
    missing("a truncation distribution F_T", design);
  if (needs_c && !c_dist)
    missing("a censoring/inspection distribution F_C", design);

  // the double-truncation model only identifies F on the range where both
  // truncation variables leave room, so the check is for left truncation
  if (needs_t && design != Design::double_truncated) {
    // lower support of Y given x must lie above that of T
    double lowest_m = std::numeric_limits<double>::infinity();
    const double lo = x_dist.support_lo();
    const double hi = x_dist.support_hi();
    for (int k = 0; k <= 200; ++k)
      lowest_m = std::min(lowest_m, m(lo + (hi - lo) * k / 200.0));
    if (!(t_dist->support_lo() < eps.support_lo() + lowest_m))
      throw ConfigError("support condition violated: the truncation variable "
                        "does not reach below the response support");
  }
}

DesignTruth scenario(Design design)
{
  DesignTruth truth;
  truth.x_dist = Distribution::uniform(0.0, 1.0);
  switch (design) {
    case Design::plain:
      truth.p = [](double x) { return logistic(2.0 * x - 1.0); };
      break;
    case Design::case_control:
      truth.p = [](double x) { return logistic(2.0 * x - 1.0); };
      truth.lambda1 = 0.3;
      truth.lambda0 = 0.9;
      break;
    case Design::x_truncated:
      truth.p = [](double x) { return x; };
      truth.trunc_interval = Interval{ 0.0, 0.5 };
      break;
    case Design::left_truncated:
      truth.m = [](double x) { return 1.0 + 2.0 * x; };
      truth.eps = Distribution::normal(0.0, 0.5);
      truth.t_dist = Distribution::normal(-1.0, 1.0);
      break;
    case Design::ltrc:
      truth.m = [](double x) { return 1.0 + 2.0 * x; };
      truth.eps = Distribution::normal(0.0, 0.5);
      truth.t_dist = Distribution::normal(-1.0, 1.0);
      truth.c_dist = Distribution::normal(3.0, 1.0);
      break;
    case Design::right_truncated:
      truth.m = [](double x) { return 1.0 + 2.0 * x; };
      truth.eps = Distribution::normal(0.0, 0.5);
      truth.c_dist = Distribution::normal(3.0, 1.0);
      break;
    case Design::double_truncated:
      truth.m = [](double x) { return 1.0 + 2.0 * x; };
      truth.eps = Distribution::normal(0.0, 0.5);
      truth.t_dist = Distribution::uniform(-2.0, -1.0);
      truth.c_dist = Distribution::uniform(3.0, 4.0);
      break;
    case Design::current_status:
      truth.m = [](double x) { return x; };
      truth.eps = Distribution::normal(0.0, 1.0);
      truth.x_dist = Distribution::uniform(-1.0, 1.0);
      truth.c_dist = Distribution::uniform(-3.0, 3.0);
      break;
  }
  return truth;
}

SimulatedData simulate_design(const DesignTruth& truth,
                              Design design,
                              size_t n,
                              std::uint64_t seed)
{
  truth.check(design);
  if (n == 0)
    throw ConfigError("requested sample size is zero");

  UniformSource unif(seed);
  SimulatedData out;
  out.design = design;

  auto run = [&](auto& records, auto&& draw_one) {
    records.reserve(n);
    while (records.size() < n) {
      ++out.draws;
      draw_one(records);
      if (out.draws == probe_draws &&
          double(records.size()) < min_acceptance * double(out.draws))
        throw DataError("infeasible design: acceptance rate below 1e-3 "
                        "after the probe draws");
    }
  };

  switch (design) {
    case Design::plain:
    case Design::case_control:
    case Design::x_truncated: {
      std::vector<BinaryRecord> records;
      run(records, [&](auto& recs) {
        const double x = truth.x_dist.quantile(unif());
        const bool y = unif() < truth.p(x);
        const double us = unif();
        bool keep = true;
        if (design == Design::case_control)
          keep = us < (y ? *truth.lambda1 : *truth.lambda0);
        if (design == Design::x_truncated)
          keep = truth.trunc_interval->contains(x);
        if (keep)
          recs.push_back({ x, y, true });
      });
      out.records = std::move(records);
      break;
    }
    case Design::left_truncated: {
      std::vector<LtRecord> records;
      run(records, [&](auto& recs) {
        const double x = truth.x_dist.quantile(unif());
        const double y = truth.m(x) + truth.eps.quantile(unif());
        const double t = truth.t_dist->quantile(unif());
        if (t <= y)
          recs.push_back({ x, t, y });
      });
      out.records = std::move(records);
      break;
    }
    case Design::ltrc: {
      std::vector<LtrcRecord> records;
      run(records, [&](auto& recs) {
        const double x = truth.x_dist.quantile(unif());
        const double y = truth.m(x) + truth.eps.quantile(unif());
        const double t = truth.t_dist->quantile(unif());
        const double c = truth.c_dist->quantile(unif());
        const double z = std::min(y, c);
        if (t <= z)
          recs.push_back({ x, t, z, y <= c });
      });
      out.records = std::move(records);
      break;
    }
    case Design::right_truncated: {
      std::vector<RtRecord> records;
      run(records, [&](auto& recs) {
        const double x = truth.x_dist.quantile(unif());
        const double y = truth.m(x) + truth.eps.quantile(unif());
        const double c = truth.c_dist->quantile(unif());
        if (y <= c)
          recs.push_back({ x, y, c });
      });
      out.records = std::move(records);
      break;
    }
    case Design::double_truncated: {
      std::vector<DtRecord> records;
      run(records, [&](auto& recs) {
        const double x = truth.x_dist.quantile(unif());
        const double y = truth.m(x) + truth.eps.quantile(unif());
        const double t = truth.t_dist->quantile(unif());
        const double c = truth.c_dist->quantile(unif());
        if (t <= y && y <= c)
          recs.push_back({ x, t, y, c });
      });
      out.records = std::move(records);
      break;
    }
    case Design::current_status: {
      std::vector<CsRecord> records;
      run(records, [&](auto& recs) {
        const double x = truth.x_dist.quantile(unif());
        const double y = truth.m(x) + truth.eps.quantile(unif());
        const double c = truth.c_dist->quantile(unif());
        recs.push_back({ x, c, y <= c });
      });
      out.records = std::move(records);
      break;
    }
  }
  out.acceptance_rate = double(n) / double(out.draws);
  return out;
}

} // namespace pobs
