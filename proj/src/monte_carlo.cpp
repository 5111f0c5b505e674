#include "pobs/monte_carlo.hpp"
#include "pobs/errors.hpp"
#include "pobs/bernoulli.hpp"
#include "pobs/censored_truncated.hpp"
#include "pobs/current_status.hpp"
#include "pobs/oracle.hpp"
#include "pobs/truncated_regression.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <thread>

namespace pobs {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

template<class Record>
std::vector<double> covariates(const std::vector<Record>& data)
{
  std::vector<double> xs(data.size());
  for (size_t i = 0; i < data.size(); ++i)
    xs[i] = data[i].x;
  return xs;
}

//! Evaluates `per_x(x)` once per distinct grid abscissa and `value(result, y)`
//! at each grid point; an exception at x marks all its points as failed.
template<class PerX, class Value>
std::vector<double> by_abscissa(std::span<const GridPoint> grid,
                                PerX&& per_x,
                                Value&& value)
{
  std::vector<double> out(grid.size(), nan);
  std::map<double, std::vector<size_t>> groups;
  for (size_t i = 0; i < grid.size(); ++i)
    groups[grid[i].x].push_back(i);
  for (const auto& [x, idx] : groups) {
    try {
      const auto r = per_x(x);
      for (size_t i : idx)
        out[i] = value(r, grid[i].y);
    } catch (const std::exception&) {
      // failure at this abscissa stays NaN
    }
  }
  return out;
}

template<class Record, class Slicer>
EstimatorBinding cdf_binding(const DesignTruth& truth, Slicer slicer)
{
  EstimatorBinding b;
  b.name = "conditional_cdf";
  b.estimate = [slicer](const SimulatedData& sim,
                        std::span<const GridPoint> grid) {
    const auto& data = std::get<std::vector<Record>>(sim.records);
    const Smoother sm = standard_smoother(covariates(data));
    return by_abscissa(
      grid,
      [&](double x) { return slicer(data, sm, x); },
      [](const StepDistribution& d, double y) { return d.cdf(y); });
  };
  b.truth = [truth](const GridPoint& g) {
    return oracle_conditional_cdf(truth, g.y, g.x);
  };
  return b;
}

template<class Record, class Mean>
EstimatorBinding mean_binding(const DesignTruth& truth, Mean mean)
{
  EstimatorBinding b;
  b.name = "regression_mean";
  b.estimate = [mean](const SimulatedData& sim,
                      std::span<const GridPoint> grid) {
    const auto& data = std::get<std::vector<Record>>(sim.records);
    const Smoother sm = standard_smoother(covariates(data));
    return by_abscissa(
      grid,
      [&](double x) { return mean(data, sm, x); },
      [](double v, double) { return v; });
  };
  b.truth = [truth](const GridPoint& g) { return truth.m(g.x); };
  return b;
}

std::vector<GridPoint> cdf_grid(const DesignTruth& truth,
                                std::initializer_list<double> xs,
                                double spread)
{
  std::vector<GridPoint> grid;
  for (double x : xs)
    for (double z : { -1.0, -0.5, 0.0, 0.5, 1.0 })
      grid.push_back({ x, truth.m(x) + z * spread });
  return grid;
}

std::vector<GridPoint> x_grid(std::initializer_list<double> xs)
{
  std::vector<GridPoint> grid;
  for (double x : xs)
    grid.push_back({ x, 0.0 });
  return grid;
}

} // namespace

double EstimatorReport::grid_mean_rmse() const
{
  double s = 0.0;
  size_t k = 0;
  for (const auto& p : points)
    if (std::isfinite(p.rmse)) {
      s += p.rmse;
      ++k;
    }
  return k ? s / double(k) : nan;
}

double EstimatorReport::mean_sup_error() const
{
  double s = 0.0;
  size_t k = 0;
  for (double e : sup_error)
    if (std::isfinite(e)) {
      s += e;
      ++k;
    }
  return k ? s / double(k) : nan;
}

double EstimatorReport::max_sup_error() const
{
  double m = 0.0;
  bool any = false;
  for (double e : sup_error)
    if (std::isfinite(e)) {
      m = std::max(m, e);
      any = true;
    }
  return any ? m : nan;
}

size_t EstimatorReport::total_failures() const
{
  size_t f = 0;
  for (const auto& p : points)
    f += p.failures;
  return f;
}

unsigned default_thread_count()
{
  if (const char* env = std::getenv("POBS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0)
      return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

EstimatorReport monte_carlo(const DesignTruth& truth,
                            Design design,
                            const EstimatorBinding& binding,
                            std::span<const GridPoint> grid,
                            size_t n,
                            size_t reps,
                            std::uint64_t seed,
                            unsigned threads)
{
  if (reps < 2)
    throw ConfigError("Monte Carlo needs at least two replications");
  truth.check(design);

  std::vector<std::vector<double>> estimates(reps);
  std::vector<double> acceptance(reps, 0.0);
  std::atomic<size_t> next{ 0 };
  auto worker = [&] {
    for (size_t r = next++; r < reps; r = next++) {
      const SimulatedData sim =
        simulate_design(truth, design, n, replication_seed(seed, r));
      acceptance[r] = sim.acceptance_rate;
      try {
        estimates[r] = binding.estimate(sim, grid);
      } catch (const std::exception&) {
        estimates[r].assign(grid.size(), nan);
      }
      if (estimates[r].size() != grid.size())
        estimates[r].assign(grid.size(), nan);
    }
  };
  const unsigned nthreads = std::max(
    1u, std::min<unsigned>(threads ? threads : default_thread_count(),
                           static_cast<unsigned>(reps)));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < nthreads; ++k)
      pool.emplace_back(worker);
  }

  // aggregation runs in replication order so the report is bit-identical
  // for any thread count
  EstimatorReport report;
  report.design = design;
  report.estimator = binding.name;
  report.n = n;
  report.reps = reps;
  report.seed = seed;
  double acc = 0.0;
  for (double a : acceptance)
    acc += a;
  report.mean_acceptance = acc / double(reps);

  std::vector<double> truths(grid.size());
  for (size_t i = 0; i < grid.size(); ++i)
    truths[i] = binding.truth(grid[i]);

  report.sup_error.assign(reps, nan);
  for (size_t r = 0; r < reps; ++r) {
    double sup = -1.0;
    for (size_t i = 0; i < grid.size(); ++i)
      if (std::isfinite(estimates[r][i]))
        sup = std::max(sup, std::abs(estimates[r][i] - truths[i]));
    if (sup >= 0.0)
      report.sup_error[r] = sup;
  }

  for (size_t i = 0; i < grid.size(); ++i) {
    PointSummary p;
    p.at = grid[i];
    p.truth = truths[i];
    double sum = 0.0;
    double sq = 0.0;
    size_t k = 0;
    for (size_t r = 0; r < reps; ++r) {
      const double e = estimates[r][i];
      if (!std::isfinite(e)) {
        ++p.failures;
        continue;
      }
      sum += e;
      sq += (e - p.truth) * (e - p.truth);
      ++k;
    }
    if (k == 0) {
      p.mean = p.bias = p.variance = p.rmse = nan;
    } else {
      p.mean = sum / double(k);
      p.bias = p.mean - p.truth;
      p.rmse = std::sqrt(sq / double(k));
      double ss = 0.0;
      for (size_t r = 0; r < reps; ++r) {
        const double e = estimates[r][i];
        if (std::isfinite(e))
          ss += (e - p.mean) * (e - p.mean);
      }
      p.variance = k > 1 ? ss / double(k - 1) : 0.0;
    }
    report.points.push_back(p);
  }
  return report;
}

Smoother standard_smoother(std::span<const double> xs)
{
  return Smoother{ Kernel(KernelKind::epanechnikov),
                   default_bandwidth(xs, default_bandwidth_exponent) };
}

ValidationSetup standard_validation(Design design)
{
  ValidationSetup v;
  v.truth = scenario(design);
  const DesignTruth& truth = v.truth;
  const auto interior = { 0.3, 0.4, 0.5, 0.6, 0.7 };

  switch (design) {
    case Design::left_truncated:
      v.bindings.push_back(cdf_binding<LtRecord>(
        truth, [](const auto& d, const Smoother& s, double x) {
          return conditional_cdf(d, s, x);
        }));
      v.grids.push_back(cdf_grid(truth, interior, 0.5));
      v.bindings.push_back(mean_binding<LtRecord>(
        truth, [](const auto& d, const Smoother& s, double x) {
          return regression_mean(d, s, x);
        }));
      v.grids.push_back(x_grid(interior));
      break;
    case Design::ltrc:
      v.bindings.push_back(cdf_binding<LtrcRecord>(
        truth, [](const auto& d, const Smoother& s, double x) {
          return ltrc_conditional_survival(d, s, x);
        }));
      v.grids.push_back(cdf_grid(truth, interior, 0.5));
      v.bindings.push_back(mean_binding<LtrcRecord>(
        truth, [](const auto& d, const Smoother& s, double x) {
          return ltrc_regression_mean(d, s, x);
        }));
      v.grids.push_back(x_grid(interior));
      break;
    case Design::right_truncated:
      v.bindings.push_back(cdf_binding<RtRecord>(
        truth, [](const auto& d, const Smoother& s, double x) {
          return rt_conditional_cdf(d, s, x);
        }));
      v.grids.push_back(cdf_grid(truth, interior, 0.5));
      v.bindings.push_back(mean_binding<RtRecord>(
        truth, [](const auto& d, const Smoother& s, double x) {
          return rt_regression_mean(d, s, x);
        }));
      v.grids.push_back(x_grid(interior));
      break;
    case Design::double_truncated:
      v.bindings.push_back(cdf_binding<DtRecord>(
        truth, [](const auto& d, const Smoother& s, double x) {
          return dt_conditional_cdf(d, s, x, dt_censoring_survival(d))
            .distribution;
        }));
      v.grids.push_back(cdf_grid(truth, interior, 0.5));
      v.bindings.push_back(mean_binding<DtRecord>(
        truth, [](const auto& d, const Smoother& s, double x) {
          return dt_regression_mean(d, s, x);
        }));
      v.grids.push_back(x_grid(interior));
      break;
    case Design::current_status: {
      v.bindings.push_back(cdf_binding<CsRecord>(
        truth, [](const auto& d, const Smoother& s, double x) {
          return fit_current_status(d, s, x).as_distribution();
        }));
      std::vector<GridPoint> grid;
      for (double x : { -0.25, 0.0, 0.25 })
        for (double t = -2.0; t <= 2.0 + 1e-12; t += 0.5)
          grid.push_back({ x, x + t });
      v.grids.push_back(grid);
      v.bindings.push_back(mean_binding<CsRecord>(
        truth, [](const auto& d, const Smoother& s, double x) {
          return regression_mean_interval(d, s, x, Interval{ -3.0, 3.0 });
        }));
      v.grids.push_back(x_grid({ -0.25, 0.0, 0.25 }));
      break;
    }
    case Design::plain:
    case Design::x_truncated:
    case Design::case_control: {
      EstimatorBinding b;
      const bool debias = design == Design::case_control;
      b.name = debias ? "debiased_probability" : "kernel_probability";
      const double theta =
        debias ? *truth.lambda0 / *truth.lambda1 : 1.0;
      b.estimate = [debias, theta](const SimulatedData& sim,
                                   std::span<const GridPoint> grid) {
        const auto& data = std::get<std::vector<BinaryRecord>>(sim.records);
        const Smoother sm = standard_smoother(covariates(data));
        return by_abscissa(
          grid,
          [&](double x) {
            return debias ? fit_debiased(data, SamplingRatio(theta), sm, x)
                          : fit_kernel(data, sm, x);
          },
          [](double v, double) { return v; });
      };
      b.truth = [truth](const GridPoint& g) { return truth.p(g.x); };
      v.bindings.push_back(std::move(b));
      v.grids.push_back(design == Design::x_truncated
                          ? x_grid({ 0.15, 0.2, 0.25, 0.3, 0.35 })
                          : x_grid({ 0.2, 0.35, 0.5, 0.65, 0.8 }));
      break;
    }
  }
  return v;
}

} // namespace pobs
