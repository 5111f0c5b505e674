#include "pobs/run.hpp"
#include "pobs/bernoulli.hpp"
#include "pobs/conditional_cdf.hpp"
#include "pobs/current_status.hpp"
#include "pobs/errors.hpp"
#include "pobs/monte_carlo.hpp"
#include "pobs/quantile.hpp"
#include "pobs/simulation.hpp"
#include "pobs/truncated_regression.hpp"
#include "pobs/version.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

namespace pobs {

namespace {

std::string_view to_string(Direction d)
{
  return d == Direction::increasing ? "increasing" : "decreasing";
}

std::string_view to_string(DtNormalization n)
{
  return n == DtNormalization::renormalize ? "renormalize" : "clip";
}

std::vector<double> covariates(const RecordSet& records)
{
  std::vector<double> xs;
  std::visit(
    [&](const auto& v) {
      for (const auto& r : v) {
        if constexpr (requires { r.s; })
          if (!r.s)
            continue;
        xs.push_back(r.x);
      }
    },
    records);
  return xs;
}

// values of each schema column, in schema order
std::vector<std::vector<double>> columns(const RecordSet& records)
{
  std::vector<std::vector<double>> cols;
  auto add = [&](std::initializer_list<double> row) {
    if (cols.empty())
      cols.resize(row.size());
    size_t k = 0;
    for (double v : row)
      cols[k++].push_back(v);
  };
  std::visit(
    [&](const auto& v) {
      for (const auto& r : v) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, BinaryRecord>)
          add({ r.x, double(r.y), double(r.s) });
        else if constexpr (std::is_same_v<R, LtRecord>)
          add({ r.x, r.t, r.y });
        else if constexpr (std::is_same_v<R, LtrcRecord>)
          add({ r.x, r.t, r.z, double(r.delta) });
        else if constexpr (std::is_same_v<R, RtRecord>)
          add({ r.x, r.y, r.c });
        else if constexpr (std::is_same_v<R, DtRecord>)
          add({ r.x, r.t, r.y, r.c });
        else
          add({ r.x, r.c, double(r.delta) });
      }
    },
    records);
  return cols;
}

Smoother make_smoother(const RunConfig& config, std::span<const double> xs)
{
  const Bandwidth h = config.bandwidth ? Bandwidth::fixed(*config.bandwidth)
                                       : default_bandwidth(xs, config.exponent);
  return Smoother{ Kernel(config.kernel), h };
}

Json bandwidth_json(const Smoother& sm, size_t n, const RunConfig& config)
{
  const double h = sm.bandwidth.h();
  Json j;
  j["kernel"] = std::string(to_string(sm.kernel.kind()));
  j["h"] = h;
  if (sm.bandwidth.rule() == BandwidthRule::fixed) {
    j["rule"] = "fixed";
    // exponent implied by h = n^-a, for the (1/5, 1/3) condition check
    const double a = n > 1 ? -std::log(h) / std::log(double(n)) : 0.0;
    j["implied_exponent"] = a;
    if (!(a > 0.2 && a < 1.0 / 3.0))
      j["warning"] = "implied exponent outside (1/5, 1/3)";
  } else {
    j["rule"] = "1.06 sd n^-a";
    j["exponent"] = config.exponent;
  }
  j["n_h3"] = double(n) * h * h * h;
  return j;
}

class CsvRows
{
public:
  CsvRows() { out_ << "quantity,x,y,u,value,boundary\n"; }

  void add(std::string_view q,
           std::optional<double> x,
           std::optional<double> y,
           std::optional<double> u,
           double value,
           std::optional<bool> boundary = {})
  {
    out_ << q << ',' << opt(x) << ',' << opt(y) << ',' << opt(u) << ','
         << format_double(value) << ','
         << (boundary ? (*boundary ? "1" : "0") : "") << '\n';
  }

  std::string str() const { return out_.str(); }

private:
  static std::string opt(std::optional<double> v)
  {
    return v ? format_double(*v) : std::string();
  }
  std::ostringstream out_;
};

void write_file(const std::filesystem::path& path, const std::string& body)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw DataError("cannot write " + path.string());
  out << body;
  if (!out)
    throw DataError("write failed: " + path.string());
}

Json base_manifest(std::string_view command, const RunConfig& config)
{
  Json m;
  m["version"] = version;
  m["command"] = command;
  m["seed"] = config.seed;
  m["config_hash"] = config_hash(config);
  m["config"] = config_json(config);
  return m;
}

void finish(RunOutcome& out,
            const RunConfig& config,
            std::vector<std::pair<std::string, std::string>> files)
{
  std::filesystem::create_directories(config.output_dir);
  for (auto& [name, body] : files) {
    const auto path = config.output_dir / name;
    write_file(path, body);
    out.files.push_back(path);
  }
  const auto path = config.output_dir / "manifest.json";
  write_file(path, out.manifest.dump(2) + "\n");
  out.files.push_back(path);
}

// slices are expensive; x-inversion revisits the same grid for every (u, y)
ConditionalCdfEstimate cached(const ConditionalCdfEstimate& base)
{
  auto cache = std::make_shared<std::map<double, StepDistribution>>();
  return ConditionalCdfEstimate(base.window(), [base, cache](double x) {
    auto it = cache->find(x);
    if (it == cache->end())
      it = cache->emplace(x, base.slice(x)).first;
    return it->second;
  });
}

struct ConditionalModel
{
  ConditionalCdfEstimate cdf;
  std::function<double(double)> mean;
};

ConditionalModel conditional_model(const Dataset& data,
                                   const Smoother& sm,
                                   const RunConfig& config,
                                   Json& extra)
{
  switch (data.design) {
    case Design::left_truncated: {
      const auto& d = std::get<std::vector<LtRecord>>(data.records);
      extra["mean_T"] = mean_T(d);
      extra["mean_Y"] = mean_Y(d);
      return { conditional_cdf_estimate(d, sm),
               [&d, sm](double x) { return regression_mean(d, sm, x); } };
    }
    case Design::ltrc: {
      const auto& d = std::get<std::vector<LtrcRecord>>(data.records);
      size_t censored = 0;
      for (const auto& r : d)
        censored += r.delta ? 0 : 1;
      extra["censored"] = censored;
      return { ltrc_conditional_cdf_estimate(d, sm),
               [&d, sm](double x) { return ltrc_regression_mean(d, sm, x); } };
    }
    case Design::right_truncated: {
      const auto& d = std::get<std::vector<RtRecord>>(data.records);
      return { rt_conditional_cdf_estimate(d, sm),
               [&d, sm](double x) { return rt_regression_mean(d, sm, x); } };
    }
    case Design::double_truncated: {
      const auto& d = std::get<std::vector<DtRecord>>(data.records);
      const auto norm = config.dt_normalization;
      if (norm == DtNormalization::renormalize)
        return { dt_conditional_cdf_estimate(d, sm, norm),
                 [&d, sm](double x) { return dt_regression_mean(d, sm, x); } };
      // clipped form: mean as the jump sum of the clipped distribution
      return { dt_conditional_cdf_estimate(d, sm, norm),
               [&d, sm, norm](double x) {
                 const auto f =
                   dt_conditional_cdf(d, sm, x, dt_censoring_survival(d), norm);
                 return f.distribution.jump_sum();
               } };
    }
    case Design::current_status: {
      const auto& d = std::get<std::vector<CsRecord>>(data.records);
      Interval support{ d.front().c, d.front().c };
      for (const auto& r : d) {
        support.lo = std::min(support.lo, r.c);
        support.hi = std::max(support.hi, r.c);
      }
      if (config.support)
        support = *config.support;
      extra["support"] = { support.lo, support.hi };
      const auto xs = covariates(data.records);
      return { ConditionalCdfEstimate(
                 evaluation_window(xs, sm.bandwidth),
                 [&d, sm](double x) {
                   return fit_current_status(d, sm, x).as_distribution();
                 }),
               [&d, sm, support](double x) {
                 return regression_mean_interval(d, sm, x, support);
               } };
    }
    default:
      throw ConfigError("not a conditional-distribution design");
  }
}

void estimate_conditional(const Dataset& data,
                          const Smoother& sm,
                          const RunConfig& config,
                          CsvRows& rows,
                          Json& manifest)
{
  Json extra = Json::object();
  const ConditionalModel model = conditional_model(data, sm, config, extra);
  const ConditionalCdfEstimate cdf = cached(model.cdf);

  Json slices = Json::array();
  for (double x : config.x_grid) {
    const StepDistribution s = cdf.slice(x);
    Json sj;
    sj["x"] = x;
    sj["mass"] = s.total();
    sj["defect"] = 1.0 - s.total();
    sj["jumps"] = s.size();
    if (data.design == Design::double_truncated) {
      const auto& d = std::get<std::vector<DtRecord>>(data.records);
      const auto f = dt_conditional_cdf(
        d, sm, x, dt_censoring_survival(d), config.dt_normalization);
      sj["excluded"] = f.excluded;
      sj["clipped"] = f.clipped;
      sj["raw_total"] = f.raw_total;
    }
    slices.push_back(sj);

    try {
      rows.add("mean", x, {}, {}, model.mean(x));
    } catch (const NotEstimable& e) {
      sj["mean_error"] = e.what();
      slices.back() = sj;
    }
    for (double y : config.y_grid)
      rows.add("cdf", x, y, {}, s.cdf(y));
    for (double u : config.levels) {
      const auto q = quantile_in_y(cdf, u, x);
      rows.add("quantile_y", x, {}, u, q.value, q.boundary);
    }
  }

  const Direction dir = config.direction.value_or(Direction::decreasing);
  const auto grid = window_grid(cdf.window());
  for (double u : config.levels)
    for (double y : config.y_grid) {
      const auto q =
        quantile_in_x(cdf, u, y, grid, InXOptions{ dir, config.monotonize });
      rows.add("quantile_x", {}, y, u, q.value, q.boundary);
    }
  manifest["slices"] = slices;
  manifest["inversion"] = { { "direction", to_string(dir) },
                            { "grid_points", grid.size() } };
  if (!extra.empty())
    manifest["design_summary"] = extra;
}

void estimate_binary(const Dataset& data,
                     const Smoother& sm,
                     const RunConfig& config,
                     Interval window,
                     CsvRows& rows,
                     Json& manifest)
{
  const auto& d = std::get<std::vector<BinaryRecord>>(data.records);
  const bool cc = data.design == Design::case_control;
  if (cc && !config.theta)
    throw ConfigError("case_control estimation needs theta (lambda0/lambda1)");
  std::optional<SamplingRatio> theta;
  if (config.theta)
    theta = SamplingRatio(*config.theta);

  for (double x : config.x_grid) {
    const double pi = fit_kernel(d, sm, x);
    if (cc) {
      rows.add("probability_sampled", x, {}, {}, pi);
      rows.add("alpha", x, {}, {}, estimate_alpha(d, sm, x));
      rows.add("probability", x, {}, {}, fit_debiased(d, *theta, sm, x));
    } else {
      rows.add("probability", x, {}, {}, pi);
      if (theta)
        rows.add("probability_debiased", x, {}, {},
                 fit_debiased(d, *theta, sm, x));
    }
  }

  const Direction dir = config.direction.value_or(Direction::increasing);
  if (!config.levels.empty()) {
    const auto grid = window_grid(window);
    const BernoulliFit fit = cc ? fit_debiased_grid(d, *theta, sm, grid)
                                : fit_kernel_grid(d, sm, grid);
    const BernoulliFit mono = monotonize(fit, dir);
    for (double u : config.levels) {
      const auto q = invert_monotone(mono, u, dir);
      rows.add("quantile_x", {}, {}, u, q.value, q.boundary);
    }
  }
  Json s;
  s["control_proportion"] = control_proportion(d);
  const double tg = estimate_theta_gamma(d);
  if (std::isfinite(tg))
    s["theta_gamma"] = tg;
  else
    s["theta_gamma"] = "inf";
  manifest["design_summary"] = s;
  manifest["inversion"] = { { "direction", to_string(dir) } };
}

double parse_number(std::string_view s)
{
  double v = 0.0;
  while (!s.empty() && s.front() == ' ')
    s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ')
    s.remove_suffix(1);
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || p != end || !std::isfinite(v))
    throw ConfigError("bad number '" + std::string(s) + "' in grid");
  return v;
}

} // namespace

Json config_json(const RunConfig& c)
{
  Json j;
  Json designs = Json::array();
  for (Design d : c.designs)
    designs.push_back(std::string(to_string(d)));
  j["designs"] = designs;
  j["kernel"] = std::string(to_string(c.kernel));
  if (c.bandwidth)
    j["bandwidth"] = *c.bandwidth;
  else
    j["bandwidth_exponent"] = c.exponent;
  j["x_grid"] = c.x_grid;
  j["y_grid"] = c.y_grid;
  j["levels"] = c.levels;
  if (c.theta)
    j["theta"] = *c.theta;
  if (c.direction)
    j["direction"] = std::string(to_string(*c.direction));
  j["monotonize"] = c.monotonize;
  if (c.support)
    j["support"] = { c.support->lo, c.support->hi };
  j["dt_normalization"] = std::string(to_string(c.dt_normalization));
  j["seed"] = c.seed;
  j["n"] = c.n;
  j["reps"] = c.reps;
  if (c.tolerance)
    j["tolerance"] = *c.tolerance;
  return j;
}

std::string config_hash(const RunConfig& config)
{
  return hex64(fnv1a(config_json(config).dump()));
}

std::vector<double> parse_grid(std::string_view spec)
{
  std::vector<double> out;
  if (spec.empty())
    return out;
  if (spec.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    size_t start = 0;
    for (size_t k; (k = spec.find(':', start)) != std::string_view::npos;
         start = k + 1)
      parts.push_back(spec.substr(start, k - start));
    parts.push_back(spec.substr(start));
    if (parts.size() != 3)
      throw ConfigError("range grid must be lo:hi:count");
    const double lo = parse_number(parts[0]);
    const double hi = parse_number(parts[1]);
    const double count = parse_number(parts[2]);
    if (count < 1 || count != std::floor(count) || hi < lo)
      throw ConfigError("range grid needs lo <= hi and a positive count");
    const auto m = static_cast<size_t>(count);
    for (size_t i = 0; i < m; ++i)
      out.push_back(m == 1 ? lo
                           : lo + (hi - lo) * double(i) / double(m - 1));
    return out;
  }
  size_t start = 0;
  for (;;) {
    const size_t k = spec.find(',', start);
    out.push_back(parse_number(spec.substr(start, k - start)));
    if (k == std::string_view::npos)
      break;
    start = k + 1;
  }
  return out;
}

RunOutcome run_estimate(const Dataset& data, const RunConfig& config)
{
  for (double u : config.levels)
    if (!(u > 0.0 && u < 1.0))
      throw ConfigError("quantile levels must lie in (0, 1)");

  RunOutcome out;
  out.manifest = base_manifest("estimate", config);
  Json& m = out.manifest;
  m["design"] = std::string(to_string(data.design));
  Json reject_lines = Json::array();
  for (const auto& r : data.rejects)
    reject_lines.push_back({ { "line", r.line }, { "reason", r.reason } });
  m["input"] = { { "source", data.source },
                 { "rows_read", data.rows_read },
                 { "records", record_count(data.records) },
                 { "rejected", data.rejects.size() },
                 { "rejects", reject_lines } };

  const auto xs = covariates(data.records);
  const Smoother sm = make_smoother(config, xs);
  const Interval window = evaluation_window(xs, sm.bandwidth);
  m["bandwidth"] = bandwidth_json(sm, xs.size(), config);
  m["window"] = { window.lo, window.hi };

  for (double x : config.x_grid)
    if (!window.contains(x))
      throw NotEstimable("grid point x = " + format_double(x) +
                         " lies outside the evaluation window [" +
                         format_double(window.lo) + ", " +
                         format_double(window.hi) + "]");

  if (config.x_grid.empty() && config.levels.empty()) {
    finish(out, config, {});
    return out;
  }

  CsvRows rows;
  if (is_binary_design(data.design))
    estimate_binary(data, sm, config, window, rows, m);
  else
    estimate_conditional(data, sm, config, rows, m);
  m["outputs"] = { "estimates.csv" };
  finish(out, config, { { "estimates.csv", rows.str() } });
  return out;
}

RunOutcome run_simulate(const RunConfig& config)
{
  if (config.n == 0)
    throw ConfigError("n must be positive");
  RunOutcome out;
  out.manifest = base_manifest("simulate", config);
  Json sims = Json::array();
  std::vector<std::pair<std::string, std::string>> files;
  for (Design d : config.designs) {
    const std::uint64_t seed =
      replication_seed(config.seed, static_cast<std::uint64_t>(d));
    const SimulatedData sim = simulate_design(scenario(d), d, config.n, seed);
    std::ostringstream body;
    write_records(body, d, sim.records);
    const std::string name = std::string(to_string(d)) + ".csv";
    files.emplace_back(name, body.str());
    sims.push_back({ { "design", std::string(to_string(d)) },
                     { "file", name },
                     { "seed", seed },
                     { "records", record_count(sim.records) },
                     { "draws", sim.draws },
                     { "acceptance_rate", sim.acceptance_rate } });
  }
  out.manifest["datasets"] = sims;
  finish(out, config, std::move(files));
  return out;
}

double default_tolerance(Design design, std::string_view estimator)
{
  const bool mean = estimator == "regression_mean";
  switch (design) {
    case Design::plain:
    case Design::x_truncated:
    case Design::case_control:
      return 0.15;
    case Design::left_truncated:
      return mean ? 0.15 : 0.12;
    case Design::ltrc:
      return mean ? 0.20 : 0.12;
    case Design::right_truncated:
      return mean ? 0.20 : 0.12;
    case Design::double_truncated:
      return mean ? 0.15 : 0.10;
    case Design::current_status:
      return mean ? 0.25 : 0.12;
  }
  return 0.1;
}

RunOutcome run_validate(const RunConfig& config)
{
  if (config.n == 0 || config.reps < 2)
    throw ConfigError("validate needs n > 0 and at least two replications");
  RunOutcome out;
  out.manifest = base_manifest("validate", config);
  std::ostringstream csv;
  csv << "design,estimator,n,reps,x,y,truth,mean,bias,variance,rmse,failures\n";
  Json results = Json::array();
  for (Design d : config.designs) {
    const ValidationSetup setup = standard_validation(d);
    const std::uint64_t seed =
      replication_seed(config.seed, static_cast<std::uint64_t>(d));
    for (size_t b = 0; b < setup.bindings.size(); ++b) {
      const auto& binding = setup.bindings[b];
      const EstimatorReport r = monte_carlo(setup.truth, d, binding,
                                            setup.grids[b], config.n,
                                            config.reps, seed, config.threads);
      for (const auto& p : r.points)
        csv << to_string(d) << ',' << binding.name << ',' << r.n << ','
            << r.reps << ',' << format_double(p.at.x) << ','
            << format_double(p.at.y) << ',' << format_double(p.truth) << ','
            << format_double(p.mean) << ',' << format_double(p.bias) << ','
            << format_double(p.variance) << ',' << format_double(p.rmse)
            << ',' << p.failures << '\n';
      const double tol =
        config.tolerance.value_or(default_tolerance(d, binding.name));
      const double sup = r.mean_sup_error();
      const bool ok = std::isfinite(sup) && sup < tol;
      out.passed = out.passed && ok;
      results.push_back({ { "design", std::string(to_string(d)) },
                          { "estimator", binding.name },
                          { "seed", seed },
                          { "mean_acceptance", r.mean_acceptance },
                          { "grid_mean_rmse", r.grid_mean_rmse() },
                          { "mean_sup_error", sup },
                          { "max_sup_error", r.max_sup_error() },
                          { "failures", r.total_failures() },
                          { "tolerance", tol },
                          { "passed", ok } });
    }
  }
  out.manifest["results"] = results;
  out.manifest["passed"] = out.passed;
  finish(out, config, { { "validation.csv", csv.str() } });
  return out;
}

Json inspect(const Dataset& data, const RunConfig& config)
{
  Json j;
  j["design"] = std::string(to_string(data.design));
  j["source"] = data.source;
  j["schema"] = schema_line(data.design);
  j["rows_read"] = data.rows_read;
  j["records"] = record_count(data.records);
  Json rej = Json::array();
  for (const auto& r : data.rejects)
    rej.push_back({ { "line", r.line }, { "reason", r.reason } });
  j["rejected"] = data.rejects.size();
  j["rejects"] = rej;

  auto names = schema_columns(data.design);
  if (data.design != Design::case_control && is_binary_design(data.design))
    names.push_back("s");
  const auto cols = columns(data.records);
  Json cj = Json::object();
  for (size_t k = 0; k < cols.size() && k < names.size(); ++k) {
    const auto [lo, hi] = std::minmax_element(cols[k].begin(), cols[k].end());
    double s = 0.0;
    for (double v : cols[k])
      s += v;
    cj[names[k]] = { { "min", *lo },
                     { "max", *hi },
                     { "mean", s / double(cols[k].size()) } };
  }
  j["columns"] = cj;

  Json checks = Json::object();
  if (is_binary_design(data.design)) {
    const auto& d = std::get<std::vector<BinaryRecord>>(data.records);
    checks["control_proportion"] = control_proportion(d);
    const double tg = estimate_theta_gamma(d);
    checks["theta_gamma"] = std::isfinite(tg) ? Json(tg) : Json("inf");
  } else if (data.design == Design::left_truncated) {
    // support condition: truncation must start below the response
    checks["support_condition"] = cols[1].empty() ||
                                  *std::min_element(cols[1].begin(), cols[1].end()) <
                                    *std::min_element(cols[2].begin(), cols[2].end());
  } else if (data.design == Design::ltrc) {
    double cens = 0.0;
    for (double v : cols[3])
      cens += 1.0 - v;
    checks["censoring_rate"] = cens / double(cols[3].size());
  } else if (data.design == Design::current_status) {
    double ev = 0.0;
    for (double v : cols[2])
      ev += v;
    checks["delta_rate"] = ev / double(cols[2].size());
  }
  try {
    const auto xs = covariates(data.records);
    const Smoother sm = make_smoother(config, xs);
    const Interval w = evaluation_window(xs, sm.bandwidth);
    checks["bandwidth"] = bandwidth_json(sm, xs.size(), config);
    checks["window"] = { w.lo, w.hi };
  } catch (const std::exception& e) {
    checks["window_error"] = e.what();
  }
  j["checks"] = checks;
  return j;
}

} // namespace pobs
