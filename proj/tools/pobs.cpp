#include "pobs/errors.hpp"
#include "pobs/run.hpp"
#include "pobs/version.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace pobs;

namespace {

enum Exit
{
  ok = 0,
  config_error = 2,
  data_error = 3,
  infeasible = 4,
  validation_failed = 5
};

struct Flags
{
  std::string design = "left_truncated";
  std::string kernel = "epanechnikov";
  std::optional<double> bandwidth;
  double exponent = default_bandwidth_exponent;
  std::string x_grid, y_grid, levels;
  std::optional<double> theta;
  std::string direction;
  bool monotonize = false;
  std::optional<double> support_lo, support_hi;
  std::string dt_normalization = "renormalize";
  std::uint64_t seed = 1;
  size_t n = 2000;
  size_t reps = 100;
  std::optional<double> tolerance;
  unsigned threads = 0;
  std::string out = ".";
  std::string input;
};

std::vector<Design> designs_from(const std::string& s)
{
  if (s == "all")
    return { all_designs.begin(), all_designs.end() };
  std::vector<Design> out;
  size_t start = 0;
  for (;;) {
    const size_t k = s.find(',', start);
    out.push_back(design_from_string(s.substr(start, k - start)));
    if (k == std::string::npos)
      break;
    start = k + 1;
  }
  return out;
}

RunConfig to_config(const Flags& f)
{
  RunConfig c;
  c.designs = designs_from(f.design);
  c.kernel = kernel_kind_from_string(f.kernel);
  c.bandwidth = f.bandwidth;
  c.exponent = f.exponent;
  c.x_grid = parse_grid(f.x_grid);
  c.y_grid = parse_grid(f.y_grid);
  c.levels = parse_grid(f.levels);
  c.theta = f.theta;
  if (f.direction == "increasing")
    c.direction = Direction::increasing;
  else if (f.direction == "decreasing")
    c.direction = Direction::decreasing;
  else if (!f.direction.empty())
    throw ConfigError("direction must be increasing or decreasing");
  c.monotonize = f.monotonize;
  if (f.support_lo || f.support_hi) {
    if (!f.support_lo || !f.support_hi || !(*f.support_lo < *f.support_hi))
      throw ConfigError("--support-lo and --support-hi go together, lo < hi");
    c.support = Interval{ *f.support_lo, *f.support_hi };
  }
  if (f.dt_normalization == "renormalize")
    c.dt_normalization = DtNormalization::renormalize;
  else if (f.dt_normalization == "clip")
    c.dt_normalization = DtNormalization::clip;
  else
    throw ConfigError("dt-normalization must be renormalize or clip");
  c.seed = f.seed;
  c.n = f.n;
  c.reps = f.reps;
  c.tolerance = f.tolerance;
  c.threads = f.threads;
  c.output_dir = f.out;
  return c;
}

Dataset load(const Flags& f, const RunConfig& c)
{
  if (c.designs.size() != 1)
    throw ConfigError("a dataset has exactly one design");
  return ingest_file(f.input, c.designs.front());
}

void report_rejects(const Dataset& d)
{
  for (const auto& r : d.rejects)
    std::cerr << d.source << ":" << r.line << ": rejected: " << r.reason
              << "\n";
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{ "Kernel product-limit estimators for truncated, censored and "
                "biased samples" };
  app.set_version_flag("--version", std::string(version));
  app.require_subcommand(1);
  Flags f;

  auto design_opt = [&](CLI::App* s, const std::string& help) {
    s->add_option("-d,--design", f.design, help)->capture_default_str();
  };
  auto smoothing = [&](CLI::App* s) {
    s->add_option("--kernel", f.kernel,
                  "epanechnikov | triangular | gaussian | uniform")
      ->capture_default_str();
    s->add_option("--bandwidth", f.bandwidth, "fixed bandwidth h");
    s->add_option("--exponent", f.exponent,
                  "a in h = 1.06 sd(X) n^-a, within (0.2, 1/3)")
      ->capture_default_str();
  };

  auto* est = app.add_subcommand("estimate", "estimate over a grid");
  design_opt(est, "dataset design");
  est->add_option("-i,--input", f.input, "CSV dataset")->required();
  smoothing(est);
  est->add_option("--x-grid", f.x_grid, "x values: a,b,c or lo:hi:count");
  est->add_option("--y-grid", f.y_grid, "y values: a,b,c or lo:hi:count");
  est->add_option("--levels", f.levels, "quantile levels in (0,1)");
  est->add_option("--theta", f.theta, "lambda0 / lambda1");
  est->add_option("--direction", f.direction,
                  "monotonicity in x used for inversion");
  est->add_flag("--monotonize", f.monotonize,
                "isotonic smoothing of the x-profile before inversion");
  est->add_option("--support-lo", f.support_lo, "current-status support");
  est->add_option("--support-hi", f.support_hi, "current-status support");
  est->add_option("--dt-normalization", f.dt_normalization,
                  "renormalize | clip")
    ->capture_default_str();
  est->add_option("--seed", f.seed, "recorded in the manifest");
  est->add_option("-o,--out", f.out, "output directory")->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "write simulated datasets");
  design_opt(sim, "design list or 'all'");
  sim->add_option("-n", f.n, "records per dataset")->capture_default_str();
  sim->add_option("--seed", f.seed)->capture_default_str();
  sim->add_option("-o,--out", f.out, "output directory")->capture_default_str();

  auto* val = app.add_subcommand("validate", "Monte Carlo validation");
  design_opt(val, "design list or 'all'");
  val->add_option("-n", f.n, "sample size")->capture_default_str();
  val->add_option("--reps", f.reps, "replications")->capture_default_str();
  val->add_option("--seed", f.seed)->capture_default_str();
  val->add_option("--tolerance", f.tolerance,
                  "bound on the mean sup error for every estimator");
  val->add_option("--threads", f.threads,
                  "worker threads (default POBS_THREADS or all cores)");
  val->add_option("-o,--out", f.out, "output directory")->capture_default_str();

  auto* ins = app.add_subcommand("inspect", "dataset summary and checks");
  design_opt(ins, "dataset design");
  ins->add_option("-i,--input", f.input, "CSV dataset")->required();
  smoothing(ins);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  try {
    const RunConfig c = to_config(f);
    if (*est) {
      const Dataset d = load(f, c);
      report_rejects(d);
      const auto r = run_estimate(d, c);
      for (const auto& p : r.files)
        std::cout << p.string() << "\n";
    } else if (*sim) {
      const auto r = run_simulate(c);
      for (const auto& p : r.files)
        std::cout << p.string() << "\n";
    } else if (*val) {
      const auto r = run_validate(c);
      for (const auto& res : r.manifest["results"])
        std::cout << res["design"].get<std::string>() << " "
                  << res["estimator"].get<std::string>()
                  << " mean_sup_error=" << res["mean_sup_error"].dump()
                  << " tolerance=" << res["tolerance"].dump() << " "
                  << (res["passed"].get<bool>() ? "ok" : "FAIL") << "\n";
      if (!r.passed)
        return validation_failed;
    } else if (*ins) {
      const Dataset d = load(f, c);
      std::cout << inspect(d, c).dump(2) << "\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const NotEstimable& e) {
    std::cerr << "not estimable: " << e.what() << "\n";
    return infeasible;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return data_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return data_error;
  }
  return ok;
}
