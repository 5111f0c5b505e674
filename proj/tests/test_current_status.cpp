#include "doctest.h"

#include "common.hpp"
#include "oracles.hpp"
#include "pobs/current_status.hpp"
#include "pobs/errors.hpp"
#include "pobs/isotonic.hpp"

#include <cmath>
#include <random>

using namespace pobs;

namespace {

double log_likelihood(const std::vector<CsRecord>& d,
                      const std::vector<double>& w,
                      const std::function<double(double)>& F)
{
  double l = 0.0;
  for (size_t i = 0; i < d.size(); ++i) {
    const double f = std::clamp(F(d[i].c), 1e-300, 1.0 - 1e-16);
    l += w[i] * (d[i].delta ? std::log(f) : std::log1p(-f));
  }
  return l;
}

} // namespace

TEST_CASE("current-status fit: hand cases")
{
  std::vector<CsRecord> d{ { 0.5, 1.0, true }, { 0.5, 2.0, false } };
  const auto f = fit_current_status(d, testing::flat(), 0.5);
  CHECK(f.values == std::vector<double>{ 0.5, 0.5 });
  CHECK(f(0.5) == 0.0);
  CHECK(f(1.5) == 0.5);

  std::vector<CsRecord> mono{ { 0.5, 1.0, false }, { 0.5, 2.0, false },
                              { 0.5, 3.0, true } };
  const auto g = fit_current_status(mono, testing::flat(), 0.5);
  CHECK(g.values == std::vector<double>{ 0.0, 0.0, 1.0 });
  const auto dist = g.as_distribution();
  CHECK(dist.cdf(2.5) == 0.0);
  CHECK(dist.cdf(3.0) == 1.0);

  std::vector<CsRecord> one{ { 0.5, 1.0, true }, { 0.5, 1.0, false } };
  CHECK_THROWS_AS(fit_current_status(one, testing::flat(), 0.5), DataError);
}

TEST_CASE("current-status fit equals exhaustive search with kernel weights")
{
  std::mt19937_64 rng(51);
  for (int rep = 0; rep < 100; ++rep) {
    const size_t n = 2 + rep % 4;
    std::vector<CsRecord> d;
    for (size_t i = 0; i < n; ++i)
      d.push_back({ testing::uniform(rng, 0.0, 1.0),
                    testing::uniform(rng, -1.0, 1.0),
                    testing::uniform(rng, 0.0, 1.0) < 0.5 });
    std::sort(d.begin(), d.end(),
              [](const CsRecord& a, const CsRecord& b) { return a.c < b.c; });
    const oracle::Kw kw{ KernelKind::epanechnikov, 2.0, 0.5 };
    const auto f =
      fit_current_status(d, testing::smoother(KernelKind::epanechnikov, 2.0), 0.5);
    std::vector<double> v, w;
    for (const auto& r : d) {
      w.push_back(kw(r.x));
      v.push_back((r.delta ? kw(r.x) : 0.0) / kw(r.x));
    }
    CHECK(f.values == oracle::exhaustive_isotonic(v, w));
  }
}

TEST_CASE("the isotonic fit does not lower the likelihood")
{
  std::mt19937_64 rng(52);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<CsRecord> d;
    for (int i = 0; i < 25; ++i) {
      const double x = testing::uniform(rng, 0.0, 1.0);
      const double c = testing::uniform(rng, -2.0, 2.0);
      const double y = x + testing::uniform(rng, -1.5, 1.5);
      d.push_back({ x, c, y <= c });
    }
    const auto sm = testing::smoother(KernelKind::epanechnikov, 0.6);
    const auto fit = fit_current_status(d, sm, 0.5);
    std::vector<double> w;
    for (const auto& r : d)
      w.push_back(sm.weight(0.5, r.x));
    // the pointwise frequencies need not be monotone; the fit is the best
    // monotone function, so any monotone competitor scores lower
    auto step = [](double c) { return c < 0.0 ? 0.25 : 0.75; };
    CHECK(log_likelihood(d, w, [&](double c) { return fit(c); }) >=
          log_likelihood(d, w, step) - 1e-12);
    CHECK(is_monotone(fit.values, Direction::increasing));
  }
}

TEST_CASE("interval B estimate counts records")
{
  std::vector<CsRecord> d{ { 0.5, 1.0, true }, { 0.5, 2.0, false },
                           { 0.5, 3.0, true }, { 0.5, 4.0, true } };
  const auto sm = testing::flat();
  CHECK(estimate_B_interval(d, sm, 0.5, 0.5) == 0.0);
  CHECK(estimate_B_interval(d, sm, 2.5, 0.5) == doctest::Approx(0.25));
  CHECK(estimate_B_interval(d, sm, 10.0, 0.5) == doctest::Approx(0.75));
  std::vector<CsRecord> all{ { 0.5, 1.0, true }, { 0.5, 2.0, true } };
  CHECK(estimate_B_interval(all, sm, 2.0, 0.5) == 1.0);
}

TEST_CASE("mean of the fitted curve")
{
  const Interval support{ -5.0, 5.0 };
  std::vector<CsRecord> jump{ { 0.5, 0.0, false }, { 0.5, 1.0, true },
                              { 0.5, 2.0, true } };
  CHECK(regression_mean_interval(jump, testing::flat(), 0.5, support) == 1.0);

  // jumps of one half at -1 and 1
  std::vector<CsRecord> sym{ { 0.5, -2.0, false }, { 0.5, -1.0, true },
                             { 0.5, -1.0, false }, { 0.5, 1.0, true } };
  CHECK(std::abs(regression_mean_interval(sym, testing::flat(), 0.5, support)) <
        1e-12);

  std::vector<CsRecord> tail{ { 0.5, 0.0, true }, { 0.5, 1.0, true } };
  CHECK_THROWS_AS(regression_mean_interval(tail, testing::flat(), 0.5, support),
                  NotEstimable);
}

TEST_CASE("deconvolution diagnostic")
{
  std::vector<CsRecord> d{ { 0.5, 1.0, true }, { 0.5, 2.0, false },
                           { 0.5, 3.0, true }, { 0.5, 4.0, true } };
  const std::vector<double> cuts{ 0.0, 2.5, 5.0, 6.0 };
  const auto bins = deconvolution_diagnostic(d, testing::flat(), 0.5, cuts);
  REQUIRE(bins.size() == 3);
  CHECK(bins[0].ratio == doctest::Approx(0.5));
  CHECK(bins[1].ratio == doctest::Approx(1.0));
  CHECK(std::isnan(bins[2].ratio));
  const std::vector<double> bad{ 1.0 };
  CHECK_THROWS_AS(deconvolution_diagnostic(d, testing::flat(), 0.5, bad),
                  ConfigError);
}
