#include "doctest.h"

#include "common.hpp"
#include "pobs/bernoulli.hpp"
#include "pobs/errors.hpp"

#include <cmath>
#include <random>

using namespace pobs;

TEST_CASE("kernel probability: trivial cases")
{
  std::vector<BinaryRecord> ones{ { 0.1, true }, { 0.5, true }, { 0.9, true } };
  CHECK(fit_kernel(ones, testing::flat(), 0.5) == 1.0);

  std::vector<BinaryRecord> single{ { 0.5, false } };
  CHECK(fit_kernel(single, testing::flat(), 0.5) == 0.0);
}

TEST_CASE("flat kernel reduces to the global proportion")
{
  std::vector<BinaryRecord> d{
    { 0.1, true }, { 0.3, false }, { 0.3, true }, { 0.7, false }, { 0.9, true }
  };
  const double p = fit_kernel(d, testing::flat(), 0.4);
  CHECK(p == doctest::Approx(0.6).epsilon(1e-14));

  // collapsing every covariate to one level gives the same cell proportion
  auto collapsed = d;
  for (auto& r : collapsed)
    r.x = 0.0;
  const auto cells = fit_discrete_mle(collapsed);
  REQUIRE(cells.points.size() == 1);
  CHECK(cells.values[0] == doctest::Approx(p).epsilon(1e-14));
}

TEST_CASE("discrete cells")
{
  std::vector<BinaryRecord> d{ { 1.0, true }, { 1.0, false }, { 2.0, true },
                               { 2.0, true, false }, { 3.0, false } };
  const auto f = fit_discrete_mle(d);
  REQUIRE(f.points == std::vector<double>{ 1.0, 2.0, 3.0 });
  CHECK(f.values == std::vector<double>{ 0.5, 1.0, 0.0 });
  CHECK(f.weights == std::vector<double>{ 2.0, 1.0, 1.0 });
  CHECK(f.at(2.0) == 1.0);
  CHECK_THROWS_AS(f.at(2.5), std::out_of_range);
}

TEST_CASE("unsampled rows are ignored")
{
  std::vector<BinaryRecord> d{ { 0.5, true }, { 0.5, false, false } };
  CHECK(fit_kernel(d, testing::flat(), 0.5) == 1.0);
  std::vector<BinaryRecord> none{ { 0.5, true, false } };
  CHECK_THROWS_AS(fit_kernel(none, testing::flat(), 0.5), DataError);
}

TEST_CASE("bias algebra is an exact inverse pair")
{
  double worst = 0.0;
  for (int i = 0; i < 100; ++i)
    for (int j = 0; j < 100; ++j) {
      const double p = i / 99.0;
      const SamplingRatio theta(std::exp(-3.0 + 6.0 * j / 99.0));
      worst = std::max(worst,
                       std::abs(debias_probability(bias_forward(p, theta), theta) - p));
    }
  CHECK(worst < 1e-12);
  CHECK(probability_from_alpha(INFINITY, SamplingRatio(2.0)) == 0.0);
  CHECK(probability_from_alpha(2.0, SamplingRatio(2.0)) == 0.5);
  CHECK_THROWS_AS(SamplingRatio(0.0), ConfigError);
  CHECK_THROWS_AS(SamplingRatio::from_lambdas(0.5, 0.0), ConfigError);
  CHECK(SamplingRatio::from_lambdas(0.9, 0.3).value() == doctest::Approx(3.0));
}

TEST_CASE("theta = 1 leaves the fit unchanged")
{
  std::mt19937_64 rng(3);
  std::vector<BinaryRecord> d;
  for (int i = 0; i < 200; ++i) {
    const double x = testing::uniform(rng, 0.0, 1.0);
    d.push_back({ x, testing::uniform(rng, 0.0, 1.0) < x });
  }
  const auto sm = testing::smoother(KernelKind::epanechnikov, 0.2);
  for (double x : { 0.3, 0.5, 0.7 })
    CHECK(fit_debiased(d, SamplingRatio(1.0), sm, x) == fit_kernel(d, sm, x));
  const auto a = fit_debiased_discrete(d, SamplingRatio(1.0));
  CHECK(a.values.size() == d.size());
}

TEST_CASE("alpha and the debiased probability")
{
  // two cases, two controls at the same point
  std::vector<BinaryRecord> d{ { 0.0, true }, { 0.0, true }, { 0.0, false },
                               { 0.0, false } };
  const auto sm = testing::flat();
  CHECK(estimate_alpha(d, sm, 0.0) == doctest::Approx(1.0));
  CHECK(fit_debiased(d, SamplingRatio(3.0), sm, 0.0) == doctest::Approx(0.75));
  CHECK(estimate_alpha_discrete(d, 0.0) == doctest::Approx(1.0));
  std::vector<BinaryRecord> controls{ { 0.0, false } };
  CHECK(std::isinf(estimate_alpha(controls, sm, 0.0)));
  CHECK(fit_debiased(controls, SamplingRatio(3.0), sm, 0.0) == 0.0);
}

TEST_CASE("control proportion and theta*gamma")
{
  std::vector<BinaryRecord> all_cases{ { 0.0, true }, { 1.0, true } };
  CHECK(control_proportion(all_cases) == 0.0);
  CHECK(estimate_theta_gamma(all_cases) == 0.0);

  std::vector<BinaryRecord> half{ { 0.0, true }, { 1.0, false }, { 2.0, true },
                                  { 3.0, false } };
  CHECK(control_proportion(half) == 0.5);
  CHECK(estimate_theta_gamma(half) == 1.0);

  std::vector<BinaryRecord> no_cases{ { 0.0, false } };
  CHECK(std::isinf(estimate_theta_gamma(no_cases)));
  std::vector<BinaryRecord> empty;
  CHECK_THROWS_AS(estimate_theta_gamma(empty), DataError);
}

TEST_CASE("window is enforced")
{
  std::vector<BinaryRecord> d{ { 0.0, true }, { 0.5, false }, { 1.0, true } };
  const Smoother sm{ Kernel(), Bandwidth::fixed(0.2) };
  CHECK_THROWS_AS(fit_kernel(d, sm, 0.1), ConfigError);
  CHECK_NOTHROW(fit_kernel(d, sm, 0.5));
}

TEST_CASE("monotone inversion")
{
  BernoulliFit f;
  f.kind = FitKind::kernel;
  f.points = { 0.0, 1.0, 2.0, 3.0 };
  f.values = { 0.1, 0.4, 0.3, 0.9 };
  f.weights = { 1.0, 1.0, 1.0, 1.0 };
  const auto m = monotonize(f, Direction::increasing);
  CHECK(m.values == std::vector<double>{ 0.1, 0.35, 0.35, 0.9 });

  auto q = invert_monotone(m, 0.3, Direction::increasing);
  CHECK(q.value == 1.0);
  CHECK_FALSE(q.boundary);
  q = invert_monotone(m, 0.05, Direction::increasing);
  CHECK(q.value == 0.0);
  CHECK(q.boundary);
  q = invert_monotone(m, 0.95, Direction::increasing);
  CHECK(q.value == 3.0);
  CHECK(q.boundary);

  BernoulliFit dec = f;
  dec.values = { 0.9, 0.6, 0.3, 0.1 };
  q = invert_monotone(dec, 0.5, Direction::decreasing);
  CHECK(q.value == 1.0);
  CHECK_FALSE(q.boundary);
  q = invert_monotone(dec, 0.95, Direction::decreasing);
  CHECK(q.value == 0.0);
  CHECK(q.boundary);
}
