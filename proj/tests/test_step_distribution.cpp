#include "doctest.h"

#include "pobs/step_distribution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

using namespace pobs;

TEST_CASE("step distribution evaluation")
{
  const StepDistribution d({ 1.0, 2.0, 4.0 }, { 0.2, 0.3, 0.5 });
  CHECK(d.cdf(0.5) == 0.0);
  CHECK(d.cdf(1.0) == doctest::Approx(0.2));
  CHECK(d.left_limit(1.0) == 0.0);
  CHECK(d.cdf(3.0) == doctest::Approx(0.5));
  CHECK(d.left_limit(4.0) == doctest::Approx(0.5));
  CHECK(d.cdf(4.0) == doctest::Approx(1.0));
  CHECK(d.survival(2.0) == doctest::Approx(0.5));
  CHECK(d.survival_left(2.0) == doctest::Approx(0.8));
  CHECK_FALSE(d.defective());
  CHECK(d.jump_sum() == doctest::Approx(0.2 + 0.6 + 2.0));
  CHECK(d.size() == 3);

  const auto s = d.shifted(-1.0);
  CHECK(s.cdf(0.0) == doctest::Approx(0.2));
  CHECK(s.jump_sum() == doctest::Approx(d.jump_sum() - 1.0));
}

TEST_CASE("defective and empty distributions")
{
  const StepDistribution d({ 0.0 }, { 0.4 });
  CHECK(d.defective());
  CHECK(d.total() == doctest::Approx(0.4));
  const StepDistribution e;
  CHECK(e.empty());
  CHECK(e.cdf(1.0) == 0.0);
  CHECK(e.total() == 0.0);
}

TEST_CASE("construction from cdf values")
{
  const auto d = StepDistribution::from_cdf_values({ 1.0, 3.0 }, { 0.25, 1.0 });
  CHECK(d.masses()[0] == doctest::Approx(0.25));
  CHECK(d.masses()[1] == doctest::Approx(0.75));
  CHECK_THROWS_AS(StepDistribution::from_cdf_values({ 1.0, 3.0 }, { 0.5, 0.25 }),
                  std::invalid_argument);
}

TEST_CASE("invalid inputs")
{
  CHECK_THROWS_AS(StepDistribution({ 2.0, 1.0 }, { 0.5, 0.5 }),
                  std::invalid_argument);
  CHECK_THROWS_AS(StepDistribution({ 1.0, 1.0 }, { 0.5, 0.5 }),
                  std::invalid_argument);
  CHECK_THROWS_AS(StepDistribution({ 1.0 }, { -0.1 }), std::invalid_argument);
  CHECK_THROWS_AS(StepDistribution({ 1.0, 2.0 }, { 0.6, 0.6 }),
                  std::invalid_argument);
  CHECK_THROWS_AS(StepDistribution({ NAN }, { 0.5 }), std::invalid_argument);
  CHECK_NOTHROW(StepDistribution(
    { -std::numeric_limits<double>::infinity(), 0.0 }, { 0.5, 0.5 }));
}

TEST_CASE("mixture merges equal locations")
{
  const StepDistribution a({ 0.0, 1.0 }, { 0.5, 0.5 });
  const StepDistribution b({ 1.0, 2.0 }, { 0.5, 0.5 });
  const std::vector<StepDistribution> parts{ a, b };
  const std::vector<double> w{ 0.5, 0.5 };
  const auto m = mixture(parts, w);
  REQUIRE(m.size() == 3);
  CHECK(m.masses()[1] == doctest::Approx(0.5));
  CHECK(m.cdf(1.5) == doctest::Approx(0.75));
  CHECK(m.total() == doctest::Approx(1.0));
}
