#include "doctest.h"

#include "oracles.hpp"
#include "pobs/isotonic.hpp"

#include <random>
#include <stdexcept>

using namespace pobs;

TEST_CASE("pool adjacent violators on hand data")
{
  const std::vector<double> v{ 1.0, 0.0 };
  const auto f = isotonic_regression(v, {}, Direction::increasing);
  CHECK(f[0] == 0.5);
  CHECK(f[1] == 0.5);

  const std::vector<double> mono{ 0.0, 0.2, 0.2, 1.0 };
  CHECK(isotonic_regression(mono, {}, Direction::increasing) == mono);

  const std::vector<double> d{ 3.0, 1.0, 2.0 };
  const auto g = isotonic_regression(d, {}, Direction::decreasing);
  CHECK(g[0] == 3.0);
  CHECK(g[1] == 1.5);
  CHECK(g[2] == 1.5);
  CHECK(is_monotone(g, Direction::decreasing));
}

TEST_CASE("isotonic fit equals exhaustive search")
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (size_t n = 1; n <= 7; ++n)
    for (int rep = 0; rep < 40; ++rep) {
      std::vector<double> v(n), w(n);
      for (size_t i = 0; i < n; ++i) {
        v[i] = std::round(U(rng) * 4.0) / 4.0;
        w[i] = 0.1 + U(rng);
      }
      for (auto dir : { Direction::increasing, Direction::decreasing }) {
        const auto fit = isotonic_regression(v, w, dir);
        CHECK(fit ==
              oracle::exhaustive_isotonic(v, w, dir == Direction::increasing));
        CHECK(is_monotone(fit, dir));
        // idempotence
        CHECK(isotonic_regression(fit, w, dir) == fit);
      }
    }
}

TEST_CASE("isotonic errors")
{
  const std::vector<double> v{ 1.0, 2.0 };
  const std::vector<double> bad{ 1.0, 0.0 };
  const std::vector<double> short_w{ 1.0 };
  CHECK_THROWS_AS(isotonic_regression(v, bad, Direction::increasing),
                  std::invalid_argument);
  CHECK_THROWS_AS(isotonic_regression(v, short_w, Direction::increasing),
                  std::invalid_argument);
  CHECK(isotonic_regression({}, {}, Direction::increasing).empty());
}
