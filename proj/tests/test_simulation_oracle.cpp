#include "doctest.h"

#include "pobs/distributions.hpp"
#include "pobs/errors.hpp"
#include "pobs/oracle.hpp"
#include "pobs/simulation.hpp"

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <cstring>

using namespace pobs;

namespace {

double Phi(double z) { return boost::math::cdf(boost::math::normal(), z); }
double phi(double z) { return boost::math::pdf(boost::math::normal(), z); }

template<class R>
bool same(const std::vector<R>& a, const std::vector<R>& b)
{
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](const R& u, const R& v) {
           return std::memcmp(&u, &v, sizeof(R)) == 0;
         });
}

} // namespace

TEST_CASE("distributions")
{
  const auto n = Distribution::normal(1.0, 2.0);
  CHECK(n.cdf(1.0) == doctest::Approx(0.5));
  CHECK(n.quantile(0.5) == doctest::Approx(1.0));
  CHECK(n.variance() == doctest::Approx(4.0));
  const auto u = Distribution::uniform(0.0, 2.0);
  CHECK(u.mean() == 1.0);
  CHECK(u.pdf(0.5) == 0.5);
  CHECK(u.survival(1.5) == doctest::Approx(0.25));
  const auto p = Distribution::point_mass(-INFINITY);
  CHECK(p.cdf(-1e300) == 1.0);
  CHECK_FALSE(p.is_continuous());
  CHECK_THROWS_AS(Distribution::normal(0.0, 0.0), ConfigError);
  CHECK_THROWS_AS(Distribution::uniform(1.0, 1.0), ConfigError);
}

TEST_CASE("simulation is reproducible and respects the sampling inequalities")
{
  for (Design d : all_designs) {
    CAPTURE(to_string(d));
    const auto truth = scenario(d);
    const auto a = simulate_design(truth, d, 300, 17);
    const auto b = simulate_design(truth, d, 300, 17);
    const auto c = simulate_design(truth, d, 300, 18);
    CHECK(record_count(a.records) == 300);
    CHECK(a.draws == b.draws);
    std::visit(
      [&](const auto& ra) {
        using V = std::decay_t<decltype(ra)>;
        CHECK(same(ra, std::get<V>(b.records)));
        CHECK_FALSE(same(ra, std::get<V>(c.records)));
        if constexpr (!std::is_same_v<typename V::value_type, BinaryRecord>)
          CHECK_NOTHROW(validate_records(ra));
      },
      a.records);
  }
}

TEST_CASE("acceptance rates agree with the oracle")
{
  for (Design d : all_designs) {
    CAPTURE(to_string(d));
    const auto truth = scenario(d);
    const auto sim = simulate_design(truth, d, 20000, 5);
    const double p = oracle_acceptance(truth, d);
    const double se = std::sqrt(p * (1.0 - p) / double(sim.draws)) + 1e-12;
    CHECK(std::abs(sim.acceptance_rate - p) < 5.0 * se);
  }
}

TEST_CASE("left-truncation oracle against closed forms")
{
  const auto truth = scenario(Design::left_truncated);
  for (double x : { 0.2, 0.5, 0.8 }) {
    const double m = 1.0 + 2.0 * x;
    const auto o = oracle_alpha_A_B(truth, Design::left_truncated, m, x);
    // Y - T ~ N(m + 1, 1 + 0.25)
    CHECK(o.alpha == doctest::Approx(Phi((m + 1.0) / std::sqrt(1.25))).epsilon(1e-10));
    // trapezoid check of A(m; x) = int_{-inf}^{m} F_T(v) f(v) dv / alpha
    auto g = [&](double u) { return Phi(u + 1.0) * phi((u - m) / 0.5) / 0.5; };
    const double lo = m - 8.0;
    const int steps = 80000;
    const double step = (m - lo) / steps;
    double s = 0.5 * (g(lo) + g(m));
    for (int k = 1; k < steps; ++k)
      s += g(lo + k * step);
    s *= step;
    CHECK(o.A == doctest::Approx(s / o.alpha).epsilon(1e-6));
    // B(y; x) = F_T(y) Fbar(y) / alpha
    CHECK(o.B == doctest::Approx(Phi(m + 1.0) * 0.5 / o.alpha).epsilon(1e-10));
    const auto hi = oracle_alpha_A_B(truth, Design::left_truncated, m + 20.0, x);
    CHECK(hi.A == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(oracle_conditional_cdf(truth, 2.0, 0.5) == doctest::Approx(0.5));
  CHECK(oracle_apparent_mean(truth, 0.5) > 2.0);
}

TEST_CASE("binary design oracles")
{
  const auto cc = scenario(Design::case_control);
  CHECK(oracle_gamma(cc) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(oracle_case_control_alpha(cc, 0.5) == doctest::Approx(3.0));
  const auto xt = scenario(Design::x_truncated);
  const auto l = truncation_lambdas(xt);
  CHECK(l.lambda1 == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(l.lambda0 == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(l.theta == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("current-status oracle")
{
  const auto truth = scenario(Design::current_status);
  const auto o = oracle_alpha_A_B(truth, Design::current_status, 0.3, 0.1);
  CHECK(o.alpha == 1.0);
  CHECK(o.A == doctest::Approx(Phi(0.2)).epsilon(1e-12));
}

TEST_CASE("theoretical moments")
{
  const auto truth = scenario(Design::left_truncated);
  const Kernel k(KernelKind::epanechnikov);
  const auto tm = theoretical_moments(truth, k, 2000.0, 0.1, 2.0, 0.5);
  CHECK(tm.var_A > 0.0);
  CHECK(tm.var_B > 0.0);
  CHECK(std::isfinite(tm.bias_A));
  CHECK(std::isfinite(tm.bias_B));
  CHECK(tm.var_A == doctest::Approx(k.kappa2() * tm.A * (1.0 - tm.A) /
                                    (2000.0 * 0.1 * tm.alpha)));
  // F(y; x) = Phi((y - 1 - 2x) / 0.5)
  CHECK(tm.dF_dy == doctest::Approx(phi(0.0) / 0.5).epsilon(1e-5));
  CHECK(tm.dF_dx == doctest::Approx(-2.0 * phi(0.0) / 0.5).epsilon(1e-5));
  CHECK(std::abs(tm.d2F_dx2) < 1e-4);
}

TEST_CASE("truth checks")
{
  auto t = scenario(Design::left_truncated);
  t.t_dist.reset();
  CHECK_THROWS_AS(t.check(Design::left_truncated), ConfigError);

  auto off = scenario(Design::left_truncated);
  off.eps = Distribution::normal(0.3, 1.0);
  CHECK_THROWS_AS(off.check(Design::left_truncated), ConfigError);

  auto support = scenario(Design::left_truncated);
  support.eps = Distribution::uniform(-0.1, 0.1);
  support.t_dist = Distribution::uniform(2.0, 3.0);
  CHECK_THROWS_AS(support.check(Design::left_truncated), ConfigError);

  auto cc = scenario(Design::case_control);
  cc.lambda0.reset();
  CHECK_THROWS_AS(cc.check(Design::case_control), ConfigError);
  CHECK_THROWS_AS(simulate_design(scenario(Design::plain), Design::plain, 0, 1),
                  ConfigError);
}

TEST_CASE("infeasible designs are detected by the acceptance probe")
{
  // P(T <= Y) is about 2e-4
  auto t = scenario(Design::left_truncated);
  t.t_dist = Distribution::normal(6.0, 1.0);
  CHECK_THROWS_AS(simulate_design(t, Design::left_truncated, 100, 1), DataError);
}

TEST_CASE("replication seeds")
{
  CHECK(replication_seed(1, 0) != replication_seed(1, 1));
  CHECK(replication_seed(1, 0) != replication_seed(2, 0));
  CHECK(replication_seed(7, 3) == replication_seed(7, 3));
}
