#include "doctest.h"

#include "common.hpp"
#include "datasets.hpp"
#include "oracles.hpp"
#include "pobs/censored_truncated.hpp"
#include "pobs/errors.hpp"
#include "pobs/truncated_regression.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace pobs;

using testing::field;
using testing::inf;
using testing::random_dt;
using testing::random_ltrc;
using testing::random_rt;

TEST_CASE("LTRC survival matches direct evaluation")
{
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 60; ++rep) {
    const auto d = random_ltrc(rng, 1 + rep % 6, true);
    const auto sm = testing::smoother(KernelKind::epanechnikov, 0.6);
    const oracle::Kw w{ KernelKind::epanechnikov, 0.6, 0.5 };
    const auto s = ltrc_conditional_survival(d, sm, 0.5);
    const auto m = ltrc_marginal_survival(d);
    const oracle::Kw one{ KernelKind::uniform, 1e6, 0.5 };
    for (double y : testing::probe_points(field(d, &LtrcRecord::z))) {
      CHECK(std::abs(s.survival(y) - oracle::ltrc_survival(d, w, y)) < 1e-12);
      CHECK(std::abs(m.survival(y) - oracle::ltrc_survival(d, one, y)) < 1e-12);
    }
  }
}

TEST_CASE("LTRC without truncation is Kaplan-Meier, ties included")
{
  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 30; ++rep) {
    auto d = random_ltrc(rng, 2 + rep % 7, false);
    for (auto& r : d)
      r.z = std::round(r.z * 4.0) / 4.0; // force ties
    std::vector<double> z;
    std::vector<bool> delta;
    for (const auto& r : d) {
      z.push_back(r.z);
      delta.push_back(r.delta);
    }
    const auto s = ltrc_conditional_survival(d, testing::flat(), 0.5);
    const auto m = ltrc_marginal_survival(d);
    for (double y : testing::probe_points(z)) {
      CHECK(std::abs(s.survival(y) - oracle::kaplan_meier(z, delta, y)) < 1e-12);
      CHECK(std::abs(m.survival(y) - oracle::kaplan_meier(z, delta, y)) < 1e-12);
    }
  }
}

TEST_CASE("LTRC trivial cases")
{
  std::vector<LtrcRecord> censored{ { 0.5, -inf, 2.0, false } };
  const auto s = ltrc_conditional_survival(censored, testing::flat(), 0.5);
  CHECK(s.survival(10.0) == 1.0);
  CHECK(ltrc_marginal_survival(censored).defective());

  std::vector<LtrcRecord> event{ { 0.5, -inf, 2.0, true } };
  CHECK(ltrc_regression_mean(event, testing::flat(), 0.5) == 2.0);

  std::vector<LtrcRecord> d{ { 0.1, -inf, 1.0, true }, { 0.2, -inf, 2.0, true },
                             { 0.3, -inf, 4.0, true } };
  CHECK(ltrc_regression_mean(d, testing::flat(), 0.2) ==
        doctest::Approx(7.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("LTRC with no censoring is the left-truncation estimator")
{
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<LtrcRecord> d;
    std::vector<LtRecord> lt;
    while (d.size() < 6) {
      const double x = testing::uniform(rng, 0.0, 1.0);
      const double t = testing::uniform(rng, -1.0, 1.0);
      const double y = testing::uniform(rng, 0.0, 2.0);
      if (t <= y) {
        d.push_back({ x, t, y, true });
        lt.push_back({ x, t, y });
      }
    }
    const auto sm = testing::smoother(KernelKind::triangular, 0.5);
    const auto a = ltrc_conditional_survival(d, sm, 0.4);
    const auto b = conditional_cdf(lt, sm, 0.4);
    for (double y : testing::probe_points(field(d, &LtrcRecord::z)))
      CHECK(std::abs(a.survival(y) - b.survival(y)) < 1e-12);
  }
}

TEST_CASE("right truncation matches direct evaluation")
{
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 60; ++rep) {
    const auto d = random_rt(rng, 1 + rep % 6, true);
    const auto sm = testing::smoother(KernelKind::epanechnikov, 0.6);
    const oracle::Kw w{ KernelKind::epanechnikov, 0.6, 0.5 };
    const auto f = rt_conditional_cdf(d, sm, 0.5);
    for (double y : testing::probe_points(field(d, &RtRecord::y)))
      CHECK(std::abs(f.cdf(y) - oracle::rt_cdf(d, w, y)) < 1e-12);
    const auto sc = rt_censoring_survival(d);
    for (double s : testing::probe_points(field(d, &RtRecord::c)))
      CHECK(std::abs(sc.survival(s) - oracle::censoring_survival(d, s)) < 1e-12);
  }
}

TEST_CASE("right truncation without truncation is the empirical CDF")
{
  std::vector<RtRecord> d{ { 0.1, 3.0, inf }, { 0.2, 1.0, inf },
                           { 0.3, 2.0, inf }, { 0.4, 1.0, inf } };
  const auto f = rt_conditional_cdf(d, testing::flat(), 0.2);
  CHECK(f.cdf(0.9) == 0.0);
  CHECK(f.cdf(1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(f.cdf(2.0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(f.cdf(3.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rt_regression_mean(d, testing::flat(), 0.2) ==
        doctest::Approx(7.0 / 4.0).epsilon(1e-14));

  std::vector<RtRecord> one{ { 0.5, 1.5, 2.0 } };
  const auto g = rt_conditional_cdf(one, testing::flat(), 0.5);
  CHECK(g.cdf(1.4) == 0.0);
  CHECK(g.cdf(1.5) == 1.0);
}

TEST_CASE("right truncation: one binding truncation value")
{
  // the third record's c = 1.5 cuts it out of the risk set at y = 2
  std::vector<RtRecord> d{ { 0.5, 0.5, 3.0 }, { 0.5, 2.0, 3.0 }, { 0.5, 1.0, 1.5 } };
  const auto f = rt_conditional_cdf(d, testing::flat(), 0.5);
  const oracle::Kw w{ KernelKind::uniform, 1e6, 0.5 };
  // y = 2: risk {1, 2} -> factor 1/2; y = 1: risk {1, 3} -> factor 1/2
  CHECK(f.cdf(1.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(f.cdf(0.7) == doctest::Approx(0.25).epsilon(1e-14));
  for (double y : { 0.4, 0.5, 0.7, 1.0, 1.5, 2.0, 2.5 })
    CHECK(std::abs(f.cdf(y) - oracle::rt_cdf(d, w, y)) < 1e-12);

  std::vector<RtRecord> same_c{ { 0.5, 0.5, 2.0 }, { 0.5, 1.0, 2.0 } };
  const auto sc = rt_censoring_survival(same_c);
  REQUIRE(sc.size() == 1);
  CHECK(sc.survival(1.9) == 1.0);
  CHECK(sc.survival(2.0) == 0.0);
}

TEST_CASE("double truncation products match direct evaluation")
{
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 60; ++rep) {
    const auto d = random_dt(rng, 1 + rep % 6, true);
    const auto sm = testing::smoother(KernelKind::epanechnikov, 0.6);
    const oracle::Kw w{ KernelKind::epanechnikov, 0.6, 0.5 };
    const auto sc = dt_censoring_survival(d);
    for (double s : testing::probe_points(field(d, &DtRecord::c)))
      CHECK(std::abs(sc.survival(s) - oracle::censoring_survival(d, s)) < 1e-12);
    const auto ft = dt_truncation_cdf(d);
    for (double t : testing::probe_points(field(d, &DtRecord::t)))
      CHECK(std::abs(ft.cdf(t) - oracle::reverse_truncation_cdf(d, t)) < 1e-12);
    const auto h = dt_H(d, sm, 0.5);
    const auto f = dt_conditional_cdf(d, sm, 0.5, sc);
    const auto fc = dt_conditional_cdf(d, sm, 0.5, sc, DtNormalization::clip);
    for (double y : testing::probe_points(field(d, &DtRecord::y))) {
      CHECK(std::abs(h.survival(y) - oracle::dt_H_survival(d, w, y)) < 1e-12);
      CHECK(std::abs(f.distribution.cdf(y) - oracle::dt_cdf(d, w, y)) < 1e-12);
      CHECK(std::abs(fc.distribution.cdf(y) - oracle::dt_cdf(d, w, y, false)) <
            1e-12);
    }
  }
}

TEST_CASE("double truncation without upper truncation is the left-truncation estimator")
{
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 20; ++rep) {
    const auto d = random_dt(rng, 2 + rep % 5, false);
    std::vector<LtRecord> lt;
    for (const auto& r : d)
      lt.push_back({ r.x, r.t, r.y });
    const auto sm = testing::smoother(KernelKind::epanechnikov, 0.6);
    const auto a =
      dt_conditional_cdf(d, sm, 0.5, dt_censoring_survival(d)).distribution;
    const auto b = conditional_cdf(lt, sm, 0.5);
    for (double y : testing::probe_points(field(d, &DtRecord::y)))
      CHECK(std::abs(a.cdf(y) - b.cdf(y)) < 1e-12);
  }
}

TEST_CASE("double truncation: single record and clipping counter")
{
  std::vector<DtRecord> one{ { 0.5, 0.0, 1.0, 2.0 } };
  const auto f =
    dt_conditional_cdf(one, testing::flat(), 0.5, dt_censoring_survival(one));
  CHECK(f.distribution.cdf(0.9) == 0.0);
  CHECK(f.distribution.cdf(1.0) == 1.0);
  CHECK(dt_regression_mean(one, testing::flat(), 0.5) == 1.0);

  // a censoring survival that is small where H jumps inflates the raw sum
  std::vector<DtRecord> d{ { 0.5, 0.0, 1.0, 1.1 }, { 0.5, 0.0, 2.0, 2.1 } };
  const StepDistribution fake({ 0.5 }, { 0.75 });
  const auto c =
    dt_conditional_cdf(d, testing::flat(), 0.5, fake, DtNormalization::clip);
  CHECK(c.raw_total > 1.0);
  CHECK(c.clipped > 0);
  CHECK(c.distribution.total() == 1.0);
  const StepDistribution dead({ 0.5 }, { 1.0 });
  const auto e = dt_conditional_cdf(d, testing::flat(), 0.5, dead);
  CHECK(e.excluded == 2);

  const auto printed = dt_truncation_cdf(d, DtTruncationForm::as_printed);
  CHECK(printed.size() >= 1);
}

TEST_CASE("record validation")
{
  std::vector<LtrcRecord> a{ { 0.0, 2.0, 1.0, true } };
  CHECK_THROWS_AS(validate_records(a), DataError);
  std::vector<RtRecord> b{ { 0.0, 2.0, 1.0 } };
  CHECK_THROWS_AS(validate_records(b), DataError);
  std::vector<DtRecord> c{ { 0.0, 0.0, 2.0, 1.0 } };
  CHECK_THROWS_AS(validate_records(c), DataError);
  std::vector<DtRecord> e;
  CHECK_THROWS_AS(dt_censoring_survival(e), DataError);
}
