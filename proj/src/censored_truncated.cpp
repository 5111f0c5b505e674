#include "pobs/censored_truncated.hpp"
#include "pobs/errors.hpp"
#include "product_limit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pobs {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

template<class Record>
std::vector<double> covariates(std::span<const Record> data)
{
  std::vector<double> xs(data.size());
  for (size_t i = 0; i < data.size(); ++i)
    xs[i] = data[i].x;
  return xs;
}

template<class Record>
std::vector<double> local_weights(std::span<const Record> data,
                                  const Smoother& smoother,
                                  double x)
{
  if (data.empty())
    throw DataError("empty sample");
  const auto xs = covariates(data);
  check_in_window(smoother, xs, x);
  auto w = kernel_weights(smoother, xs, x);
  double total = 0.0;
  for (double v : w)
    total += v;
  if (!(total > 0.0))
    throw NotEstimable("zero kernel mass at x = " + std::to_string(x));
  return w;
}

template<class Record>
Interval window_for(std::span<const Record> data, const Smoother& smoother)
{
  if (smoother.window_policy == WindowPolicy::unrestricted)
    return { -inf, inf };
  return evaluation_window(covariates(data), smoother.bandwidth);
}

void check_common(double x, size_t i)
{
  if (!std::isfinite(x))
    throw DataError("record " + std::to_string(i) + ": non-finite covariate");
}

StepDistribution ltrc_product(std::span<const LtrcRecord> data,
                              std::span<const double> w)
{
  std::vector<detail::Event> events;
  std::vector<detail::RiskInterval> risk;
  for (size_t i = 0; i < data.size(); ++i) {
    if (!(w[i] > 0.0))
      continue;
    if (data[i].delta)
      events.push_back({ data[i].z, w[i] });
    risk.push_back({ data[i].t, data[i].z, w[i] });
  }
  return detail::forward_product_limit(
    detail::aggregate_events(std::move(events)), risk);
}

StepDistribution rt_product(std::span<const RtRecord> data,
                            std::span<const double> w)
{
  std::vector<detail::Event> events;
  std::vector<detail::RiskInterval> risk;
  for (size_t i = 0; i < data.size(); ++i) {
    if (!(w[i] > 0.0))
      continue;
    events.push_back({ data[i].y, w[i] });
    risk.push_back({ data[i].y, data[i].c, w[i] });
  }
  return detail::reverse_product_limit(
    detail::aggregate_events(std::move(events)), risk);
}

// C is left-truncated by Y in both right- and double-truncation designs.
template<class Record>
StepDistribution censoring_product(std::span<const Record> data)
{
  if (data.empty())
    throw DataError("empty sample");
  std::vector<detail::Event> events;
  std::vector<detail::RiskInterval> risk;
  for (const auto& r : data) {
    events.push_back({ r.c, 1.0 });
    risk.push_back({ r.y, r.c, 1.0 });
  }
  return detail::forward_product_limit(
    detail::aggregate_events(std::move(events)), risk);
}

} // namespace

void validate_records(std::span<const LtrcRecord> data)
{
  if (data.empty())
    throw DataError("empty sample");
  for (size_t i = 0; i < data.size(); ++i) {
    const auto& r = data[i];
    check_common(r.x, i);
    if (!std::isfinite(r.z) || std::isnan(r.t) || r.t == inf)
      throw DataError("record " + std::to_string(i) + " is not finite");
    if (r.t > r.z)
      throw DataError("record " + std::to_string(i) +
                      " violates the truncation condition t <= z");
  }
}

void validate_records(std::span<const RtRecord> data)
{
  if (data.empty())
    throw DataError("empty sample");
  for (size_t i = 0; i < data.size(); ++i) {
    const auto& r = data[i];
    check_common(r.x, i);
    if (!std::isfinite(r.y) || std::isnan(r.c) || r.c == -inf)
      throw DataError("record " + std::to_string(i) + " is not finite");
    if (r.y > r.c)
      throw DataError("record " + std::to_string(i) +
                      " violates the truncation condition y <= c");
  }
}

void validate_records(std::span<const DtRecord> data)
{
  if (data.empty())
    throw DataError("empty sample");
  for (size_t i = 0; i < data.size(); ++i) {
    const auto& r = data[i];
    check_common(r.x, i);
    if (!std::isfinite(r.y) || std::isnan(r.t) || std::isnan(r.c) ||
        r.t == inf || r.c == -inf)
      throw DataError("record " + std::to_string(i) + " is not finite");
    if (r.t > r.y || r.y > r.c)
      throw DataError("record " + std::to_string(i) +
                      " violates the truncation condition t <= y <= c");
  }
}

StepDistribution ltrc_conditional_survival(std::span<const LtrcRecord> data,
                                           const Smoother& smoother,
                                           double x)
{
  const auto w = local_weights(data, smoother, x);
  return ltrc_product(data, w);
}

ConditionalCdfEstimate ltrc_conditional_cdf_estimate(
  std::vector<LtrcRecord> data,
  Smoother smoother)
{
  validate_records(data);
  const Interval window = window_for<LtrcRecord>(data, smoother);
  return ConditionalCdfEstimate(
    window, [data = std::move(data), smoother](double x) {
      return ltrc_conditional_survival(data, smoother, x);
    });
}

double ltrc_regression_mean(std::span<const LtrcRecord> data,
                            const Smoother& smoother,
                            double x)
{
  return ltrc_conditional_survival(data, smoother, x).jump_sum();
}

StepDistribution ltrc_marginal_survival(std::span<const LtrcRecord> data)
{
  if (data.empty())
    throw DataError("empty sample");
  const std::vector<double> ones(data.size(), 1.0);
  return ltrc_product(data, ones);
}

StepDistribution rt_conditional_cdf(std::span<const RtRecord> data,
                                    const Smoother& smoother,
                                    double x)
{
  const auto w = local_weights(data, smoother, x);
  return rt_product(data, w);
}

ConditionalCdfEstimate rt_conditional_cdf_estimate(std::vector<RtRecord> data,
                                                   Smoother smoother)
{
  validate_records(data);
  const Interval window = window_for<RtRecord>(data, smoother);
  return ConditionalCdfEstimate(
    window, [data = std::move(data), smoother](double x) {
      return rt_conditional_cdf(data, smoother, x);
    });
}

StepDistribution rt_censoring_survival(std::span<const RtRecord> data)
{
  return censoring_product(data);
}

double rt_regression_mean(std::span<const RtRecord> data,
                          const Smoother& smoother,
                          double x)
{
  return rt_conditional_cdf(data, smoother, x).jump_sum();
}

StepDistribution dt_censoring_survival(std::span<const DtRecord> data)
{
  return censoring_product(data);
}

StepDistribution dt_truncation_cdf(std::span<const DtRecord> data,
                                   DtTruncationForm form)
{
  if (data.empty())
    throw DataError("empty sample");
  std::vector<detail::RiskInterval> risk;
  for (const auto& r : data)
    risk.push_back({ r.t, r.y, 1.0 });

  if (form == DtTruncationForm::reverse_time) {
    std::vector<detail::Event> events;
    for (const auto& r : data)
      events.push_back({ r.t, 1.0 });
    return detail::reverse_product_limit(
      detail::aggregate_events(std::move(events)), risk);
  }

  // Factor 1 - 1/#{T_j <= T_i <= Y_j} applied once C_i <= t.
  std::vector<double> ts(data.size());
  for (size_t i = 0; i < data.size(); ++i)
    ts[i] = data[i].t;
  std::vector<size_t> order(data.size());
  for (size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return ts[a] < ts[b];
  });
  std::vector<double> sorted_t(ts.size());
  for (size_t k = 0; k < order.size(); ++k)
    sorted_t[k] = ts[order[k]];
  const auto r_sorted = detail::risk_mass(risk, sorted_t);
  std::vector<double> r(ts.size());
  for (size_t k = 0; k < order.size(); ++k)
    r[order[k]] = r_sorted[k];

  std::vector<std::pair<double, double>> by_c; // (c, factor)
  for (size_t i = 0; i < data.size(); ++i)
    by_c.emplace_back(data[i].c, detail::product_factor(1.0, r[i]));
  std::sort(by_c.begin(), by_c.end());
  std::vector<double> locations;
  std::vector<double> cdf;
  double prod = 1.0;
  for (const auto& [c, f] : by_c) {
    prod *= f;
    if (!locations.empty() && locations.back() == c) {
      cdf.back() = 1.0 - prod;
    } else {
      locations.push_back(c);
      cdf.push_back(1.0 - prod);
    }
  }
  return StepDistribution::from_cdf_values(std::move(locations),
                                           std::move(cdf));
}

StepDistribution dt_H(std::span<const DtRecord> data,
                      const Smoother& smoother,
                      double x)
{
  const auto w = local_weights(data, smoother, x);
  std::vector<detail::Event> events;
  std::vector<detail::RiskInterval> risk;
  for (size_t i = 0; i < data.size(); ++i) {
    if (!(w[i] > 0.0))
      continue;
    events.push_back({ data[i].y, w[i] });
    risk.push_back({ data[i].t, data[i].y, w[i] });
  }
  return detail::forward_product_limit(
    detail::aggregate_events(std::move(events)), risk);
}

DtConditionalCdf dt_conditional_cdf(std::span<const DtRecord> data,
                                    const Smoother& smoother,
                                    double x,
                                    const StepDistribution& censoring,
                                    DtNormalization normalization)
{
  const StepDistribution h = dt_H(data, smoother, x);
  DtConditionalCdf out;
  std::vector<double> locations;
  std::vector<double> reweighted;
  const auto locs = h.locations();
  const auto masses = h.masses();
  for (size_t k = 0; k < locs.size(); ++k) {
    // inclusion probability of a response at v is P(C >= v)
    const double surv = censoring.survival_left(locs[k]);
    if (!(surv > 0.0)) {
      ++out.excluded;
      continue;
    }
    locations.push_back(locs[k]);
    reweighted.push_back(masses[k] / surv);
    out.raw_total += masses[k] / surv;
  }

  std::vector<double> cdf(reweighted.size());
  double acc = 0.0;
  for (size_t k = 0; k < reweighted.size(); ++k) {
    acc += reweighted[k];
    if (normalization == DtNormalization::renormalize) {
      cdf[k] = acc / out.raw_total;
    } else if (acc > 1.0) {
      cdf[k] = 1.0;
      ++out.clipped;
    } else {
      cdf[k] = acc;
    }
  }
  if (normalization == DtNormalization::renormalize && !cdf.empty())
    cdf.back() = 1.0;
  out.distribution =
    StepDistribution::from_cdf_values(std::move(locations), std::move(cdf));
  return out;
}

ConditionalCdfEstimate dt_conditional_cdf_estimate(
  std::vector<DtRecord> data,
  Smoother smoother,
  DtNormalization normalization)
{
  validate_records(data);
  const Interval window = window_for<DtRecord>(data, smoother);
  StepDistribution censoring = dt_censoring_survival(data);
  return ConditionalCdfEstimate(
    window,
    [data = std::move(data), smoother, censoring = std::move(censoring),
     normalization](double x) {
      return dt_conditional_cdf(data, smoother, x, censoring, normalization)
        .distribution;
    });
}

double dt_regression_mean(std::span<const DtRecord> data,
                          const Smoother& smoother,
                          double x)
{
  const auto censoring = dt_censoring_survival(data);
  return dt_conditional_cdf(data, smoother, x, censoring).distribution.jump_sum();
}

} // namespace pobs
