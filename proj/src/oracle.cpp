#include "pobs/oracle.hpp"
#include "pobs/errors.hpp"
#include "quadrature.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pobs {

namespace {

using detail::expect;
using detail::integrate;

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

void support_breaks(const std::optional<Distribution>& d,
                    std::vector<double>& out)
{
  if (d && d->is_continuous()) {
    out.push_back(d->support_lo());
    out.push_back(d->support_hi());
  }
}

//! Distribution functions of one covariate slice.
struct Slice
{
  const DesignTruth& truth;
  double mx;

  double f(double v) const { return truth.eps.pdf(v - mx); }
  double F(double v) const { return truth.eps.cdf(v - mx); }
  double FT(double v) const { return truth.t_dist ? truth.t_dist->cdf(v) : 1.0; }
  double Fbar_C(double v) const
  {
    return truth.c_dist ? truth.c_dist->survival(v) : 1.0;
  }
  double lo() const { return mx + truth.eps.support_lo(); }
  double hi() const { return mx + truth.eps.support_hi(); }

  std::vector<double> breaks(double y) const
  {
    std::vector<double> b{ y };
    support_breaks(truth.t_dist, b);
    support_breaks(truth.c_dist, b);
    return b;
  }

  //! int_{lo}^{upper} g(v) f(v) dv
  template<class G>
  double up_to(G&& g, double upper, double y) const
  {
    return integrate([&](double v) { return g(v) * f(v); },
                     lo(),
                     std::min(upper, hi()),
                     breaks(y));
  }

  template<class G>
  double from(G&& g, double lower, double y) const
  {
    return integrate([&](double v) { return g(v) * f(v); },
                     std::max(lower, lo()),
                     hi(),
                     breaks(y));
  }
};

void require(bool ok, const char* what, Design design)
{
  if (!ok)
    throw ConfigError("oracle for design " + std::string(to_string(design)) +
                      " needs " + what);
}

//! Marginal density of Y integrated over F_X.
double marginal_pdf_Y(const DesignTruth& truth, double v)
{
  return expect(truth.x_dist,
                [&](double s) { return truth.eps.pdf(v - truth.m(s)); });
}

double marginal_lo(const DesignTruth& truth)
{
  const double a = truth.x_dist.support_lo();
  const double b = truth.x_dist.support_hi();
  double lo = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 100; ++k)
    lo = std::min(lo, truth.m(a + (b - a) * k / 100.0));
  return lo + truth.eps.support_lo();
}

double marginal_hi(const DesignTruth& truth)
{
  const double a = truth.x_dist.support_lo();
  const double b = truth.x_dist.support_hi();
  double hi = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 100; ++k)
    hi = std::max(hi, truth.m(a + (b - a) * k / 100.0));
  return hi + truth.eps.support_hi();
}

} // namespace

double oracle_conditional_cdf(const DesignTruth& truth, double y, double x)
{
  return truth.eps.cdf(y - truth.m(x));
}

double oracle_marginal_cdf_Y(const DesignTruth& truth, double y)
{
  return expect(truth.x_dist,
                [&](double s) { return truth.eps.cdf(y - truth.m(s)); });
}

OracleValues oracle_alpha_A_B(const DesignTruth& truth,
                              Design design,
                              double y,
                              double x)
{
  require(static_cast<bool>(truth.m), "a regression function", design);
  const Slice s{ truth, truth.m(x) };
  OracleValues o;
  switch (design) {
    case Design::left_truncated: {
      require(truth.t_dist.has_value(), "F_T", design);
      const auto ft = [&](double v) { return s.FT(v); };
      o.alpha = s.up_to(ft, s.hi(), y);
      o.A = s.up_to(ft, y, y) / o.alpha;
      o.B = s.FT(y) * (1.0 - s.F(y)) / o.alpha;
      break;
    }
    case Design::ltrc: {
      require(truth.t_dist && truth.c_dist, "F_T and F_C", design);
      // the sampling event is T <= min(Y, C)
      o.alpha = expect(*truth.t_dist, [&](double t) {
        return (1.0 - s.F(t)) * s.Fbar_C(t);
      });
      o.A = s.up_to([&](double v) { return s.FT(v) * s.Fbar_C(v); }, y, y) /
            o.alpha;
      o.B = s.FT(y) * s.Fbar_C(y) * (1.0 - s.F(y)) / o.alpha;
      break;
    }
    case Design::right_truncated: {
      require(truth.c_dist.has_value(), "F_C", design);
      const auto fc = [&](double v) { return s.Fbar_C(v); };
      o.alpha = s.up_to(fc, s.hi(), y);
      o.A = s.up_to(fc, y, y) / o.alpha;
      o.B = s.Fbar_C(y) * s.F(y) / o.alpha;
      if (truth.c_dist->is_continuous()) {
        o.A_prime = integrate(
                      [&](double c) { return s.F(c) * truth.c_dist->pdf(c); },
                      truth.c_dist->support_lo(),
                      std::min(y, truth.c_dist->support_hi()),
                      s.breaks(y)) /
                    o.alpha;
      } else {
        const double c0 = truth.c_dist->quantile(0.5);
        o.A_prime = (c0 <= y ? s.F(c0) : 0.0) / o.alpha;
      }
      break;
    }
    case Design::double_truncated: {
      require(truth.t_dist && truth.c_dist, "F_T and F_C", design);
      const auto both = [&](double v) { return s.FT(v) * s.Fbar_C(v); };
      o.alpha = s.up_to(both, s.hi(), y);
      o.A = s.up_to(both, y, y) / o.alpha;
      o.H = s.from([&](double v) { return s.Fbar_C(v); }, y, y);
      o.B = s.FT(y) * *o.H / o.alpha;

      // marginal forms, integrated over F_X
      const double vlo = marginal_lo(truth);
      const double vhi = marginal_hi(truth);
      const auto fy = [&](double v) { return marginal_pdf_Y(truth, v); };
      const auto br = s.breaks(y);
      const double ft_y = s.FT(y);
      o.A_prime = integrate(
        [&](double v) {
          return fy(v) * s.Fbar_C(v) * std::max(s.FT(v) - ft_y, 0.0);
        },
        vlo, vhi, br);
      o.B_prime = s.Fbar_C(y) *
                  integrate([&](double v) { return fy(v) * s.FT(v); },
                            vlo, std::min(y, vhi), br);
      const double fc_y = 1.0 - s.Fbar_C(y);
      o.B_second = integrate(
        [&](double v) {
          return fy(v) * s.FT(v) * std::max(fc_y - (1.0 - s.Fbar_C(v)), 0.0);
        },
        vlo, vhi, br);
      break;
    }
    case Design::current_status: {
      require(truth.c_dist.has_value(), "F_C", design);
      o.alpha = 1.0;
      o.A = s.F(y);
      if (truth.c_dist->is_continuous()) {
        o.B = integrate(
          [&](double c) { return s.F(c) * truth.c_dist->pdf(c); },
          truth.c_dist->support_lo(),
          std::min(y, truth.c_dist->support_hi()),
          s.breaks(y));
      } else {
        const double c0 = truth.c_dist->quantile(0.5);
        o.B = c0 <= y ? s.F(c0) : 0.0;
      }
      break;
    }
    default:
      throw ConfigError("no A/B functionals for design " +
                        std::string(to_string(design)));
  }
  return o;
}

double oracle_apparent_mean(const DesignTruth& truth, double x)
{
  require(truth.m && truth.t_dist, "m and F_T", Design::left_truncated);
  const Slice s{ truth, truth.m(x) };
  const double y = s.mx;
  const double alpha = s.up_to([&](double v) { return s.FT(v); }, s.hi(), y);
  return s.up_to([&](double v) { return v * s.FT(v); }, s.hi(), y) / alpha;
}

double oracle_acceptance(const DesignTruth& truth, Design design)
{
  switch (design) {
    case Design::plain:
    case Design::current_status:
      return 1.0;
    case Design::case_control:
      require(truth.p && truth.lambda0 && truth.lambda1,
              "p, lambda0 and lambda1", design);
      return expect(truth.x_dist, [&](double x) {
        const double p = truth.p(x);
        return *truth.lambda1 * p + *truth.lambda0 * (1.0 - p);
      });
    case Design::x_truncated:
      require(truth.trunc_interval.has_value(), "a truncation interval",
              design);
      return truth.x_dist.cdf(truth.trunc_interval->hi) -
             truth.x_dist.cdf(truth.trunc_interval->lo);
    default:
      return expect(truth.x_dist, [&](double x) {
        return oracle_alpha_A_B(truth, design, truth.m(x), x).alpha;
      });
  }
}

TruncationLambdas truncation_lambdas(const DesignTruth& truth)
{
  require(truth.p && truth.trunc_interval, "p and a truncation interval",
          Design::x_truncated);
  const Interval ab = *truth.trunc_interval;
  const auto inside = [&](double x) { return ab.contains(x) ? 1.0 : 0.0; };
  const std::vector<double> br{ ab.lo, ab.hi };
  const double p_all = expect(truth.x_dist, truth.p, br);
  const double p_in =
    expect(truth.x_dist, [&](double x) { return truth.p(x) * inside(x); }, br);
  const double q_in = expect(
    truth.x_dist,
    [&](double x) { return (1.0 - truth.p(x)) * inside(x); },
    br);
  TruncationLambdas out;
  out.lambda1 = p_in / p_all;
  out.lambda0 = q_in / (1.0 - p_all);
  out.theta = out.lambda0 / out.lambda1;
  return out;
}

double oracle_gamma(const DesignTruth& truth)
{
  require(static_cast<bool>(truth.p), "p", Design::plain);
  const double ep = expect(truth.x_dist, truth.p);
  return (1.0 - ep) / ep;
}

double oracle_case_control_alpha(const DesignTruth& truth, double x)
{
  require(truth.p && truth.lambda0 && truth.lambda1,
          "p, lambda0 and lambda1", Design::case_control);
  const double p = truth.p(x);
  return (*truth.lambda0 / *truth.lambda1) * (1.0 - p) / p;
}

TheoreticalMoments theoretical_moments(const DesignTruth& truth,
                                       const Kernel& kernel,
                                       double n,
                                       double h,
                                       double y,
                                       double x)
{
  if (!(n > 0.0) || !(h > 0.0))
    throw ConfigError("theoretical moments need n > 0 and h > 0");
  const OracleValues o = oracle_alpha_A_B(truth, Design::left_truncated, y, x);
  const Slice s{ truth, truth.m(x) };
  const double d = derivative_step;
  const double m_lo = truth.m(x - d);
  const double m_hi = truth.m(x + d);

  // second x-derivative of the conditional density f_eps(v - m(x))
  const auto d2f = [&](double v) {
    return (truth.eps.pdf(v - m_hi) - 2.0 * truth.eps.pdf(v - s.mx) +
            truth.eps.pdf(v - m_lo)) /
           (d * d);
  };
  const auto F_at = [&](double mx) { return truth.eps.cdf(y - mx); };

  const double lo = std::min({ m_lo, m_hi, s.mx }) + truth.eps.support_lo();
  const double hi = std::max({ m_lo, m_hi, s.mx }) + truth.eps.support_hi();
  const auto br = s.breaks(y);
  const auto weighted = [&](double v) { return s.FT(v) * d2f(v); };
  const double int_y = integrate(weighted, lo, std::min(y, hi), br);
  const double int_all = integrate(weighted, lo, hi, br);

  TheoreticalMoments out;
  out.alpha = o.alpha;
  out.A = o.A;
  out.B = o.B;
  out.dF_dx = (F_at(m_hi) - F_at(m_lo)) / (2.0 * d);
  out.d2F_dx2 = (F_at(m_hi) - 2.0 * F_at(s.mx) + F_at(m_lo)) / (d * d);
  out.dF_dy = s.f(y);

  const double scale = h * h * kernel.kappa1() / (2.0 * o.alpha);
  out.bias_A = scale * (int_y - o.A * int_all);
  // d2/dx2 of Fbar(y; x) is -d2F/dx2
  out.bias_B = scale * (s.FT(y) * -out.d2F_dx2 - o.B * int_all);
  const double v = kernel.kappa2() / (n * h * o.alpha);
  out.var_A = v * o.A * (1.0 - o.A);
  out.var_B = v * o.B * (1.0 - o.B);
  if (!std::isfinite(out.bias_A) || !std::isfinite(out.bias_B))
    throw NotEstimable("non-finite derivative at (y, x) = (" +
                       std::to_string(y) + ", " + std::to_string(x) + ")");
  return out;
}

} // namespace pobs
