#include "pobs/distributions.hpp"
#include "pobs/errors.hpp"

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace pobs {

namespace {

constexpr double normal_span = 12.0;

boost::math::normal_distribution<double> as_normal(double mean, double sd)
{
  return boost::math::normal_distribution<double>(mean, sd);
}

} // namespace

Distribution::Distribution(Kind kind, double a, double b)
  : kind_(kind)
  , a_(a)
  , b_(b)
{}

Distribution Distribution::normal(double mean, double sd)
{
  if (!std::isfinite(mean) || !(sd > 0.0) || !std::isfinite(sd))
    throw ConfigError("normal distribution needs a finite mean and positive sd");
  return Distribution(Kind::normal, mean, sd);
}

Distribution Distribution::uniform(double lo, double hi)
{
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw ConfigError("uniform distribution needs finite lo < hi");
  return Distribution(Kind::uniform, lo, hi);
}

Distribution Distribution::point_mass(double at)
{
  if (std::isnan(at))
    throw ConfigError("point mass location is NaN");
  return Distribution(Kind::point_mass, at, at);
}

double Distribution::cdf(double v) const
{
  switch (kind_) {
    case Kind::normal:
      if (v == std::numeric_limits<double>::infinity())
        return 1.0;
      if (v == -std::numeric_limits<double>::infinity())
        return 0.0;
      return boost::math::cdf(as_normal(a_, b_), v);
    case Kind::uniform:
      if (v <= a_)
        return 0.0;
      if (v >= b_)
        return 1.0;
      return (v - a_) / (b_ - a_);
    case Kind::point_mass:
      return v >= a_ ? 1.0 : 0.0;
  }
  return 0.0;
}

double Distribution::pdf(double v) const
{
  switch (kind_) {
    case Kind::normal:
      if (!std::isfinite(v))
        return 0.0;
      return boost::math::pdf(as_normal(a_, b_), v);
    case Kind::uniform:
      return (v >= a_ && v <= b_) ? 1.0 / (b_ - a_) : 0.0;
    case Kind::point_mass:
      return 0.0;
  }
  return 0.0;
}

double Distribution::quantile(double u) const
{
  if (!(u >= 0.0 && u <= 1.0))
    throw ConfigError("quantile level outside [0, 1]");
  switch (kind_) {
    case Kind::normal:
      if (u == 0.0)
        return -std::numeric_limits<double>::infinity();
      if (u == 1.0)
        return std::numeric_limits<double>::infinity();
      return boost::math::quantile(as_normal(a_, b_), u);
    case Kind::uniform:
      return a_ + u * (b_ - a_);
    case Kind::point_mass:
      return a_;
  }
  return 0.0;
}

double Distribution::mean() const
{
  switch (kind_) {
    case Kind::normal:
      return a_;
    case Kind::uniform:
      return 0.5 * (a_ + b_);
    case Kind::point_mass:
      return a_;
  }
  return 0.0;
}

double Distribution::variance() const
{
  switch (kind_) {
    case Kind::normal:
      return b_ * b_;
    case Kind::uniform:
      return (b_ - a_) * (b_ - a_) / 12.0;
    case Kind::point_mass:
      return 0.0;
  }
  return 0.0;
}

double Distribution::support_lo() const
{
  return kind_ == Kind::normal ? a_ - normal_span * b_ : a_;
}

double Distribution::support_hi() const
{
  return kind_ == Kind::normal ? a_ + normal_span * b_ : b_;
}

std::string Distribution::describe() const
{
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::normal:
      os << "normal(" << a_ << ", " << b_ << ")";
      break;
    case Kind::uniform:
      os << "uniform(" << a_ << ", " << b_ << ")";
      break;
    case Kind::point_mass:
      os << "point_mass(" << a_ << ")";
      break;
  }
  return os.str();
}

} // namespace pobs
