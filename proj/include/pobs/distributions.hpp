#pragma once

#include <string>

namespace pobs {

//! Univariate distribution handle used by the generative models.
class Distribution
{
public:
  enum class Kind
  {
    normal,
    uniform,
    point_mass
  };

  static Distribution normal(double mean, double sd);
  static Distribution uniform(double lo, double hi);
  //! Degenerate distribution; the location may be +-infinity.
  static Distribution point_mass(double at);

  Kind kind() const { return kind_; }
  double cdf(double v) const;
  double survival(double v) const { return 1.0 - cdf(v); }
  //! Density; zero for the point mass.
  double pdf(double v) const;
  double quantile(double u) const;
  double mean() const;
  double variance() const;

  //! Interval carrying all but a negligible amount of mass (normal: +-12 sd).
  double support_lo() const;
  double support_hi() const;
  bool is_continuous() const { return kind_ != Kind::point_mass; }

  std::string describe() const;

private:
  Distribution(Kind kind, double a, double b);

  Kind kind_;
  double a_;
  double b_;
};

} // namespace pobs
