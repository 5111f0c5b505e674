#pragma once

#include <span>
#include <vector>

namespace pobs {

//! Right-continuous step distribution function with jumps at strictly
//! increasing locations. The total mass may fall short of one; such a
//! distribution is called defective (tail mass not identified by the design).
class StepDistribution
{
public:
  StepDistribution() = default;

  //! Builds the distribution from its jump masses. Throws std::invalid_argument
  //! on unordered locations, negative masses or total mass above one.
  StepDistribution(std::vector<double> locations, std::vector<double> masses);

  //! Builds the distribution from the CDF values right after each jump. The
  //! values must be nondecreasing in [0, 1].
  static StepDistribution from_cdf_values(std::vector<double> locations,
                                          std::vector<double> cdf_values);

  double cdf(double y) const;
  //! F(y-)
  double left_limit(double y) const;
  double survival(double y) const { return 1.0 - cdf(y); }
  //! 1 - F(y-)
  double survival_left(double y) const { return 1.0 - left_limit(y); }

  double total() const { return cdf_.empty() ? 0.0 : cdf_.back(); }
  bool defective(double tol = 1e-12) const { return total() < 1.0 - tol; }

  //! Sum of location * mass over the jumps (not renormalized).
  double jump_sum() const;

  std::span<const double> locations() const { return locations_; }
  std::span<const double> masses() const { return masses_; }
  //! CDF value at each jump location.
  std::span<const double> cdf_values() const { return cdf_; }
  size_t size() const { return locations_.size(); }
  bool empty() const { return locations_.empty(); }

  //! Same masses, locations moved by `offset`.
  StepDistribution shifted(double offset) const;

private:
  std::vector<double> locations_;
  std::vector<double> masses_;
  std::vector<double> cdf_;
};

//! Weighted equal-location merge of several step distributions:
//! sum_k weight_k * F_k.
StepDistribution mixture(std::span<const StepDistribution> parts,
                         std::span<const double> weights);

} // namespace pobs
