#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pobs {

enum class KernelKind
{
  epanechnikov,
  triangular,
  gaussian,
  uniform
};

std::string_view to_string(KernelKind kind);
KernelKind kernel_kind_from_string(std::string_view name);

//! Symmetric, nonnegative smoothing kernel with unit integral.
class Kernel
{
public:
  explicit Kernel(KernelKind kind = KernelKind::epanechnikov);

  //! K(u) on the unit scale.
  double operator()(double u) const;

  KernelKind kind() const { return kind_; }
  //! int u^2 K(u) du
  double kappa1() const { return kappa1_; }
  //! int K(u)^2 du
  double kappa2() const { return kappa2_; }
  //! Half-width of the support; infinite for the Gaussian kernel.
  double radius() const;

private:
  KernelKind kind_;
  double kappa1_;
  double kappa2_;
};

enum class BandwidthRule
{
  fixed,
  scaled_power
};

class Bandwidth
{
public:
  //! Throws ConfigError unless h is finite and positive.
  static Bandwidth fixed(double h);

  double h() const { return h_; }
  BandwidthRule rule() const { return rule_; }

private:
  Bandwidth(double h, BandwidthRule rule);
  friend Bandwidth default_bandwidth(std::span<const double> xs, double a);

  double h_;
  BandwidthRule rule_;
};

//! Closed interval [lo, hi].
struct Interval
{
  double lo;
  double hi;

  bool contains(double v) const { return lo <= v && v <= hi; }
  double length() const { return hi - lo; }
};

//! Whether conditional estimators refuse points outside the evaluation
//! window. `unrestricted` exists for degenerate-kernel reductions where the
//! bandwidth deliberately spans all the data.
enum class WindowPolicy
{
  enforce,
  unrestricted
};

struct Smoother
{
  Kernel kernel;
  Bandwidth bandwidth;
  WindowPolicy window_policy = WindowPolicy::enforce;

  double weight(double x, double xi) const;
};

//! K_h(x - xi) = K((x - xi) / h) / h.
double kernel_weight(const Kernel& k, Bandwidth h, double x, double xi);

//! Kernel weights of every covariate value at the point x.
std::vector<double> kernel_weights(const Smoother& s,
                                   std::span<const double> xs,
                                   double x);

constexpr double default_bandwidth_exponent = 0.25;

//! h = 1.06 * sd(xs) * n^(-a), a in (1/5, 1/3). The sample standard deviation
//! uses the unbiased variance. Constant inputs are rejected.
Bandwidth default_bandwidth(std::span<const double> xs,
                            double a = default_bandwidth_exponent);

//! [min xs + h, max xs - h]; ConfigError when max - min <= 2h.
Interval evaluation_window(std::span<const double> xs, Bandwidth h);

//! Throws ConfigError when the smoother enforces the window and x lies
//! outside it.
void check_in_window(const Smoother& s, std::span<const double> xs, double x);

} // namespace pobs
