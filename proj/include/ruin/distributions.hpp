#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ruin/numerics.hpp"
#include "ruin/rng.hpp"

namespace ruin {

struct Support {
  double lo;
  double hi;
};

struct Atom {
  double x;
  double p;
};

/// A scalar distribution.  Continuous laws implement pdf/cdf, discrete laws
/// expose atoms; both support quantiles, portable sampling, and (extended
/// real) moments.  Instances are immutable after construction and safe to
/// share across threads.
class Dist {
 public:
  virtual ~Dist() = default;

  virtual double cdf(double x) const = 0;
  virtual Support support() const = 0;

  virtual bool has_density() const { return false; }
  virtual double pdf(double x) const;

  virtual bool is_discrete() const { return false; }
  virtual const std::vector<Atom>& atoms() const;

  /// Generalized inverse: smallest x with cdf(x) >= u, for u in (0, 1).
  virtual double quantile(double u) const;

  /// Inverse-CDF sampling by default; one uniform per draw, so coupled
  /// models can reuse the same stream for common-random-number arguments.
  virtual double sample(Rng& rng) const { return quantile(rng.uniform01()); }

  /// E[X^k]; infinite flag when the moment diverges.
  virtual ExtReal raw_moment(int k) const;

  /// E[|X|^g] for real g >= 0.
  virtual ExtReal abs_moment(double g) const;

  /// E[exp(s X)]; infinite flag when the transform diverges at s.
  virtual ExtReal exp_moment(double s) const;

  double mean() const { return raw_moment(1).require_finite("mean"); }

 protected:
  /// Truncated quadrature fallback for expectations of |x|-polynomially
  /// bounded transforms.  Laws with possibly-divergent integrals override
  /// the moment entry points instead of relying on this.
  double integral_against(const std::function<double(double)>& f) const;
};

using DistPtr = std::shared_ptr<const Dist>;

/// E[f(X)] by atom summation or truncated adaptive quadrature.
double expect(const Dist& d, const std::function<double(double)>& f);

/// E[f(X, Y)] for independent X ~ dx, Y ~ dy.
double expect_pair(const Dist& dx, const Dist& dy,
                   const std::function<double(double, double)>& f);

class DegenerateDist : public Dist {
 public:
  explicit DegenerateDist(double c);
  double cdf(double x) const override;
  Support support() const override { return {c_, c_}; }
  bool is_discrete() const override { return true; }
  const std::vector<Atom>& atoms() const override { return atoms_; }
  double quantile(double) const override { return c_; }
  double sample(Rng& rng) const override;
  ExtReal raw_moment(int k) const override;
  ExtReal abs_moment(double g) const override;
  ExtReal exp_moment(double s) const override;

 private:
  double c_;
  std::vector<Atom> atoms_;
};

class FiniteDiscreteDist : public Dist {
 public:
  /// Atoms are sorted by x and probabilities must sum to 1 within 1e-12.
  explicit FiniteDiscreteDist(std::vector<Atom> atoms);
  double cdf(double x) const override;
  Support support() const override;
  bool is_discrete() const override { return true; }
  const std::vector<Atom>& atoms() const override { return atoms_; }
  double quantile(double u) const override;
  ExtReal raw_moment(int k) const override;
  ExtReal abs_moment(double g) const override;
  ExtReal exp_moment(double s) const override;

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cum_;
};

class UniformDist : public Dist {
 public:
  UniformDist(double lo, double hi);
  double cdf(double x) const override;
  Support support() const override { return {lo_, hi_}; }
  bool has_density() const override { return true; }
  double pdf(double x) const override;
  double quantile(double u) const override { return lo_ + u * (hi_ - lo_); }
  ExtReal raw_moment(int k) const override;
  ExtReal exp_moment(double s) const override;

 private:
  double lo_, hi_;
};

class ExponentialDist : public Dist {
 public:
  explicit ExponentialDist(double rate);
  double cdf(double x) const override;
  Support support() const override;
  bool has_density() const override { return true; }
  double pdf(double x) const override;
  double quantile(double u) const override;
  ExtReal raw_moment(int k) const override;
  ExtReal exp_moment(double s) const override;

 private:
  double rate_;
};

class GaussianDist : public Dist {
 public:
  GaussianDist(double mean, double stddev);
  double cdf(double x) const override;
  Support support() const override;
  bool has_density() const override { return true; }
  double pdf(double x) const override;
  double quantile(double u) const override;
  ExtReal raw_moment(int k) const override;
  ExtReal exp_moment(double s) const override;

 private:
  double mu_, sigma_;
};

/// Claim-size law with density (1/(2k)) x^{-2} exp(-x - 1/x) on x > 0,
/// k = 0.139866.  No closed-form CDF: the CDF is tabulated once per process
/// by panelwise Gauss-Legendre accumulation and interpolated monotonically;
/// quantiles invert the table.
class GigClaimDist : public Dist {
 public:
  GigClaimDist();
  double cdf(double x) const override;
  Support support() const override;
  bool has_density() const override { return true; }
  double pdf(double x) const override;
  double quantile(double u) const override;
  double sample(Rng& rng) const override;
  ExtReal raw_moment(int k) const override;
  ExtReal abs_moment(double g) const override;
  ExtReal exp_moment(double s) const override;

  static constexpr double kNorm = 0.139866;

 private:
  struct Table;
  static const Table& table();
};

/// Increment law with density sqrt(2)/(pi (1 + (t-1)^4)) on the whole line.
/// CDF and both finite moments are closed-form; third and higher absolute
/// moments diverge, and the exponential moment diverges for every s != 0.
class HeavyTailIncrementDist : public Dist {
 public:
  HeavyTailIncrementDist() = default;
  double cdf(double x) const override;
  Support support() const override;
  bool has_density() const override { return true; }
  double pdf(double x) const override;
  double quantile(double u) const override;
  double sample(Rng& rng) const override;
  ExtReal raw_moment(int k) const override;
  ExtReal abs_moment(double g) const override;
  ExtReal exp_moment(double s) const override;

 private:
  struct Table;
  static const Table& table();
};

/// a + b * X for X ~ inner (b != 0).  Sampling delegates to the inner law so
/// coupled streams stay aligned.
class AffineDist : public Dist {
 public:
  AffineDist(double a, double b, DistPtr inner);
  double cdf(double x) const override;
  Support support() const override;
  bool has_density() const override;
  double pdf(double x) const override;
  bool is_discrete() const override;
  const std::vector<Atom>& atoms() const override;
  double quantile(double u) const override;
  double sample(Rng& rng) const override;
  ExtReal raw_moment(int k) const override;
  ExtReal abs_moment(double g) const override;
  ExtReal exp_moment(double s) const override;

 private:
  double a_, b_;
  DistPtr inner_;
  std::vector<Atom> atoms_;
};

/// Interest-rate atoms 0.01 * Binomial(10, 1/2): values 0.00 .. 0.10 with
/// dyadic probabilities that sum to 1 exactly.
DistPtr binomial_interest_distribution();

}  // namespace ruin
