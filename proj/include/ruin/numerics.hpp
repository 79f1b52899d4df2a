#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace ruin {

/// Extended real: a finite double or +infinity.  Used for moments and
/// exponential moments that may diverge; callers must check before use.
struct ExtReal {
  double value = 0.0;
  bool finite = true;

  static ExtReal of(double v) { return {v, true}; }
  static ExtReal infinite() { return {std::numeric_limits<double>::infinity(), false}; }

  double require_finite(const char* what) const;
};

/// Root of f on [a, b] by Brent's method.  Requires a sign change; throws
/// ToleranceNotMet when the bracket is invalid or the iteration stalls.
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double xtol = 1e-13, int max_iter = 200);

/// Composite Gauss-Legendre rule: `panels` equal panels on [a, b], each with
/// `points` nodes (8 or 16).  Nodes are strictly increasing.
struct PanelRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

PanelRule gauss_legendre_panels(double a, double b, int panels, int points = 8);

/// Adaptive Gauss-Kronrod integration of f over [a, b] (bounds may be
/// infinite).  Returns the estimate; *abserr receives the error estimate.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12, double* abserr = nullptr);

/// Monotone cubic (Fritsch-Carlson) interpolant through strictly increasing
/// abscissae.  If the data are monotone the interpolant is monotone, which
/// makes it safe for CDF tables and their inverses.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double derivative(double x) const;

  /// Inverse for monotone nondecreasing data: smallest x with value(x) = v.
  /// v is clamped to the value range.
  double solve(double v) const;

  const std::vector<double>& abscissae() const { return x_; }
  const std::vector<double>& values() const { return y_; }

 private:
  int segment(double x) const;

  std::vector<double> x_, y_, d_;
};

}  // namespace ruin
