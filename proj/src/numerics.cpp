#include "ruin/numerics.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ruin/errors.hpp"

namespace ruin {

double ExtReal::require_finite(const char* what) const {
  if (!finite) throw InfiniteMoment(std::string(what) + " is not finite");
  return value;
}

double brent_root(const std::function<double(double)>& f, double a, double b,
                  double xtol, int max_iter) {
  double fa = f(a), fb = f(b);
  if (std::isnan(fa) || std::isnan(fb))
    throw ToleranceNotMet("brent_root: NaN at bracket endpoint");
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw ToleranceNotMet("brent_root: no sign change on bracket");

  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0) == (fc > 0)) {
      c = a; fc = fa;
      d = b - a; e = d;
    }
  }
  throw ToleranceNotMet("brent_root: iteration limit reached");
}

namespace {

// Abscissae/weights for the positive half of the Gauss-Legendre rules.
constexpr double kGL8x[] = {0.1834346424956498, 0.5255324099163290,
                            0.7966664774136267, 0.9602898564975363};
constexpr double kGL8w[] = {0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};
constexpr double kGL16x[] = {0.0950125098376374, 0.2816035507792589,
                             0.4580167776572274, 0.6178762444026438,
                             0.7554044083550030, 0.8656312023878318,
                             0.9445750230732326, 0.9894009349916499};
constexpr double kGL16w[] = {0.1894506104550685, 0.1826034150449236,
                             0.1691565193950025, 0.1495959888165767,
                             0.1246289712555339, 0.0951585116824928,
                             0.0622535239386479, 0.0271524594117541};

}  // namespace

PanelRule gauss_legendre_panels(double a, double b, int panels, int points) {
  if (!(b > a) || panels < 1) throw std::invalid_argument("gauss_legendre_panels: bad interval");
  const double* xs;
  const double* ws;
  int half;
  if (points == 8) {
    xs = kGL8x; ws = kGL8w; half = 4;
  } else if (points == 16) {
    xs = kGL16x; ws = kGL16w; half = 8;
  } else {
    throw std::invalid_argument("gauss_legendre_panels: points must be 8 or 16");
  }
  PanelRule rule;
  rule.nodes.reserve(static_cast<size_t>(panels) * points);
  rule.weights.reserve(static_cast<size_t>(panels) * points);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double sc = 0.5 * h;
    // emit in increasing order: mirrored negative nodes first
    for (int i = half - 1; i >= 0; --i) {
      rule.nodes.push_back(mid - sc * xs[i]);
      rule.weights.push_back(sc * ws[i]);
    }
    for (int i = 0; i < half; ++i) {
      rule.nodes.push_back(mid + sc * xs[i]);
      rule.weights.push_back(sc * ws[i]);
    }
  }
  return rule;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, double* abserr) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 15, tol, &err);
  if (abserr) *abserr = err;
  return v;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw std::invalid_argument("MonotoneCubic: need >= 2 points");
  for (size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("MonotoneCubic: abscissae not increasing");

  std::vector<double> h(n - 1), delta(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    delta[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  d_.assign(n, 0.0);
  // Fritsch-Carlson: weighted harmonic means at interior points, one-sided
  // formulas clamped at the ends.
  for (size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d_[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (d * d0 <= 0.0) return 0.0;
    if (d0 * d1 <= 0.0 && std::abs(d) > 3.0 * std::abs(d0)) return 3.0 * d0;
    return d;
  };
  d_[0] = (n == 2) ? delta[0] : end_slope(h[0], h[1], delta[0], delta[1]);
  d_[n - 1] = (n == 2) ? delta[0] : end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

int MonotoneCubic::segment(double x) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  int i = static_cast<int>(it - x_.begin()) - 1;
  return std::clamp(i, 0, static_cast<int>(x_.size()) - 2);
}

double MonotoneCubic::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  const int i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
  if (x <= x_.front()) return d_.front();
  if (x >= x_.back()) return d_.back();
  const int i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  const double h00 = (6 * t2 - 6 * t) / h, h10 = 3 * t2 - 4 * t + 1;
  const double h01 = (-6 * t2 + 6 * t) / h, h11 = 3 * t2 - 2 * t;
  return h00 * y_[i] + h10 * d_[i] + h01 * y_[i + 1] + h11 * d_[i + 1];
}

double MonotoneCubic::solve(double v) const {
  if (v <= y_.front()) return x_.front();
  if (v >= y_.back()) return x_.back();
  const auto it = std::upper_bound(y_.begin(), y_.end(), v);
  int i = std::clamp(static_cast<int>(it - y_.begin()) - 1, 0, static_cast<int>(x_.size()) - 2);
  double lo = x_[i], hi = x_[i + 1];
  double x = 0.5 * (lo + hi);
  for (int k = 0; k < 100; ++k) {
    const double fx = (*this)(x) - v;
    if (std::abs(fx) < 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(v) + 1.0)) break;
    if (fx > 0.0) hi = x; else lo = x;
    const double dfx = derivative(x);
    double next = (dfx > 0.0) ? x - fx / dfx : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < 1e-15 * (std::abs(x) + 1.0)) { x = next; break; }
    x = next;
  }
  return x;
}

}  // namespace ruin
