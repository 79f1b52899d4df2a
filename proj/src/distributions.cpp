#include "ruin/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

#include "ruin/errors.hpp"

namespace ruin {

namespace {
const std::vector<Atom> kNoAtoms;
constexpr double kTailQ = 1e-11;

// One adaptive pass over a tail-truncated support can exhaust its bisection
// depth when the support spans many decades (heavy tails), so slice the
// domain at fixed quantiles and integrate piecewise; every slice then holds
// comparable mass and resolves at its own scale.
double sliced_quadrature(const Dist& d, const std::function<double(double)>& g,
                         double xlo, double xhi, double tol) {
  static constexpr double kCuts[] = {1e-9,       1e-6, 1e-4, 1e-2, 0.1,
                                     0.3,        0.5,  0.7,  0.9,  0.99,
                                     1.0 - 1e-4, 1.0 - 1e-6, 1.0 - 1e-9};
  std::vector<double> edges{xlo};
  for (double u : kCuts) {
    const double q = d.quantile(u);
    if (q > edges.back() && q < xhi) edges.push_back(q);
  }
  edges.push_back(xhi);
  double acc = 0.0;
  for (size_t i = 0; i + 1 < edges.size(); ++i)
    acc += integrate(g, edges[i], edges[i + 1], tol);
  // a quantile cut alone can drop slowly decaying tail contributions (think
  // second moments under a quartic tail), so on unbounded sides keep adding
  // geometric slices until they stop mattering
  const Support sup = d.support();
  if (!std::isfinite(sup.hi)) {
    double e = xhi, w = std::max(1.0, std::abs(xhi));
    for (int i = 0; i < 80; ++i) {
      const double piece = integrate(g, e, e + w, tol);
      acc += piece;
      e += w;
      w *= 2.0;
      if (std::abs(piece) <= 1e-15 * (1.0 + std::abs(acc))) break;
    }
  }
  if (!std::isfinite(sup.lo)) {
    double e = xlo, w = std::max(1.0, std::abs(xlo));
    for (int i = 0; i < 80; ++i) {
      const double piece = integrate(g, e - w, e, tol);
      acc += piece;
      e -= w;
      w *= 2.0;
      if (std::abs(piece) <= 1e-15 * (1.0 + std::abs(acc))) break;
    }
  }
  return acc;
}
}  // namespace

double Dist::pdf(double) const { throw NoDensity("law has no density"); }

const std::vector<Atom>& Dist::atoms() const { return kNoAtoms; }

double Dist::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("quantile: u outside (0,1)");
  Support s = support();
  double lo = s.lo, hi = s.hi;
  if (!std::isfinite(lo)) {
    lo = -1.0;
    for (int i = 0; i < 200 && cdf(lo) >= u; ++i) lo = 2.0 * lo - 1.0;
  }
  if (!std::isfinite(hi)) {
    hi = 1.0;
    for (int i = 0; i < 200 && cdf(hi) < u; ++i) hi = 2.0 * hi + 1.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo) + std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) >= u) hi = mid; else lo = mid;
  }
  return hi;
}

double Dist::integral_against(const std::function<double(double)>& f) const {
  if (is_discrete()) {
    double acc = 0.0;
    for (const Atom& a : atoms()) acc += a.p * f(a.x);
    return acc;
  }
  const double lo = quantile(kTailQ);
  const double hi = quantile(1.0 - kTailQ);
  return sliced_quadrature(*this, [this, &f](double x) { return pdf(x) * f(x); }, lo, hi, 1e-11);
}

ExtReal Dist::raw_moment(int k) const {
  if (k == 0) return ExtReal::of(1.0);
  return ExtReal::of(integral_against([k](double x) { return std::pow(x, k); }));
}

ExtReal Dist::abs_moment(double g) const {
  if (g == 0.0) return ExtReal::of(1.0);
  return ExtReal::of(integral_against([g](double x) { return std::pow(std::abs(x), g); }));
}

ExtReal Dist::exp_moment(double s) const {
  if (s == 0.0) return ExtReal::of(1.0);
  if (is_discrete()) {
    double acc = 0.0;
    for (const Atom& a : atoms()) acc += a.p * std::exp(s * a.x);
    return ExtReal::of(acc);
  }
  Support sup = support();
  double lo = quantile(1e-12), hi = quantile(1.0 - 1e-12);
  // Certify the growing tail is negligible before integrating; push the cut
  // outward until exp(s x) * tail-mass is provably tiny, else declare
  // divergence.
  const double log_target = std::log(1e-15);
  if (s > 0.0) {
    if (std::isfinite(sup.hi)) {
      hi = sup.hi;
    } else {
      bool certified = false;
      for (int i = 0; i < 200; ++i) {
        const double mass = std::max(0.0, 1.0 - cdf(hi));
        const double logtail = s * hi + std::log(mass);
        if (logtail < log_target) { certified = true; break; }
        if (logtail > 700.0) return ExtReal::infinite();
        hi = 2.0 * hi + 10.0;
      }
      if (!certified) return ExtReal::infinite();
    }
  } else {
    if (std::isfinite(sup.lo)) {
      lo = sup.lo;
    } else {
      bool certified = false;
      for (int i = 0; i < 200; ++i) {
        const double mass = std::max(0.0, cdf(lo));
        const double logtail = s * lo + std::log(mass);
        if (logtail < log_target) { certified = true; break; }
        if (logtail > 700.0) return ExtReal::infinite();
        lo = 2.0 * lo - 10.0;
      }
      if (!certified) return ExtReal::infinite();
    }
  }
  return ExtReal::of(sliced_quadrature(
      *this, [this, s](double x) { return pdf(x) * std::exp(s * x); }, lo, hi, 1e-11));
}

double expect(const Dist& d, const std::function<double(double)>& f) {
  if (d.is_discrete()) {
    double acc = 0.0;
    for (const Atom& a : d.atoms()) acc += a.p * f(a.x);
    return acc;
  }
  const double lo = d.quantile(kTailQ);
  const double hi = d.quantile(1.0 - kTailQ);
  return sliced_quadrature(d, [&d, &f](double x) { return d.pdf(x) * f(x); }, lo, hi, 1e-10);
}

double expect_pair(const Dist& dx, const Dist& dy,
                   const std::function<double(double, double)>& f) {
  if (dx.is_discrete()) {
    double acc = 0.0;
    for (const Atom& a : dx.atoms())
      acc += a.p * expect(dy, [&](double y) { return f(a.x, y); });
    return acc;
  }
  if (dy.is_discrete()) {
    double acc = 0.0;
    for (const Atom& b : dy.atoms())
      acc += b.p * expect(dx, [&](double x) { return f(x, b.x); });
    return acc;
  }
  const double lo = dx.quantile(1e-10), hi = dx.quantile(1.0 - 1e-10);
  const PanelRule rule = gauss_legendre_panels(lo, hi, 96, 16);
  double acc = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    acc += rule.weights[i] * dx.pdf(x) * expect(dy, [&](double y) { return f(x, y); });
  }
  return acc;
}

// ---------------------------------------------------------------------------

DegenerateDist::DegenerateDist(double c) : c_(c), atoms_{{c, 1.0}} {}

double DegenerateDist::cdf(double x) const { return x >= c_ ? 1.0 : 0.0; }

double DegenerateDist::sample(Rng& rng) const {
  rng.uniform01();  // keep stream consumption uniform across laws
  return c_;
}

ExtReal DegenerateDist::raw_moment(int k) const { return ExtReal::of(std::pow(c_, k)); }
ExtReal DegenerateDist::abs_moment(double g) const { return ExtReal::of(std::pow(std::abs(c_), g)); }
ExtReal DegenerateDist::exp_moment(double s) const { return ExtReal::of(std::exp(s * c_)); }

FiniteDiscreteDist::FiniteDiscreteDist(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("FiniteDiscreteDist: no atoms");
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
  double total = 0.0;
  cum_.reserve(atoms_.size());
  for (const Atom& a : atoms_) {
    if (a.p < 0.0) throw std::invalid_argument("FiniteDiscreteDist: negative probability");
    total += a.p;
    cum_.push_back(total);
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("FiniteDiscreteDist: probabilities must sum to 1");
  cum_.back() = 1.0;
}

double FiniteDiscreteDist::cdf(double x) const {
  const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x,
                                   [](double v, const Atom& a) { return v < a.x; });
  const auto idx = it - atoms_.begin();
  return idx == 0 ? 0.0 : cum_[idx - 1];
}

Support FiniteDiscreteDist::support() const { return {atoms_.front().x, atoms_.back().x}; }

double FiniteDiscreteDist::quantile(double u) const {
  const auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
  const auto idx = std::min<std::ptrdiff_t>(it - cum_.begin(), atoms_.size() - 1);
  return atoms_[idx].x;
}

ExtReal FiniteDiscreteDist::raw_moment(int k) const {
  double acc = 0.0;
  for (const Atom& a : atoms_) acc += a.p * std::pow(a.x, k);
  return ExtReal::of(acc);
}

ExtReal FiniteDiscreteDist::abs_moment(double g) const {
  double acc = 0.0;
  for (const Atom& a : atoms_) acc += a.p * std::pow(std::abs(a.x), g);
  return ExtReal::of(acc);
}

ExtReal FiniteDiscreteDist::exp_moment(double s) const {
  double acc = 0.0;
  for (const Atom& a : atoms_) acc += a.p * std::exp(s * a.x);
  return ExtReal::of(acc);
}

UniformDist::UniformDist(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(hi > lo)) throw std::invalid_argument("UniformDist: empty interval");
}

double UniformDist::cdf(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  return (x - lo_) / (hi_ - lo_);
}

double UniformDist::pdf(double x) const {
  return (x >= lo_ && x <= hi_) ? 1.0 / (hi_ - lo_) : 0.0;
}

ExtReal UniformDist::raw_moment(int k) const {
  return ExtReal::of((std::pow(hi_, k + 1) - std::pow(lo_, k + 1)) / ((k + 1) * (hi_ - lo_)));
}

ExtReal UniformDist::exp_moment(double s) const {
  if (s == 0.0) return ExtReal::of(1.0);
  return ExtReal::of((std::exp(s * hi_) - std::exp(s * lo_)) / (s * (hi_ - lo_)));
}

ExponentialDist::ExponentialDist(double rate) : rate_(rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("ExponentialDist: rate must be positive");
}

double ExponentialDist::cdf(double x) const { return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x); }

Support ExponentialDist::support() const {
  return {0.0, std::numeric_limits<double>::infinity()};
}

double ExponentialDist::pdf(double x) const {
  return x < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * x);
}

double ExponentialDist::quantile(double u) const { return -std::log1p(-u) / rate_; }

ExtReal ExponentialDist::raw_moment(int k) const {
  return ExtReal::of(std::exp(std::lgamma(k + 1.0)) / std::pow(rate_, k));
}

ExtReal ExponentialDist::exp_moment(double s) const {
  if (s >= rate_) return ExtReal::infinite();
  return ExtReal::of(rate_ / (rate_ - s));
}

GaussianDist::GaussianDist(double mean, double stddev) : mu_(mean), sigma_(stddev) {
  if (!(stddev > 0.0)) throw std::invalid_argument("GaussianDist: stddev must be positive");
}

double GaussianDist::cdf(double x) const {
  return 0.5 * std::erfc(-(x - mu_) / (sigma_ * std::sqrt(2.0)));
}

Support GaussianDist::support() const {
  return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
}

double GaussianDist::pdf(double x) const {
  const double z = (x - mu_) / sigma_;
  return std::exp(-0.5 * z * z) / (sigma_ * std::sqrt(2.0 * M_PI));
}

double GaussianDist::quantile(double u) const {
  boost::math::normal_distribution<double> n(mu_, sigma_);
  return boost::math::quantile(n, u);
}

ExtReal GaussianDist::raw_moment(int k) const {
  // E X^k via the recurrence M_k = mu M_{k-1} + (k-1) sigma^2 M_{k-2}
  double m2 = 1.0, m1 = mu_;
  if (k == 0) return ExtReal::of(1.0);
  if (k == 1) return ExtReal::of(mu_);
  for (int i = 2; i <= k; ++i) {
    const double m = mu_ * m1 + (i - 1) * sigma_ * sigma_ * m2;
    m2 = m1;
    m1 = m;
  }
  return ExtReal::of(m1);
}

ExtReal GaussianDist::exp_moment(double s) const {
  return ExtReal::of(std::exp(s * mu_ + 0.5 * s * s * sigma_ * sigma_));
}

// ---------------------------------------------------------------------------

struct GigClaimDist::Table {
  MonotoneCubic interp;
  double total = 0.0;
  double x_max = 36.0;
};

namespace {
double gig_pdf(double x) {
  if (x <= 0.0 || 1.0 / x > 708.0) return 0.0;
  return std::exp(-x - 1.0 / x) / (2.0 * GigClaimDist::kNorm * x * x);
}
}  // namespace

const GigClaimDist::Table& GigClaimDist::table() {
  static const Table t = [] {
    Table tb;
    const int m = 4096;
    std::vector<double> xs(m + 1), fs(m + 1);
    // half-cosine spacing: dense near 0 where the density turns on sharply
    for (int j = 0; j <= m; ++j)
      xs[j] = tb.x_max * (1.0 - std::cos(0.5 * M_PI * j / m));
    xs[0] = 0.0;
    xs[m] = tb.x_max;
    fs[0] = 0.0;
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
      const PanelRule r = gauss_legendre_panels(xs[j], xs[j + 1], 1, 16);
      for (size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * gig_pdf(r.nodes[i]);
      fs[j + 1] = acc;
    }
    tb.total = acc;
    tb.interp = MonotoneCubic(std::move(xs), std::move(fs));
    return tb;
  }();
  return t;
}

GigClaimDist::GigClaimDist() { table(); }

double GigClaimDist::cdf(double x) const {
  const Table& t = table();
  if (x <= 0.0) return 0.0;
  if (x >= t.x_max) return t.total;
  return t.interp(x);
}

Support GigClaimDist::support() const {
  return {0.0, std::numeric_limits<double>::infinity()};
}

double GigClaimDist::pdf(double x) const { return gig_pdf(x); }

double GigClaimDist::quantile(double u) const {
  const Table& t = table();
  return t.interp.solve(std::min(u, t.total));
}

double GigClaimDist::sample(Rng& rng) const {
  // inverse transform of the tabulated law; mass beyond x_max (< 1e-6) is
  // folded in by scaling, which keeps the map strictly monotone in u
  const Table& t = table();
  return t.interp.solve(rng.uniform01() * t.total);
}

ExtReal GigClaimDist::raw_moment(int k) const {
  return ExtReal::of(integrate([k](double x) { return std::pow(x, k) * gig_pdf(x); },
                               0.0, table().x_max, 1e-12));
}

ExtReal GigClaimDist::abs_moment(double g) const {
  return ExtReal::of(integrate([g](double x) { return std::pow(x, g) * gig_pdf(x); },
                               0.0, table().x_max, 1e-12));
}

ExtReal GigClaimDist::exp_moment(double s) const {
  if (s > 1.0) return ExtReal::infinite();
  // density tail ~ x^{-2} e^{-(1-s)x}: converges for s <= 1.  Substituting
  // u = 1/x maps the tail onto a short interval, exact even at s = 1 where
  // no fixed cut would do.
  const double cut = 36.0;
  const double body = integrate([s](double x) { return std::exp(s * x) * gig_pdf(x); },
                                0.0, cut, 1e-12);
  const double tail = integrate([s](double u) { return std::exp(-(1.0 - s) / u - u); },
                                0.0, 1.0 / cut, 1e-13) /
                      (2.0 * kNorm);
  return ExtReal::of(body + tail);
}

// ---------------------------------------------------------------------------

namespace {
constexpr double kSqrt2 = 1.4142135623730951;

double heavy_pdf(double t) {
  const double u = t - 1.0;
  const double u2 = u * u;
  return kSqrt2 / (M_PI * (1.0 + u2 * u2));
}

double heavy_cdf(double t) {
  const double u = t - 1.0;
  const double u2 = u * u;
  const double a = (1.0 / (4.0 * kSqrt2)) *
                   std::log((u2 + kSqrt2 * u + 1.0) / (u2 - kSqrt2 * u + 1.0));
  const double b = (1.0 / (2.0 * kSqrt2)) *
                   (std::atan(kSqrt2 * u + 1.0) + std::atan(kSqrt2 * u - 1.0));
  return std::clamp((kSqrt2 / M_PI) * (a + b) + 0.5, 0.0, 1.0);
}
}  // namespace

struct HeavyTailIncrementDist::Table {
  MonotoneCubic theta_of_u;  // cdf values -> theta, with x = 1 + tan(theta)
  double u_lo = 0.0, u_hi = 1.0;
};

const HeavyTailIncrementDist::Table& HeavyTailIncrementDist::table() {
  static const Table t = [] {
    const int m = 4096;
    const double theta_max = 0.5 * M_PI - 5e-4;  // |x - 1| up to ~2000
    std::vector<double> thetas(m + 1), us(m + 1);
    for (int j = 0; j <= m; ++j) {
      thetas[j] = -theta_max + 2.0 * theta_max * j / m;
      us[j] = heavy_cdf(1.0 + std::tan(thetas[j]));
    }
    Table tb;
    tb.u_lo = us.front();
    tb.u_hi = us.back();
    tb.theta_of_u = MonotoneCubic(std::move(us), std::move(thetas));
    return tb;
  }();
  return t;
}

double HeavyTailIncrementDist::cdf(double x) const { return heavy_cdf(x); }

Support HeavyTailIncrementDist::support() const {
  return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
}

double HeavyTailIncrementDist::pdf(double x) const { return heavy_pdf(x); }

double HeavyTailIncrementDist::quantile(double u) const {
  const Table& t = table();
  return 1.0 + std::tan(t.theta_of_u(std::clamp(u, t.u_lo, t.u_hi)));
}

double HeavyTailIncrementDist::sample(Rng& rng) const {
  // scale u into the tabulated range (mass outside is ~4e-11)
  const Table& t = table();
  const double u = t.u_lo + rng.uniform01() * (t.u_hi - t.u_lo);
  return 1.0 + std::tan(t.theta_of_u(u));
}

ExtReal HeavyTailIncrementDist::raw_moment(int k) const {
  switch (k) {
    case 0: return ExtReal::of(1.0);
    case 1: return ExtReal::of(1.0);
    case 2: return ExtReal::of(2.0);
    default: return ExtReal::infinite();
  }
}

ExtReal HeavyTailIncrementDist::abs_moment(double g) const {
  if (g >= 3.0) return ExtReal::infinite();
  if (g == 0.0) return ExtReal::of(1.0);
  const double inf = std::numeric_limits<double>::infinity();
  return ExtReal::of(integrate(
      [g](double x) { return std::pow(std::abs(x), g) * heavy_pdf(x); }, -inf, inf, 1e-10));
}

ExtReal HeavyTailIncrementDist::exp_moment(double s) const {
  if (s == 0.0) return ExtReal::of(1.0);
  return ExtReal::infinite();
}

// ---------------------------------------------------------------------------

AffineDist::AffineDist(double a, double b, DistPtr inner)
    : a_(a), b_(b), inner_(std::move(inner)) {
  if (b_ == 0.0) throw std::invalid_argument("AffineDist: b must be nonzero");
  if (!inner_) throw std::invalid_argument("AffineDist: null inner law");
  if (inner_->is_discrete()) {
    for (const Atom& at : inner_->atoms()) atoms_.push_back({a_ + b_ * at.x, at.p});
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& l, const Atom& r) { return l.x < r.x; });
  }
}

double AffineDist::cdf(double x) const {
  if (is_discrete()) {
    double acc = 0.0;
    for (const Atom& at : atoms_)
      if (at.x <= x) acc += at.p;
    return acc;
  }
  const double t = (x - a_) / b_;
  return b_ > 0.0 ? inner_->cdf(t) : 1.0 - inner_->cdf(t);
}

Support AffineDist::support() const {
  const Support s = inner_->support();
  if (b_ > 0.0) return {a_ + b_ * s.lo, a_ + b_ * s.hi};
  return {a_ + b_ * s.hi, a_ + b_ * s.lo};
}

bool AffineDist::has_density() const { return inner_->has_density(); }

double AffineDist::pdf(double x) const { return inner_->pdf((x - a_) / b_) / std::abs(b_); }

bool AffineDist::is_discrete() const { return inner_->is_discrete(); }

const std::vector<Atom>& AffineDist::atoms() const { return atoms_; }

double AffineDist::quantile(double u) const {
  if (is_discrete()) {
    double acc = 0.0;
    for (const Atom& at : atoms_) {
      acc += at.p;
      if (acc >= u) return at.x;
    }
    return atoms_.back().x;
  }
  return b_ > 0.0 ? a_ + b_ * inner_->quantile(u) : a_ + b_ * inner_->quantile(1.0 - u);
}

double AffineDist::sample(Rng& rng) const { return a_ + b_ * inner_->sample(rng); }

ExtReal AffineDist::raw_moment(int k) const {
  double acc = 0.0;
  double binom = 1.0;
  for (int i = 0; i <= k; ++i) {
    const ExtReal mi = inner_->raw_moment(i);
    if (!mi.finite) return ExtReal::infinite();
    acc += binom * std::pow(a_, k - i) * std::pow(b_, i) * mi.value;
    binom = binom * (k - i) / (i + 1.0);
  }
  return ExtReal::of(acc);
}

ExtReal AffineDist::abs_moment(double g) const {
  // |a + bX|^g diverges exactly when |X|^g does (b != 0)
  if (!inner_->abs_moment(g).finite) return ExtReal::infinite();
  return Dist::abs_moment(g);
}

ExtReal AffineDist::exp_moment(double s) const {
  const ExtReal inner = inner_->exp_moment(s * b_);
  if (!inner.finite) return ExtReal::infinite();
  return ExtReal::of(std::exp(s * a_) * inner.value);
}

DistPtr binomial_interest_distribution() {
  static const double choose[11] = {1, 10, 45, 120, 210, 252, 210, 120, 45, 10, 1};
  std::vector<Atom> atoms;
  atoms.reserve(11);
  for (int j = 0; j <= 10; ++j) atoms.push_back({0.01 * j, choose[j] / 1024.0});
  return std::make_shared<FiniteDiscreteDist>(std::move(atoms));
}

}  // namespace ruin
