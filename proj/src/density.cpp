#include "lcx/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lcx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFlatSlope = 1e-12;
constexpr double kConcavityTol = 1e-12;

// \int_0^h e^{a t} dt with a dedicated flat branch to avoid 0/0.
double seg_integral(double a, double h) {
  if (std::abs(a) < kFlatSlope) return h;
  return std::expm1(a * h) / a;
}

}  // namespace

LogConcaveDensity build_density(std::vector<double> knots,
                                std::vector<double> log_values,
                                std::optional<double> left_tail_slope,
                                std::optional<double> right_tail_slope) {
  const std::size_t n = knots.size();
  if (n == 0) throw EmptySupport("density needs at least one knot");
  if (log_values.size() != n)
    throw InvalidParameter("knots and log_values differ in length");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(knots[i]) || !std::isfinite(log_values[i]))
      throw InvalidParameter("knots and log_values must be finite");
    if (i + 1 < n && !(knots[i + 1] > knots[i]))
      throw InvalidParameter("knots must be strictly increasing");
  }
  if (left_tail_slope && !(*left_tail_slope > 0.0))
    throw NonIntegrable("left tail slope must be positive");
  if (right_tail_slope && !(*right_tail_slope < 0.0))
    throw NonIntegrable("right tail slope must be negative");
  if (n == 1 && !left_tail_slope && !right_tail_slope)
    throw EmptySupport("single knot without tails has measure-zero support");

  std::vector<double> secants(n >= 2 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    secants[i] = (log_values[i + 1] - log_values[i]) / (knots[i + 1] - knots[i]);
    if (i > 0 && secants[i] > secants[i - 1] + kConcavityTol)
      throw NonConcavePotential("secant slopes increase at knot " +
                                std::to_string(i));
  }
  if (!secants.empty()) {
    if (left_tail_slope && *left_tail_slope < secants.front() - kConcavityTol)
      throw NonConcavePotential("left tail slope below first secant");
    if (right_tail_slope && secants.back() < *right_tail_slope - kConcavityTol)
      throw NonConcavePotential("last secant below right tail slope");
  }

  // Log-partition, computed in value-shifted space for stability.
  const double vmax = *std::max_element(log_values.begin(), log_values.end());
  double z = 0.0;
  if (left_tail_slope) z += std::exp(log_values.front() - vmax) / *left_tail_slope;
  for (std::size_t i = 0; i + 1 < n; ++i)
    z += std::exp(log_values[i] - vmax) *
         seg_integral(secants[i], knots[i + 1] - knots[i]);
  if (right_tail_slope)
    z += std::exp(log_values.back() - vmax) / -*right_tail_slope;
  if (!(z > 0.0) || !std::isfinite(z))
    throw NonIntegrable("potential does not normalize");

  LogConcaveDensity d;
  d.knots_ = std::move(knots);
  d.log_values_ = std::move(log_values);
  d.left_slope_ = left_tail_slope;
  d.right_slope_ = right_tail_slope;
  d.normalization_ = vmax + std::log(z);
  d.secants_ = std::move(secants);

  d.knot_cdf_.resize(n);
  d.knot_cdf_[0] = d.left_slope_
                       ? std::exp(d.knot_log_value(0)) / *d.left_slope_
                       : 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    d.knot_cdf_[i + 1] = d.knot_cdf_[i] +
                         std::exp(d.knot_log_value(i)) *
                             seg_integral(d.secants_[i],
                                          d.knots_[i + 1] - d.knots_[i]);

  d.argmax_ = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (d.log_values_[i] > d.log_values_[d.argmax_]) d.argmax_ = i;
  return d;
}

double LogConcaveDensity::support_lo() const {
  return left_slope_ ? -kInf : knots_.front();
}

double LogConcaveDensity::support_hi() const {
  return right_slope_ ? kInf : knots_.back();
}

std::size_t LogConcaveDensity::locate_piece(double x) const {
  // Index i such that x lies in [knots_[i], knots_[i+1]); callers handle
  // the tail ranges themselves.
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  if (it == knots_.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
  return std::min(i, knots_.size() >= 2 ? knots_.size() - 2 : std::size_t{0});
}

double LogConcaveDensity::log_evaluate(double x) const {
  if (x < knots_.front()) {
    if (!left_slope_) return -kInf;
    return knot_log_value(0) + *left_slope_ * (x - knots_.front());
  }
  if (x > knots_.back()) {
    if (!right_slope_) return -kInf;
    return knot_log_value(knots_.size() - 1) +
           *right_slope_ * (x - knots_.back());
  }
  if (knots_.size() == 1) return knot_log_value(0);
  std::size_t i = locate_piece(x);
  return knot_log_value(i) + secants_[i] * (x - knots_[i]);
}

double LogConcaveDensity::evaluate(double x) const {
  double lv = log_evaluate(x);
  return lv == -kInf ? 0.0 : std::exp(lv);
}

double LogConcaveDensity::integrate(double a, double b) const {
  if (!(a <= b)) throw InvalidParameter("integrate expects a <= b");
  double mass = 0.0;
  for (const Piece& p : pieces()) {
    const double s = std::max(a, p.x0);
    const double t = std::min(b, p.x1);
    if (!(t > s)) continue;
    if (s == -kInf) {
      // t is finite here: slope > 0 on a left tail.
      mass += std::exp(p.anchor_log + p.slope * (t - p.anchor_x)) / p.slope;
    } else if (t == kInf) {
      mass += std::exp(p.anchor_log + p.slope * (s - p.anchor_x)) / -p.slope;
    } else {
      mass += std::exp(p.anchor_log + p.slope * (s - p.anchor_x)) *
              seg_integral(p.slope, t - s);
    }
  }
  return mass;
}

double LogConcaveDensity::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw InvalidParameter("quantile needs u in [0,1]");
  const std::size_t n = knots_.size();
  if (u <= knot_cdf_.front()) {
    if (!left_slope_) return knots_.front();
    if (u == 0.0) return -kInf;
    return knots_.front() +
           (std::log(u * *left_slope_) - knot_log_value(0)) / *left_slope_;
  }
  const double right_mass = right_slope_ ? 1.0 - knot_cdf_.back() : 0.0;
  if (u >= 1.0 - right_mass) {
    if (!right_slope_) return knots_.back();
    if (u == 1.0) return kInf;
    const double sr = *right_slope_;
    return knots_.back() +
           (std::log((1.0 - u) * -sr) - knot_log_value(n - 1)) / sr;
  }

  auto it = std::upper_bound(knot_cdf_.begin(), knot_cdf_.end(), u);
  std::size_t i = static_cast<std::size_t>(it - knot_cdf_.begin());
  i = (i == 0) ? 0 : i - 1;
  i = std::min(i, n - 2);
  const double target = u - knot_cdf_[i];
  const double a = secants_[i];
  const double fv = std::exp(knot_log_value(i));
  double dx;
  if (std::abs(a) < kFlatSlope) {
    dx = target / fv;
  } else {
    dx = std::log1p(a * target / fv) / a;
  }
  double x = knots_[i] + dx;
  double lo = knots_[i], hi = knots_[i + 1];
  if (x < lo || x > hi || !(std::abs(cdf(x) - u) <= 1e-12)) {
    // Bisection fallback when the closed form is degraded by cancellation.
    x = std::clamp(x, lo, hi);
    for (int iter = 0; iter < 200 && hi - lo > 1e-16 * (1.0 + std::abs(hi));
         ++iter) {
      double mid = 0.5 * (lo + hi);
      (cdf(mid) < u ? lo : hi) = mid;
    }
    x = 0.5 * (lo + hi);
  }
  return x;
}

LogConcaveDensity::SupNorm LogConcaveDensity::sup_norm() const {
  return {std::exp(knot_log_value(argmax_)), knots_[argmax_]};
}

std::vector<LogConcaveDensity::Piece> LogConcaveDensity::pieces() const {
  std::vector<Piece> out;
  const std::size_t n = knots_.size();
  if (left_slope_)
    out.push_back({-kInf, knots_.front(), knots_.front(), knot_log_value(0),
                   *left_slope_});
  for (std::size_t i = 0; i + 1 < n; ++i)
    out.push_back({knots_[i], knots_[i + 1], knots_[i], knot_log_value(i),
                   secants_[i]});
  if (right_slope_)
    out.push_back({knots_.back(), kInf, knots_.back(),
                   knot_log_value(n - 1), *right_slope_});
  return out;
}

bool LogConcaveDensity::is_non_increasing(double tol) const {
  if (left_slope_) return false;
  for (double s : secants_)
    if (s > tol) return false;
  return true;
}

double evaluate(const LogConcaveDensity& d, double x) { return d.evaluate(x); }

double integrate(const LogConcaveDensity& d, double a, double b) {
  return d.integrate(a, b);
}

LogConcaveDensity::SupNorm sup_norm(const LogConcaveDensity& d) {
  return d.sup_norm();
}

LogConcaveDensity exponential_match(const LogConcaveDensity& d) {
  return exponential_density(d.sup_norm().value);
}

LogConcaveDensity reflect(const LogConcaveDensity& d) {
  std::vector<double> knots(d.knots().rbegin(), d.knots().rend());
  for (double& x : knots) x = -x;
  std::vector<double> vals(d.log_values().rbegin(), d.log_values().rend());
  std::optional<double> left, right;
  if (d.right_tail_slope()) left = -*d.right_tail_slope();
  if (d.left_tail_slope()) right = -*d.left_tail_slope();
  return build_density(std::move(knots), std::move(vals), left, right);
}

LogConcaveDensity shift(const LogConcaveDensity& d, double c) {
  std::vector<double> knots = d.knots();
  for (double& x : knots) x += c;
  return build_density(std::move(knots), d.log_values(), d.left_tail_slope(),
                       d.right_tail_slope());
}

LogConcaveDensity scale(const LogConcaveDensity& d, double lambda) {
  if (!(lambda > 0.0)) throw InvalidParameter("scale needs lambda > 0");
  std::vector<double> knots = d.knots();
  for (double& x : knots) x *= lambda;
  std::optional<double> left, right;
  if (d.left_tail_slope()) left = *d.left_tail_slope() / lambda;
  if (d.right_tail_slope()) right = *d.right_tail_slope() / lambda;
  return build_density(std::move(knots), d.log_values(), left, right);
}

LogConcaveDensity exponential_density(double rate) {
  if (!(rate > 0.0)) throw InvalidParameter("exponential rate must be positive");
  return build_density({0.0}, {std::log(rate)}, {}, -rate);
}

LogConcaveDensity uniform_density(double lo, double hi) {
  if (!(hi > lo)) throw InvalidParameter("uniform needs hi > lo");
  return build_density({lo, hi}, {0.0, 0.0});
}

LogConcaveDensity laplace_density(double rate) {
  if (!(rate > 0.0)) throw InvalidParameter("laplace rate must be positive");
  return build_density({0.0}, {std::log(rate / 2.0)}, rate, -rate);
}

LogConcaveDensity random_logconcave(std::uint64_t seed, int n_knots,
                                    std::pair<double, double> domain,
                                    bool monotone) {
  if (n_knots < 1) throw InvalidParameter("need at least one knot");
  double lo = monotone ? 0.0 : domain.first;
  const double hi = domain.second;
  if (!(hi > lo)) throw InvalidParameter("empty domain");
  const double span = hi - lo;

  CounterRng rng(seed);
  const std::size_t n = static_cast<std::size_t>(n_knots);

  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = lo + span * (static_cast<double>(i) + 0.9 * rng.next_double()) /
                     static_cast<double>(n);
  if (monotone) xs[0] = 0.0;

  std::vector<double> slopes(n >= 1 ? n - 1 : 0);
  for (double& s : slopes)
    s = monotone ? -3.0 * rng.next_double() : 6.0 * (rng.next_double() - 0.5);
  std::sort(slopes.begin(), slopes.end(), std::greater<double>());

  std::vector<double> vs(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    vs[i + 1] = vs[i] + slopes[i] * (xs[i + 1] - xs[i]);

  const double coin_left = rng.next_double();
  const double extra_left = rng.next_double();
  const double coin_right = rng.next_double();
  const double extra_right = rng.next_double();

  std::optional<double> s_left, s_right;
  const double first = slopes.empty() ? 0.0 : slopes.front();
  const double last = slopes.empty() ? 0.0 : slopes.back();
  if (!monotone && coin_left < 0.5)
    s_left = std::max(first, 0.0) + 0.05 + 2.0 * extra_left;
  if (coin_right < 0.5 || n == 1)
    s_right = std::min(last, 0.0) - 0.05 - 2.0 * extra_right;

  return build_density(std::move(xs), std::move(vs), s_left, s_right);
}

DensityEvaluator make_evaluator(const LogConcaveDensity& d) {
  DensityEvaluator ev;
  ev.pdf = [d](double x) { return d.evaluate(x); };
  ev.lo = d.support_lo();
  ev.hi = d.support_hi();
  ev.breakpoints = d.knots();
  ev.left_decay = d.left_tail_slope();
  ev.right_decay = d.right_tail_slope();
  ev.mode_hint = d.sup_norm().argmax;
  return ev;
}

}  // namespace lcx
