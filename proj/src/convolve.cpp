#include "lcx/convolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lcx/rearrange.hpp"

namespace lcx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDegenerateSlope = 1e-12;

// \int_{ylo}^{yhi} e^{c0 + c1 y} dy with infinite ends allowed whenever the
// sign of c1 makes the integral converge (guaranteed for tail pairs).
double exp_segment(double c0, double c1, double ylo, double yhi) {
  if (ylo == -kInf) return std::exp(c0 + c1 * yhi) / c1;
  if (yhi == kInf) return std::exp(c0 + c1 * ylo) / -c1;
  const double h = yhi - ylo;
  if (std::abs(c1) < kDegenerateSlope)
    return std::exp(c0 + c1 * ylo) * h;  // equal-slope degenerate branch
  return std::exp(c0 + c1 * ylo) * std::expm1(c1 * h) / c1;
}

}  // namespace

ConvolutionClosure::ConvolutionClosure(LogConcaveDensity f, LogConcaveDensity g)
    : f_(std::move(f)), g_(std::move(g)) {
  pf_ = f_.pieces();
  pg_ = g_.pieces();
  lo_ = f_.support_lo() + g_.support_lo();
  hi_ = f_.support_hi() + g_.support_hi();

  const std::vector<double>& kf = f_.knots();
  const std::vector<double>& kg = g_.knots();
  // Knot sums are the kinks of the result. Cap the candidate grid for very
  // fine operands (fitted densities) by striding.
  const std::size_t total = kf.size() * kg.size();
  const std::size_t stride =
      total > 50000 ? (total / 50000 + 1) : std::size_t{1};
  for (std::size_t i = 0; i < kf.size(); i += (kf.size() > 250 ? stride : 1))
    for (std::size_t j = 0; j < kg.size(); j += (kg.size() > 250 ? stride : 1))
      knot_sums_.push_back(kf[i] + kg[j]);
  knot_sums_.push_back(kf.front() + kg.front());
  knot_sums_.push_back(kf.back() + kg.back());
  std::sort(knot_sums_.begin(), knot_sums_.end());
  knot_sums_.erase(std::unique(knot_sums_.begin(), knot_sums_.end()),
                   knot_sums_.end());
}

double ConvolutionClosure::eval(double x) const {
  if (x <= lo_ || x >= hi_) return 0.0;
  double total = 0.0;
  for (const auto& a : pf_) {
    for (const auto& b : pg_) {
      // y ranges over piece a; x - y over piece b.
      const double ylo = std::max(a.x0, b.x1 == kInf ? -kInf : x - b.x1);
      const double yhi = std::min(a.x1, b.x0 == -kInf ? kInf : x - b.x0);
      if (!(yhi > ylo)) continue;
      const double c1 = a.slope - b.slope;
      const double c0 = a.anchor_log - a.slope * a.anchor_x + b.anchor_log +
                        b.slope * (x - b.anchor_x);
      total += exp_segment(c0, c1, ylo, yhi);
    }
  }
  return total;
}

DensityEvaluator ConvolutionClosure::evaluator() const {
  DensityEvaluator ev;
  const ConvolutionClosure copy = *this;
  ev.pdf = [copy](double x) { return copy.eval(x); };
  ev.lo = lo_;
  ev.hi = hi_;
  ev.breakpoints = knot_sums_;
  if (hi_ == kInf) {
    double r = -kInf;
    if (f_.right_tail_slope()) r = std::max(r, *f_.right_tail_slope());
    if (g_.right_tail_slope()) r = std::max(r, *g_.right_tail_slope());
    ev.right_decay = r;
  }
  if (lo_ == -kInf) {
    double l = kInf;
    if (f_.left_tail_slope()) l = std::min(l, *f_.left_tail_slope());
    if (g_.left_tail_slope()) l = std::min(l, *g_.left_tail_slope());
    ev.left_decay = l;
  }
  ev.mode_hint = f_.sup_norm().argmax + g_.sup_norm().argmax;
  return ev;
}

double conv_eval(const LogConcaveDensity& f, const LogConcaveDensity& g,
                 double x) {
  return ConvolutionClosure(f, g).eval(x);
}

SupResult conv_sup_norm(const LogConcaveDensity& f, const LogConcaveDensity& g) {
  return sup_of_evaluator(ConvolutionClosure(f, g).evaluator());
}

FitResult fit_density(const ConvolutionClosure& cl, double rel_tol) {
  if (!(rel_tol > 0.0)) throw InvalidParameter("fit tolerance must be positive");
  constexpr std::size_t kKnotCap = 100000;
  constexpr double kTailQuantile = 5e-15;

  // Union bound: P(X+Y outside [qX(e)+qY(e), qX(1-e)+qY(1-e)]) <= 2e. This
  // also steps inside a bounded hull, where the closure vanishes and the
  // potential is -inf.
  const double a_fit = cl.left().quantile(kTailQuantile) +
                       cl.right().quantile(kTailQuantile);
  const double b_fit = cl.left().quantile(1.0 - kTailQuantile) +
                       cl.right().quantile(1.0 - kTailQuantile);

  auto potential = [&cl](double x) { return std::log(cl.eval(x)); };

  std::vector<double> xs;
  xs.push_back(a_fit);
  for (double s : cl.knot_sums())
    if (s > a_fit && s < b_fit) xs.push_back(s);
  xs.push_back(b_fit);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<double> vs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) vs[i] = potential(xs[i]);

  // Bisect the interval whose chord misses the potential the most at its
  // midpoint; for a concave potential the midpoint error is within a factor
  // two of the worst error on the interval.
  const double target = 0.5 * rel_tol;
  while (true) {
    double worst = 0.0;
    std::size_t worst_i = 0;
    double worst_mid = 0.0, worst_val = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double mid = 0.5 * (xs[i] + xs[i + 1]);
      if (!(mid > xs[i] && mid < xs[i + 1])) continue;
      const double pv = potential(mid);
      const double chord = 0.5 * (vs[i] + vs[i + 1]);
      const double err = std::abs(pv - chord);
      if (err > worst) {
        worst = err;
        worst_i = i;
        worst_mid = mid;
        worst_val = pv;
      }
    }
    if (worst <= target) break;
    if (xs.size() >= kKnotCap)
      throw FitBudgetExceeded("fit knot cap reached before tolerance");
    xs.insert(xs.begin() + static_cast<std::ptrdiff_t>(worst_i) + 1, worst_mid);
    vs.insert(vs.begin() + static_cast<std::ptrdiff_t>(worst_i) + 1, worst_val);
  }

  double achieved = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double mid = 0.5 * (xs[i] + xs[i + 1]);
    if (!(mid > xs[i] && mid < xs[i + 1])) continue;
    achieved = std::max(achieved,
                        std::abs(potential(mid) - 0.5 * (vs[i] + vs[i + 1])));
  }
  achieved *= 2.0;

  // Floating noise in the sampled potential can leave secant slopes out of
  // order by ~1e-12; project them back onto the non-increasing cone before
  // validation (weighted pool-adjacent-violators).
  std::vector<double> slopes(xs.size() - 1), weights(xs.size() - 1);
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    weights[i] = xs[i + 1] - xs[i];
    slopes[i] = (vs[i + 1] - vs[i]) / weights[i];
    if (i > 0 && slopes[i] > slopes[i - 1]) monotone = false;
  }
  if (!monotone) {
    std::vector<double> pooled, pw;
    std::vector<std::size_t> counts;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
      pooled.push_back(slopes[i]);
      pw.push_back(weights[i]);
      counts.push_back(1);
      while (pooled.size() > 1 &&
             pooled[pooled.size() - 1] > pooled[pooled.size() - 2]) {
        const double w = pw[pw.size() - 1] + pw[pw.size() - 2];
        const double s = (pooled[pooled.size() - 1] * pw[pw.size() - 1] +
                          pooled[pooled.size() - 2] * pw[pw.size() - 2]) /
                         w;
        pooled.pop_back();
        pw.pop_back();
        counts[counts.size() - 2] += counts.back();
        counts.pop_back();
        pooled.back() = s;
        pw.back() = w;
      }
    }
    std::size_t k = 0;
    for (std::size_t blk = 0; blk < pooled.size(); ++blk)
      for (std::size_t r = 0; r < counts[blk]; ++r) slopes[k++] = pooled[blk];
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      vs[i + 1] = vs[i] + slopes[i] * weights[i];
  }

  std::optional<double> left, right;
  if (cl.lo() == -kInf) {
    double l = kInf;
    if (cl.left().left_tail_slope()) l = std::min(l, *cl.left().left_tail_slope());
    if (cl.right().left_tail_slope())
      l = std::min(l, *cl.right().left_tail_slope());
    left = l;
  }
  if (cl.hi() == kInf) {
    double r = -kInf;
    if (cl.left().right_tail_slope())
      r = std::max(r, *cl.left().right_tail_slope());
    if (cl.right().right_tail_slope())
      r = std::max(r, *cl.right().right_tail_slope());
    right = r;
  }

  FitResult out{build_density(std::move(xs), std::move(vs), left, right),
                achieved, 0};
  out.knot_count = static_cast<int>(out.density.knots().size());
  return out;
}

SupBoundPair rearranged_sup_bound(const LogConcaveDensity& f,
                                  const LogConcaveDensity& g) {
  SupResult lhs = conv_sup_norm(f, g);
  SupResult rhs = conv_sup_norm(decreasing_rearrangement(f),
                                decreasing_rearrangement(g));
  return {lhs.value, rhs.value, lhs.error_estimate + rhs.error_estimate};
}

SymmetrizationCheck symmetrization_identity_check(const LogConcaveDensity& d) {
  const double h2 = renyi(d, RenyiOrder::finite(2.0));
  SupResult s = conv_sup_norm(d, reflect(d));
  const double hinf = -std::log(s.value);
  return {h2, hinf, hinf - h2, s.error_estimate / s.value};
}

}  // namespace lcx
