#include "lcx/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lcx/quad.hpp"

namespace lcx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PieceValues {
  double u0, u1;  // log f at the piece ends (-inf on an infinite end)
};

PieceValues piece_values(const LogConcaveDensity::Piece& p) {
  PieceValues v;
  v.u0 = p.x0 == -kInf ? -kInf : p.anchor_log + p.slope * (p.x0 - p.anchor_x);
  v.u1 = p.x1 == kInf ? -kInf : p.anchor_log + p.slope * (p.x1 - p.anchor_x);
  return v;
}

// Sub-interval of one piece where log f exceeds (or meets, when closed)
// log t. Pieces are monotone, so the result is a single interval; plateaus
// are where the strict and closed versions differ.
struct SubInterval {
  double lo = 0.0, hi = 0.0;
  bool empty = true;
};

SubInterval above_within(const LogConcaveDensity::Piece& p, double logt,
                         bool closed) {
  PieceValues v = piece_values(p);
  SubInterval out;
  if (v.u0 == v.u1) {  // plateau (both ends finite by construction)
    const bool above = closed ? (v.u0 >= logt) : (v.u0 > logt);
    if (above) out = {p.x0, p.x1, false};
    return out;
  }
  const bool ascending = v.u1 > v.u0;
  const double top = ascending ? v.u1 : v.u0;
  const double bot = ascending ? v.u0 : v.u1;
  if (logt >= top) return out;
  double cross;
  if (logt < bot && bot > -kInf) {
    cross = ascending ? p.x0 : p.x1;  // whole piece is above
  } else {
    cross = p.anchor_x + (logt - p.anchor_log) / p.slope;
    if (p.x0 > -kInf) cross = std::max(cross, p.x0);
    if (p.x1 < kInf) cross = std::min(cross, p.x1);
  }
  if (ascending)
    out = {cross, p.x1, false};
  else
    out = {p.x0, cross, false};
  out.empty = !(out.hi > out.lo);
  return out;
}

double measure_above_log(const LogConcaveDensity& d, double logt, bool closed) {
  double m = 0.0;
  for (const auto& p : d.pieces()) {
    SubInterval s = above_within(p, logt, closed);
    if (!s.empty) m += s.hi - s.lo;
  }
  return m;
}

}  // namespace

double level_measure(const LogConcaveDensity& d, double t) {
  if (!(t > 0.0)) throw InvalidParameter("level_measure needs t > 0");
  return measure_above_log(d, std::log(t), false);
}

double closed_level_measure(const LogConcaveDensity& d, double t) {
  if (!(t > 0.0)) throw InvalidParameter("closed_level_measure needs t > 0");
  return measure_above_log(d, std::log(t), true);
}

double excess_mass(const LogConcaveDensity& d, double t) {
  if (!(t >= 0.0)) throw InvalidParameter("excess_mass needs t >= 0");
  if (t == 0.0) return d.integrate(d.support_lo(), d.support_hi());
  const double logt = std::log(t);
  double total = 0.0;
  for (const auto& p : d.pieces()) {
    SubInterval s = above_within(p, logt, false);
    if (s.empty) continue;
    // With t > 0 the super-level set is bounded, so s is finite.
    double mass;
    const double h = s.hi - s.lo;
    if (std::abs(p.slope) < 1e-12) {
      mass = std::exp(p.anchor_log) * h;
    } else {
      const double at_lo = p.anchor_log + p.slope * (s.lo - p.anchor_x);
      mass = std::exp(at_lo) * std::expm1(p.slope * h) / p.slope;
    }
    total += mass - t * h;
  }
  return std::max(total, 0.0);
}

LevelProfile level_profile(const LogConcaveDensity& d) {
  LevelProfile prof;
  prof.max_value = d.sup_norm().value;
  prof.support_measure = d.bounded_support()
                             ? d.support_hi() - d.support_lo()
                             : kInf;

  std::vector<double> vals;
  for (std::size_t i = 0; i < d.knots().size(); ++i)
    vals.push_back(d.knot_log_value(i));
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

  // Two samples inside each value interval pin down alpha and beta of the
  // log-affine segment exactly.
  auto add_segment = [&prof, &d](double log_hi, double log_lo) {
    const double l1 = log_hi + (log_lo - log_hi) / 3.0;
    const double l2 = log_hi + 2.0 * (log_lo - log_hi) / 3.0;
    const double m1 = measure_above_log(d, l1, false);
    const double m2 = measure_above_log(d, l2, false);
    double beta = (l2 != l1) ? (m2 - m1) / (l1 - l2) : 0.0;
    if (!(beta > 0.0)) beta = 0.0;
    const double alpha = m1 + beta * l1;
    prof.segments.push_back({std::exp(log_hi), std::exp(log_lo), alpha, beta});
  };

  for (std::size_t k = 0; k + 1 < vals.size(); ++k)
    add_segment(vals[k], vals[k + 1]);

  // Bottom segment from the smallest knot value down toward zero.
  const double vmin = vals.back();
  if (d.bounded_support()) {
    prof.segments.push_back(
        {std::exp(vmin), 0.0, prof.support_measure, 0.0});
  } else {
    double beta = 0.0;
    if (d.left_tail_slope()) beta += 1.0 / *d.left_tail_slope();
    if (d.right_tail_slope()) beta += 1.0 / -*d.right_tail_slope();
    const double alpha = measure_above_log(d, vmin, true) + beta * vmin;
    prof.segments.push_back({std::exp(vmin), 0.0, alpha, beta});
  }
  return prof;
}

LogConcaveDensity decreasing_rearrangement(const LogConcaveDensity& d) {
  std::vector<double> vals;
  for (std::size_t i = 0; i < d.knots().size(); ++i)
    vals.push_back(d.knot_log_value(i));
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

  std::vector<double> xs{0.0};
  std::vector<double> vs{vals.front()};
  double last = 0.0;
  auto append = [&](double x, double v) {
    if (x > last + 1e-13 * std::max(1.0, std::abs(last))) {
      xs.push_back(x);
      vs.push_back(v);
      last = x;
    }
  };

  // Top plateau, if the maximum is attained on an interval.
  append(measure_above_log(d, vals.front(), true), vals.front());
  for (std::size_t k = 1; k < vals.size(); ++k) {
    append(measure_above_log(d, vals[k], false), vals[k]);
    append(measure_above_log(d, vals[k], true), vals[k]);
  }

  std::optional<double> tail;
  if (!d.bounded_support()) {
    double beta = 0.0;
    if (d.left_tail_slope()) beta += 1.0 / *d.left_tail_slope();
    if (d.right_tail_slope()) beta += 1.0 / -*d.right_tail_slope();
    tail = -1.0 / beta;
  }
  if (xs.size() == 1 && !tail)
    throw UnboundedDensity("degenerate level profile");  // cannot occur
  return build_density(std::move(xs), std::move(vs), {}, tail);
}

HardyLittlewoodResult hardy_littlewood(const LogConcaveDensity& f,
                                       const LogConcaveDensity& g, double a,
                                       double b) {
  if (!(b > a)) throw InvalidParameter("hardy_littlewood needs b > a");
  for (const LogConcaveDensity* d : {&f, &g}) {
    const double outside = d->integrate(d->support_lo(), a) +
                           d->integrate(b, d->support_hi());
    if (outside > 1e-12)
      throw SupportExceedsInterval("mass outside [a,b] = " +
                                   std::to_string(outside));
  }

  std::vector<double> cuts = f.knots();
  cuts.insert(cuts.end(), g.knots().begin(), g.knots().end());
  auto product = [&f, &g](double x) { return f.evaluate(x) * g.evaluate(x); };
  QuadResult lhs = integrate_adaptive(product, a, b, 1e-12, cuts);

  const LogConcaveDensity fd = decreasing_rearrangement(f);
  const LogConcaveDensity gd = decreasing_rearrangement(g);
  const double len = b - a;
  std::vector<double> cuts2 = fd.knots();
  for (double x : gd.knots()) cuts2.push_back(len - x);
  auto mirrored = [&fd, &gd, len](double x) {
    return fd.evaluate(x) * gd.evaluate(len - x);
  };
  QuadResult rhs = integrate_adaptive(mirrored, 0.0, len, 1e-12, cuts2);

  return {lhs.value, rhs.value, lhs.error_estimate + rhs.error_estimate};
}

}  // namespace lcx
