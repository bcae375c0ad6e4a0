#include "lcx/majorize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lcx/rearrange.hpp"

namespace lcx {

MajorizationVerdict majorizes(const LogConcaveDensity& g,
                              const LogConcaveDensity& f, int t_count,
                              double slack) {
  const double mass_f = f.integrate(f.support_lo(), f.support_hi());
  const double mass_g = g.integrate(g.support_lo(), g.support_hi());
  if (std::abs(mass_f - mass_g) > 1e-9)
    throw MassMismatch("masses differ by " + std::to_string(mass_f - mass_g));

  const double top = std::max(f.sup_norm().value, g.sup_norm().value);
  std::vector<double> levels;
  levels.reserve(static_cast<std::size_t>(t_count) + f.knots().size() +
                 g.knots().size());
  // Log-spaced levels spanning 12 decades below the larger sup.
  for (int j = 1; j <= t_count; ++j)
    levels.push_back(top * std::pow(10.0, -12.0 * j / t_count));
  for (const LogConcaveDensity* d : {&f, &g})
    for (std::size_t i = 0; i < d->knots().size(); ++i) {
      const double v = std::exp(d->knot_log_value(i));
      if (v > 0.0 && v < top) levels.push_back(v);
    }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  MajorizationVerdict verdict;
  verdict.slack = slack;
  verdict.levels_checked = static_cast<int>(levels.size());
  verdict.worst_margin = std::numeric_limits<double>::infinity();
  for (double t : levels) {
    const double margin = excess_mass(g, t) - excess_mass(f, t);
    if (margin < verdict.worst_margin) {
      verdict.worst_margin = margin;
      verdict.worst_t = t;
    }
  }
  verdict.holds = verdict.worst_margin >= -slack;
  return verdict;
}

std::vector<double> window_mass_curve(const LogConcaveDensity& d,
                                      const std::vector<double>& widths) {
  std::vector<double> out;
  out.reserve(widths.size());
  const double mode = d.sup_norm().argmax;
  for (double w : widths) {
    if (!(w > 0.0)) {
      out.push_back(0.0);
      continue;
    }
    // The optimal window straddles the mode; G(b) = F(b+w) - F(b) is
    // unimodal in b for log-concave densities.
    double a = mode - w, b = mode;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    auto G = [&d, w](double s) { return d.integrate(s, s + w); };
    double g1 = G(x1), g2 = G(x2);
    for (int it = 0; it < 120 && (b - a) > 1e-12 * std::max(1.0, w); ++it) {
      if (g1 < g2) {
        a = x1;
        x1 = x2;
        g1 = g2;
        x2 = a + gr * (b - a);
        g2 = G(x2);
      } else {
        b = x2;
        x2 = x1;
        g2 = g1;
        x1 = b - gr * (b - a);
        g1 = G(x1);
      }
    }
    out.push_back(std::max(g1, g2));
  }
  return out;
}

ConvexOrderReport convex_order_consequence(const LogConcaveDensity& g,
                                           const LogConcaveDensity& f,
                                           const std::vector<RenyiOrder>& p_grid,
                                           double tol) {
  ConvexOrderReport report;
  report.precondition = majorizes(g, f);
  if (!report.precondition.holds)
    throw PreconditionUnverified("majorization check failed at t = " +
                                 std::to_string(report.precondition.worst_t));
  report.orders = p_grid;
  report.all_ordered = true;
  for (const RenyiOrder& p : p_grid) {
    const double gap = renyi(g, p) - renyi(f, p);
    report.gaps.push_back(gap);
    if (!(gap <= tol)) report.all_ordered = false;
  }
  return report;
}

bool sequence_majorizes(std::vector<double> a, std::vector<double> b) {
  const double sum_a = std::accumulate(a.begin(), a.end(), 0.0);
  const double sum_b = std::accumulate(b.begin(), b.end(), 0.0);
  if (std::abs(sum_a - sum_b) > 1e-12)
    throw SumMismatch("sequence sums differ by " +
                      std::to_string(sum_a - sum_b));
  std::sort(a.begin(), a.end(), std::greater<double>());
  std::sort(b.begin(), b.end(), std::greater<double>());
  double pa = 0.0, pb = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    pa += i < a.size() ? a[i] : 0.0;
    pb += i < b.size() ? b[i] : 0.0;
    if (pa < pb - 1e-12) return false;
  }
  return true;
}

std::vector<ConvexSample> standard_convex_samples() {
  std::vector<ConvexSample> out;
  out.push_back({"square", [](double x) { return x * x; }});
  out.push_back({"expm1", [](double x) { return std::expm1(x); }});
  out.push_back({"hinge_0.1", [](double x) { return std::max(x - 0.1, 0.0); }});
  out.push_back({"hinge_0.01", [](double x) { return std::max(x - 0.01, 0.0); }});
  out.push_back({"cube", [](double x) { return x * x * x; }});
  return out;
}

KaramataReport karamata(const std::vector<double>& a,
                        const std::vector<double>& b,
                        const std::vector<ConvexSample>& phi_samples) {
  if (!sequence_majorizes(a, b))
    throw PreconditionUnverified("sequence a does not majorize b");
  KaramataReport report;
  report.all_hold = true;
  for (const auto& sample : phi_samples) {
    double lhs = 0.0, rhs = 0.0;
    for (double x : a) lhs += sample.phi(x);
    for (double x : b) rhs += sample.phi(x);
    report.names.push_back(sample.name);
    report.lhs.push_back(lhs);
    report.rhs.push_back(rhs);
    if (!(lhs >= rhs - 1e-12)) report.all_hold = false;
  }
  return report;
}

}  // namespace lcx
