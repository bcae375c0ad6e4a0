#include "lcx/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lcx/convolve.hpp"

namespace lcx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LogConcaveDensity canonical_monotone(const LogConcaveDensity& d,
                                     double* shift_out) {
  if (!d.is_non_increasing())
    throw NotMonotone("density increases on its support");
  const double x0 = d.support_lo();
  if (shift_out) *shift_out = -x0;
  return x0 == 0.0 ? d : shift(d, -x0);
}

}  // namespace

TransportMap::TransportMap(const LogConcaveDensity& source)
    : source_(canonical_monotone(source, &shift_)),
      peak_(source_.sup_norm().value) {}

double TransportMap::phi(double y) const {
  if (y <= 0.0) return 0.0;
  // 1 - F(y) as a direct right-tail integral; no cancellation.
  const double tail = source_.integrate(std::min(y, source_.support_hi()),
                                        source_.support_hi());
  if (!(tail > 0.0)) return kInf;
  return -std::log(tail) / peak_;
}

double TransportMap::phi_inverse(double t) const {
  if (t <= 0.0) return 0.0;
  if (t == kInf) return source_.support_hi();
  return source_.quantile(-std::expm1(-peak_ * t));
}

double TransportMap::phi_prime(double y) const {
  const double tail = source_.integrate(std::min(y, source_.support_hi()),
                                        source_.support_hi());
  if (!(tail > 0.0)) return kInf;
  return source_.evaluate(y) / (peak_ * tail);
}

TransportMap transport_map(const LogConcaveDensity& d_Y) {
  return TransportMap(d_Y);
}

double expansion_check(const TransportMap& m,
                       const std::vector<double>& y_grid) {
  double worst = kInf;
  for (double y : y_grid) worst = std::min(worst, m.phi_prime(y));
  return worst;
}

double pointwise_domination(const LogConcaveDensity& d_X,
                            const LogConcaveDensity& d_Y,
                            const std::vector<double>& y_grid) {
  const LogConcaveDensity x = canonical_monotone(d_X, nullptr);
  const LogConcaveDensity y = canonical_monotone(d_Y, nullptr);
  const TransportMap map(y);
  const ConvolutionClosure xw(x, exponential_match(y));
  const ConvolutionClosure xy(x, y);
  double worst = kInf;
  for (double t : y_grid) {
    const double lhs = xw.eval(t);
    const double rhs = xy.eval(map.phi_inverse(t));
    worst = std::min(worst, rhs - lhs);
  }
  return worst;
}

ChainReport::Entry* ChainReport::find(RenyiOrder::Kind kind) {
  for (auto& e : entries)
    if (e.order.kind() == kind) return &e;
  return nullptr;
}

ChainReport exponentialization_chain(const LogConcaveDensity& d_X,
                                     const LogConcaveDensity& d_Y,
                                     const std::vector<RenyiOrder>& p_grid) {
  const LogConcaveDensity x = canonical_monotone(d_X, nullptr);
  const LogConcaveDensity y = canonical_monotone(d_Y, nullptr);
  const LogConcaveDensity w = exponential_match(y);
  const LogConcaveDensity z = exponential_match(x);

  const ConvolutionClosure xy(x, y), xw(x, w), zw(z, w);
  const DensityEvaluator exy = xy.evaluator(), exw = xw.evaluator(),
                         ezw = zw.evaluator();

  ChainReport report;
  report.all_ordered = true;
  for (const RenyiOrder& p : p_grid) {
    const EntropyEstimate a = renyi(exy, p);
    const EntropyEstimate b = renyi(exw, p);
    const EntropyEstimate c = renyi(ezw, p);
    ChainReport::Entry e{p, a.value, b.value, c.value,
                         a.error_estimate + b.error_estimate + c.error_estimate,
                         false};
    e.ordered = e.h_xy <= e.h_xw + e.eps && e.h_xw <= e.h_zw + e.eps;
    report.all_ordered = report.all_ordered && e.ordered;
    report.entries.push_back(e);
  }

  // Majorization steps on fitted densities; the fit bounds widen the slack.
  const FitResult fxy = fit_density(xy);
  const FitResult fxw = fit_density(xw);
  const FitResult fzw = fit_density(zw);
  report.fit_budget =
      fxy.achieved_bound + fxw.achieved_bound + fzw.achieved_bound;
  report.xy_over_xw =
      majorizes(fxy.density, fxw.density, 400,
                2.0 * (fxy.achieved_bound + fxw.achieved_bound) + 1e-10);
  report.xw_over_zw =
      majorizes(fxw.density, fzw.density, 400,
                2.0 * (fxw.achieved_bound + fzw.achieved_bound) + 1e-10);
  return report;
}

}  // namespace lcx
