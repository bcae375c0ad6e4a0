#include "lcx/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lcx/entropy.hpp"
#include "lcx/majorize.hpp"
#include "lcx/rng.hpp"

namespace lcx {

namespace {

constexpr double kTruncationMass = 1e-15;
constexpr double kLogConcavitySlack = 1e-15;

}  // namespace

LogConcavePMF::LogConcavePMF(int offset, std::vector<double> probs,
                             Family family, double lambda, double dropped_tail)
    : offset_(offset),
      probs_(std::move(probs)),
      family_(family),
      lambda_(lambda),
      dropped_tail_(dropped_tail) {
  if (probs_.empty()) throw EmptySupport("pmf needs at least one atom");
  for (double p : probs_)
    if (!(p > 0.0) || !std::isfinite(p))
      throw InvalidParameter("pmf atoms must be positive (contiguous support)");
  for (std::size_t k = 0; k + 2 < probs_.size(); ++k)
    if (probs_[k + 1] * probs_[k + 1] < probs_[k] * probs_[k + 2] -
                                            kLogConcavitySlack)
      throw NonConcavePotential("pmf is not log-concave at k = " +
                                std::to_string(k));
  const double sum = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(sum + dropped_tail_ - 1.0) > 1e-12)
    throw MassMismatch("pmf mass is " + std::to_string(sum + dropped_tail_));
}

double LogConcavePMF::max_prob() const {
  return *std::max_element(probs_.begin(), probs_.end());
}

int LogConcavePMF::argmax() const {
  const auto it = std::max_element(probs_.begin(), probs_.end());
  return offset_ + static_cast<int>(it - probs_.begin());
}

bool LogConcavePMF::is_non_increasing(double tol) const {
  for (std::size_t k = 0; k + 1 < probs_.size(); ++k)
    if (probs_[k + 1] > probs_[k] * (1.0 + tol)) return false;
  return true;
}

LogConcavePMF geometric(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw InvalidParameter("geometric needs lambda in (0, 1)");
  std::vector<double> probs;
  double term = 1.0 - lambda;
  double tail = 1.0;  // mass at indices >= current k
  while (tail - term >= kTruncationMass) {
    probs.push_back(term);
    tail -= term;
    term *= lambda;
  }
  probs.push_back(term);
  tail -= term;
  return LogConcavePMF(0, std::move(probs), LogConcavePMF::Family::Geometric,
                       lambda, std::max(tail, 0.0));
}

LogConcavePMF geometric_self_conv(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw InvalidParameter("geometric needs lambda in (0, 1)");
  // (f*f)(k) = (k+1)(1-lambda)^2 lambda^k.
  const double c = (1.0 - lambda) * (1.0 - lambda);
  std::vector<double> probs;
  double cum = 0.0;
  double pow_l = 1.0;
  for (std::size_t k = 0;; ++k) {
    const double term = static_cast<double>(k + 1) * c * pow_l;
    probs.push_back(term);
    cum += term;
    pow_l *= lambda;
    if (1.0 - cum < kTruncationMass && k > 0) break;
    if (k > 50000000) throw BudgetExceeded("self-convolution truncation stall");
  }
  return LogConcavePMF(0, std::move(probs), LogConcavePMF::Family::General, 0.0,
                       std::max(1.0 - cum, 0.0));
}

LogConcavePMF discrete_convolve(const LogConcavePMF& f, const LogConcavePMF& g) {
  // Identical geometric operands take the closed-form path.
  if (f.family() == LogConcavePMF::Family::Geometric &&
      g.family() == LogConcavePMF::Family::Geometric &&
      f.lambda() == g.lambda() && f.offset() == g.offset()) {
    LogConcavePMF conv = geometric_self_conv(f.lambda());
    if (f.offset() == 0) return conv;
    return LogConcavePMF(2 * f.offset(), conv.probs(), conv.family(), 0.0,
                         conv.dropped_tail_mass());
  }
  const std::vector<double>& a = f.probs();
  const std::vector<double>& b = g.probs();
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  const double dropped = f.dropped_tail_mass() + g.dropped_tail_mass();
  return LogConcavePMF(f.offset() + g.offset(), std::move(out),
                       LogConcavePMF::Family::General, 0.0, dropped);
}

LogConcavePMF reflect(const LogConcavePMF& f) {
  std::vector<double> probs(f.probs().rbegin(), f.probs().rend());
  const int hi = f.offset() + static_cast<int>(f.probs().size()) - 1;
  return LogConcavePMF(-hi, std::move(probs), LogConcavePMF::Family::General,
                       0.0, f.dropped_tail_mass());
}

LogConcavePMF symmetrize(const LogConcavePMF& f) {
  if (f.family() == LogConcavePMF::Family::Geometric) {
    // (f * reflect f)(k) = (1-lambda) lambda^{|k|} / (1+lambda).
    const double lambda = f.lambda();
    const double c = (1.0 - lambda) / (1.0 + lambda);
    std::vector<double> half{c};
    double term = c * lambda;
    double cum = c;
    while (1.0 - cum - 2.0 * term / (1.0 - lambda) * (1.0 - lambda) >
               kTruncationMass * 0.5 &&
           term > 0.0) {
      half.push_back(term);
      cum += 2.0 * term;
      term *= lambda;
      if (1.0 - cum < kTruncationMass) break;
    }
    std::vector<double> probs(half.rbegin(), half.rend());
    probs.insert(probs.end(), half.begin() + 1, half.end());
    const int m = static_cast<int>(half.size()) - 1;
    return LogConcavePMF(-m, std::move(probs), LogConcavePMF::Family::General,
                         0.0, std::max(1.0 - cum, 0.0));
  }
  return discrete_convolve(f, reflect(f));
}

std::vector<double> discrete_sequence_rearrange(const LogConcavePMF& f) {
  std::vector<double> sorted = f.probs();
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  return sorted;
}

DiscreteH2Report verify_discrete_h2(const LogConcavePMF& f) {
  DiscreteH2Report report;
  const LogConcavePMF sum = discrete_convolve(f, f);
  report.h2 = renyi_discrete(f, RenyiOrder::finite(2.0));
  report.h2_sum = renyi_discrete(sum, RenyiOrder::finite(2.0));
  report.margin = report.h2 + std::log(2.0) - report.h2_sum;
  report.error_budget =
      2.0 * (f.dropped_tail_mass() + sum.dropped_tail_mass());

  // Proof construction: the symmetrized pmf restricted to Z+, against the
  // matched log-affine sequence g(k) = s0 ((1-s0)/(1+s0))^k.
  const LogConcavePMF sym = symmetrize(f);
  const double s0 = sym.at(0);
  report.sym_peak = s0;
  std::vector<double> sym_half;
  for (int k = 0;; ++k) {
    const double v = sym.at(k);
    if (v == 0.0) break;
    sym_half.push_back(v);
  }
  const double ratio = (1.0 - s0) / (1.0 + s0);
  std::vector<double> matched;
  double term = s0;
  double matched_sum = 0.0;
  const double half_sum =
      std::accumulate(sym_half.begin(), sym_half.end(), 0.0);
  while (matched_sum + term < half_sum && term > 1e-18) {
    matched.push_back(term);
    matched_sum += term;
    term *= ratio;
  }
  if (half_sum > matched_sum) matched.push_back(half_sum - matched_sum);

  report.majorization_holds = sequence_majorizes(sym_half, matched);
  for (double v : sym_half) report.karamata_lhs += v * v;
  for (double v : matched) report.karamata_rhs += v * v;
  return report;
}

DiscreteHInfReport verify_discrete_hinf(const LogConcavePMF& f) {
  if (!f.is_non_increasing())
    throw NotMonotone("theorem hypothesis needs a monotone pmf");
  DiscreteHInfReport report;
  const LogConcavePMF sum = discrete_convolve(f, f);
  report.ratio = sum.max_prob() / f.max_prob();
  report.margin = report.ratio - std::exp(-1.0);
  report.error_budget =
      2.0 * (f.dropped_tail_mass() + sum.dropped_tail_mass());

  // Witness: (f*f)(k) >= (k+1) f(k) ||f||_inf, indexed from the support
  // start, so ratio >= sup_k (k+1) f(k).
  const std::vector<double>& probs = f.probs();
  report.sup_phi = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double phi = static_cast<double>(k + 1) * probs[k];
    if (phi > report.sup_phi) {
      report.sup_phi = phi;
      report.k_star = static_cast<int>(k);
    }
  }
  report.case_label = report.k_star == 0 ? "k*=0" : "k*>=1";
  return report;
}

double verify_symmetric_half(const LogConcavePMF& f) {
  const std::vector<double>& p = f.probs();
  for (std::size_t i = 0, j = p.size() - 1; i < j; ++i, --j)
    if (std::abs(p[i] - p[j]) > 1e-13 * std::max(p[i], p[j]))
      throw NotSymmetric("pmf is not symmetric on its truncated support");
  const LogConcavePMF sum = discrete_convolve(f, f);
  const double h_inf = renyi_discrete(f, RenyiOrder::infinity());
  const double h_inf_sum = renyi_discrete(sum, RenyiOrder::infinity());
  return h_inf + 0.5 - h_inf_sum;
}

LogConcavePMF random_logconcave_pmf(std::uint64_t seed, int max_len,
                                    bool monotone) {
  if (max_len < 1) throw InvalidParameter("max_len must be positive");
  CounterRng rng(seed);
  const int len = 1 + static_cast<int>(rng.next_double() * max_len);
  std::vector<double> potential(static_cast<std::size_t>(len), 0.0);
  // Convex potential <=> non-decreasing increments; drawing increments and
  // sorting ascending enforces it. Monotone pmfs need all increments >= 0.
  std::vector<double> inc(static_cast<std::size_t>(len > 0 ? len - 1 : 0));
  for (double& d : inc)
    d = monotone ? 2.5 * rng.next_double() : 4.0 * (rng.next_double() - 0.5);
  std::sort(inc.begin(), inc.end());
  for (std::size_t k = 0; k + 1 < potential.size(); ++k)
    potential[k + 1] = potential[k] + inc[k];

  std::vector<double> probs(potential.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    probs[k] = std::exp(-potential[k]);
    sum += probs[k];
  }
  for (double& p : probs) p /= sum;

  const int offset =
      monotone ? 0 : static_cast<int>(rng.next_double() * 21.0) - 10;
  return LogConcavePMF(offset, std::move(probs));
}

}  // namespace lcx
