#include "lcx/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lcx/discrete.hpp"
#include "lcx/quad.hpp"

namespace lcx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFlatSlope = 1e-12;

// \int_s^t f(x)^p dx for one log-linear piece of f.
double piece_power_integral(const LogConcaveDensity::Piece& pc, double p) {
  const double a = p * pc.slope;
  if (pc.x0 == -kInf) {
    const double u1 = pc.anchor_log + pc.slope * (pc.x1 - pc.anchor_x);
    return std::exp(p * u1) / a;  // a > 0 on a left tail
  }
  if (pc.x1 == kInf) {
    const double u0 = pc.anchor_log + pc.slope * (pc.x0 - pc.anchor_x);
    return std::exp(p * u0) / -a;
  }
  const double h = pc.x1 - pc.x0;
  const double u0 = pc.anchor_log + pc.slope * (pc.x0 - pc.anchor_x);
  if (std::abs(a) < kFlatSlope) return std::exp(p * u0) * h;
  return std::exp(p * u0) * std::expm1(a * h) / a;
}

// \int_s^t f log f dx for one piece, via \int u e^u du = (u - 1) e^u.
double piece_flogf_integral(const LogConcaveDensity::Piece& pc) {
  auto prim = [](double u) { return u == -kInf ? 0.0 : (u - 1.0) * std::exp(u); };
  const double a = pc.slope;
  if (pc.x0 == -kInf) {
    const double u1 = pc.anchor_log + a * (pc.x1 - pc.anchor_x);
    return (prim(u1) - 0.0) / a;
  }
  if (pc.x1 == kInf) {
    const double u0 = pc.anchor_log + a * (pc.x0 - pc.anchor_x);
    return (0.0 - prim(u0)) / a;
  }
  const double u0 = pc.anchor_log + a * (pc.x0 - pc.anchor_x);
  const double u1 = pc.anchor_log + a * (pc.x1 - pc.anchor_x);
  if (std::abs(a) < kFlatSlope) return u0 * std::exp(u0) * (pc.x1 - pc.x0);
  return (prim(u1) - prim(u0)) / a;
}

}  // namespace

RenyiOrder RenyiOrder::finite(double p) {
  if (!(p > 0.0)) throw InvalidParameter("Renyi order must be positive");
  if (p == 1.0)
    throw InvalidParameter("order 1 is the Shannon case; use RenyiOrder::shannon()");
  return RenyiOrder(Kind::Finite, p);
}

RenyiOrder RenyiOrder::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  if (text == "shannon" || text == "1") return shannon();
  if (text == "0") return zero();
  std::size_t pos = 0;
  double p = std::stod(text, &pos);
  if (pos != text.size()) throw InvalidParameter("cannot parse order: " + text);
  if (p == 0.0) return zero();
  if (p == 1.0) return shannon();
  return finite(p);
}

std::string RenyiOrder::to_string() const {
  switch (kind_) {
    case Kind::Zero: return "0";
    case Kind::Shannon: return "shannon";
    case Kind::Infinity: return "inf";
    case Kind::Finite: break;
  }
  return std::to_string(p_);
}

double renyi(const LogConcaveDensity& d, RenyiOrder order) {
  switch (order.kind()) {
    case RenyiOrder::Kind::Zero:
      return d.bounded_support()
                 ? std::log(d.support_hi() - d.support_lo())
                 : kInf;
    case RenyiOrder::Kind::Infinity:
      return -std::log(d.sup_norm().value);
    case RenyiOrder::Kind::Shannon: {
      double flogf = 0.0;
      for (const auto& pc : d.pieces()) flogf += piece_flogf_integral(pc);
      return -flogf;
    }
    case RenyiOrder::Kind::Finite: {
      const double p = order.p();
      double ip = 0.0;
      for (const auto& pc : d.pieces()) ip += piece_power_integral(pc, p);
      if (!(ip > 0.0) || !std::isfinite(ip))
        throw DivergentIntegral("integral of f^p did not converge");
      return std::log(ip) / (1.0 - p);
    }
  }
  return 0.0;
}

namespace {

struct TruncatedDomain {
  double lo, hi;
  double remainder_bound;  // integral of the integrand outside [lo, hi]
};

// Pushes an infinite support end outward until the exponential-tail bound on
// the remaining integrand mass drops below `target`. The bound uses the
// secant of the potential, which dominates the true tail by concavity.
TruncatedDomain truncate_for(const DensityEvaluator& ev,
                             const std::function<double(double)>& tail_bound,
                             double target) {
  TruncatedDomain dom{ev.lo, ev.hi, 0.0};
  const double ref = ev.breakpoints.empty() ? ev.mode_hint
                                            : ev.breakpoints.back();
  if (dom.hi == kInf) {
    double b = std::max(ref, ev.mode_hint) + 1.0;
    double step = 1.0;
    for (int i = 0; i < 200; ++i) {
      const double fb = ev.pdf(b);
      const double fprev = ev.pdf(b - 0.5);
      if (fb > 0.0 && fprev > fb) {
        const double sec = (std::log(fb) - std::log(fprev)) / 0.5;
        if (sec < 0.0) {
          const double rem = tail_bound(std::log(fb)) / std::abs(sec);
          if (rem < target) {
            dom.hi = b;
            dom.remainder_bound += rem;
            break;
          }
        }
      }
      b += step;
      step *= 1.5;
    }
    if (dom.hi == kInf) dom.hi = b;  // give up; quadrature tol will report
  }
  if (dom.lo == -kInf) {
    const double ref_lo = ev.breakpoints.empty() ? ev.mode_hint
                                                 : ev.breakpoints.front();
    double a = std::min(ref_lo, ev.mode_hint) - 1.0;
    double step = 1.0;
    for (int i = 0; i < 200; ++i) {
      const double fa = ev.pdf(a);
      const double fnext = ev.pdf(a + 0.5);
      if (fa > 0.0 && fnext > fa) {
        const double sec = (std::log(fnext) - std::log(fa)) / 0.5;
        if (sec > 0.0) {
          const double rem = tail_bound(std::log(fa)) / sec;
          if (rem < target) {
            dom.lo = a;
            dom.remainder_bound += rem;
            break;
          }
        }
      }
      a -= step;
      step *= 1.5;
    }
    if (dom.lo == -kInf) dom.lo = a;
  }
  return dom;
}

}  // namespace

EntropyEstimate renyi(const DensityEvaluator& ev, RenyiOrder order,
                      double abs_tol) {
  switch (order.kind()) {
    case RenyiOrder::Kind::Zero: {
      if (ev.lo == -kInf || ev.hi == kInf) return {kInf, 0.0};
      return {std::log(ev.hi - ev.lo), 0.0};
    }
    case RenyiOrder::Kind::Infinity: {
      SupResult s = sup_of_evaluator(ev);
      return {-std::log(s.value), s.error_estimate / s.value};
    }
    case RenyiOrder::Kind::Shannon: {
      // Remainder of -f log f beyond a point with log f = L, tail slope s:
      // int e^{L+st}(|L| + |s| t) dt = e^L (|L| + 1) / |s|; the 1/|s| factor
      // is applied by truncate_for.
      auto bound = [](double L) { return std::exp(L) * (std::abs(L) + 1.0); };
      TruncatedDomain dom = truncate_for(ev, bound, 0.05 * abs_tol);
      auto integrand = [&ev](double x) {
        const double v = ev.pdf(x);
        return v > 0.0 ? -v * std::log(v) : 0.0;
      };
      QuadResult q = integrate_adaptive(integrand, dom.lo, dom.hi, abs_tol,
                                        ev.breakpoints);
      return {q.value, q.error_estimate + dom.remainder_bound};
    }
    case RenyiOrder::Kind::Finite: {
      const double p = order.p();
      auto bound = [p](double L) { return std::exp(p * L) / p; };
      TruncatedDomain dom = truncate_for(ev, bound, 0.05 * abs_tol);
      auto integrand = [&ev, p](double x) {
        const double v = ev.pdf(x);
        return v > 0.0 ? std::pow(v, p) : 0.0;
      };
      QuadResult q = integrate_adaptive(integrand, dom.lo, dom.hi, abs_tol,
                                        ev.breakpoints);
      const double ip = q.value;
      if (!(ip > 0.0)) throw DivergentIntegral("integral of f^p vanished");
      const double err = (q.error_estimate + dom.remainder_bound) /
                         (std::abs(1.0 - p) * ip);
      return {std::log(ip) / (1.0 - p), err};
    }
  }
  return {};
}

double renyi_discrete(const LogConcavePMF& f, RenyiOrder order) {
  const std::vector<double>& probs = f.probs();
  switch (order.kind()) {
    case RenyiOrder::Kind::Zero:
      return std::log(static_cast<double>(probs.size()));
    case RenyiOrder::Kind::Infinity:
      return -std::log(*std::max_element(probs.begin(), probs.end()));
    case RenyiOrder::Kind::Shannon: {
      double s = 0.0;
      for (double q : probs)
        if (q > 0.0) s -= q * std::log(q);
      return s;
    }
    case RenyiOrder::Kind::Finite: {
      const double p = order.p();
      double s = 0.0;
      for (double q : probs) s += std::pow(q, p);
      return std::log(s) / (1.0 - p);
    }
  }
  return 0.0;
}

SupResult sup_of_evaluator(const DensityEvaluator& ev) {
  std::vector<double> cand = ev.breakpoints;
  if (std::isfinite(ev.lo)) cand.push_back(ev.lo);
  if (std::isfinite(ev.hi)) cand.push_back(ev.hi);
  if (cand.empty()) cand.push_back(ev.mode_hint);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  std::size_t best = 0;
  std::vector<double> fc(cand.size());
  for (std::size_t i = 0; i < cand.size(); ++i) {
    fc[i] = ev.pdf(cand[i]);
    if (fc[i] > fc[best]) best = i;
  }

  double a, b;
  if (best > 0) {
    a = cand[best - 1];
  } else {
    a = cand[0];
    if (!std::isfinite(ev.lo) || a > ev.lo) {
      // Expand left until the value drops (unimodality).
      double step = 1.0;
      while (true) {
        double trial = a - step;
        if (std::isfinite(ev.lo)) trial = std::max(trial, ev.lo);
        if (ev.pdf(trial) <= fc[best] || trial == ev.lo) {
          a = trial;
          break;
        }
        a = trial;
        step *= 2.0;
      }
    }
  }
  if (best + 1 < cand.size()) {
    b = cand[best + 1];
  } else {
    b = cand.back();
    if (!std::isfinite(ev.hi) || b < ev.hi) {
      double step = 1.0;
      while (true) {
        double trial = b + step;
        if (std::isfinite(ev.hi)) trial = std::min(trial, ev.hi);
        if (ev.pdf(trial) <= fc[best] || trial == ev.hi) {
          b = trial;
          break;
        }
        b = trial;
        step *= 2.0;
      }
    }
  }

  // Golden-section on [a, b]; valid because the input is unimodal.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = ev.pdf(x1), f2 = ev.pdf(x2);
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  for (int it = 0; it < 200 && (b - a) > 1e-12 * scale; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = ev.pdf(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = ev.pdf(x1);
    }
  }

  SupResult out;
  out.argmax = f1 > f2 ? x1 : x2;
  out.value = std::max(f1, f2);
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (fc[i] > out.value) {
      out.value = fc[i];
      out.argmax = cand[i];
    }
  }
  out.error_estimate = std::abs(f1 - f2) + 4e-16 * out.value;
  return out;
}

}  // namespace lcx
