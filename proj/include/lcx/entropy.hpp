#ifndef LCX_ENTROPY_HPP
#define LCX_ENTROPY_HPP

#include <string>

#include "lcx/density.hpp"

namespace lcx {

class LogConcavePMF;  // discrete.hpp

// Order selector for the Renyi entropy h_p. The limit orders are explicit
// tags; Finite(p) rejects p <= 0 and p = 1, which route to Zero / Shannon.
class RenyiOrder {
public:
  enum class Kind { Zero, Finite, Shannon, Infinity };

  static RenyiOrder zero() { return RenyiOrder(Kind::Zero, 0.0); }
  static RenyiOrder shannon() { return RenyiOrder(Kind::Shannon, 1.0); }
  static RenyiOrder infinity() { return RenyiOrder(Kind::Infinity, 0.0); }
  static RenyiOrder finite(double p);

  // "0" -> Zero, "1"/"shannon" -> Shannon, "inf"/"infinity" -> Infinity,
  // anything else parses as Finite(p).
  static RenyiOrder parse(const std::string& text);

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  std::string to_string() const;

private:
  RenyiOrder(Kind k, double p) : kind_(k), p_(p) {}
  Kind kind_;
  double p_;
};

// Exact per-piece Renyi entropy (nats) of a piecewise log-linear density.
// h_0 of an unbounded support returns +inf.
double renyi(const LogConcaveDensity& d, RenyiOrder order);

struct EntropyEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
};

// Quadrature-backed entropy for evaluator densities (convolution closures).
// The returned estimate feeds the error budgets of the verification harness.
EntropyEstimate renyi(const DensityEvaluator& ev, RenyiOrder order,
                      double abs_tol = 1e-10);

// Discrete Renyi entropy H_p by direct summation (0 log 0 := 0).
double renyi_discrete(const LogConcavePMF& f, RenyiOrder order);

struct SupResult {
  double value = 0.0;
  double argmax = 0.0;
  double error_estimate = 0.0;
};

// Maximum of a unimodal evaluator: candidate scan over the breakpoints,
// bracket expansion on unbounded sides, then golden-section.
SupResult sup_of_evaluator(const DensityEvaluator& ev);

}  // namespace lcx

#endif
