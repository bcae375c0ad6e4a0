#ifndef LCX_DENSITY_HPP
#define LCX_DENSITY_HPP

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "lcx/errors.hpp"
#include "lcx/rng.hpp"

namespace lcx {

// One-dimensional log-concave density represented by a piecewise linear
// potential: log f is linear between consecutive knots, with optional
// exponential tails beyond the first/last knot. The class is immutable
// after construction and normalized so the total mass is 1.
class LogConcaveDensity {
public:
  // A maximal interval on which the potential is a single affine function.
  // x0 may be -inf (left tail) and x1 may be +inf (right tail); anchor_x is
  // always finite and log f(x) = anchor_log + slope * (x - anchor_x).
  struct Piece {
    double x0, x1;
    double anchor_x;
    double anchor_log;  // normalized: exp of it is the density value
    double slope;
  };

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& log_values() const { return log_values_; }
  std::optional<double> left_tail_slope() const { return left_slope_; }
  std::optional<double> right_tail_slope() const { return right_slope_; }
  double normalization() const { return normalization_; }

  // Normalized log density at knot i.
  double knot_log_value(std::size_t i) const {
    return log_values_[i] - normalization_;
  }

  double support_lo() const;  // -inf when a left tail is present
  double support_hi() const;
  bool bounded_support() const {
    return !left_slope_.has_value() && !right_slope_.has_value();
  }

  double evaluate(double x) const;      // 0 outside support
  double log_evaluate(double x) const;  // -inf outside support

  // Exact closed-form mass of [a, b] (a <= b; infinite endpoints allowed).
  double integrate(double a, double b) const;
  double cdf(double x) const { return integrate(support_lo(), x); }
  // Monotone inverse of the CDF, u in [0, 1].
  double quantile(double u) const;

  struct SupNorm {
    double value;
    double argmax;
  };
  SupNorm sup_norm() const;

  std::vector<Piece> pieces() const;

  // True when every potential slope is <= tol (density non-increasing).
  bool is_non_increasing(double tol = 1e-12) const;

  friend LogConcaveDensity build_density(std::vector<double> knots,
                                         std::vector<double> log_values,
                                         std::optional<double> left_tail_slope,
                                         std::optional<double> right_tail_slope);

private:
  LogConcaveDensity() = default;

  std::vector<double> knots_;
  std::vector<double> log_values_;
  std::optional<double> left_slope_;
  std::optional<double> right_slope_;
  double normalization_ = 0.0;

  std::vector<double> secants_;   // potential slope on [knot_i, knot_{i+1}]
  std::vector<double> knot_cdf_;  // CDF at each knot
  std::size_t argmax_ = 0;

  std::size_t locate_piece(double x) const;
};

// Validates the potential (strictly increasing knots, non-increasing slope
// sequence, integrable tails) and normalizes the density to unit mass.
//
// Throws NonConcavePotential, NonIntegrable, EmptySupport, InvalidParameter.
LogConcaveDensity build_density(std::vector<double> knots,
                                std::vector<double> log_values,
                                std::optional<double> left_tail_slope = {},
                                std::optional<double> right_tail_slope = {});

double evaluate(const LogConcaveDensity& d, double x);
double integrate(const LogConcaveDensity& d, double a, double b);
LogConcaveDensity::SupNorm sup_norm(const LogConcaveDensity& d);

// Exp(lambda) with lambda = sup f; the unique exponential matching h_inf.
LogConcaveDensity exponential_match(const LogConcaveDensity& d);

LogConcaveDensity reflect(const LogConcaveDensity& d);
LogConcaveDensity shift(const LogConcaveDensity& d, double c);
// Density of lambda * X, lambda > 0.
LogConcaveDensity scale(const LogConcaveDensity& d, double lambda);

// Convenience constructors used throughout the tests and the CLI.
LogConcaveDensity exponential_density(double rate);
LogConcaveDensity uniform_density(double lo, double hi);
LogConcaveDensity laplace_density(double rate);

// Deterministic random instance generator. Slopes are drawn and then sorted
// decreasing, so the output always validates. With monotone = true the
// density is non-increasing with support starting at 0.
LogConcaveDensity random_logconcave(std::uint64_t seed, int n_knots,
                                    std::pair<double, double> domain,
                                    bool monotone = false);

// Pointwise evaluation handle for densities that exist only as evaluators
// (convolution closures). Carries the support hull, kink locations for
// quadrature subdivision, and asymptotic potential slopes for tail control.
struct DensityEvaluator {
  std::function<double(double)> pdf;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> breakpoints;
  std::optional<double> left_decay;   // potential slope as x -> -inf
  std::optional<double> right_decay;  // potential slope as x -> +inf
  double mode_hint = 0.0;

  double operator()(double x) const { return pdf(x); }
};

DensityEvaluator make_evaluator(const LogConcaveDensity& d);

}  // namespace lcx

#endif
