#ifndef LCX_CONVOLVE_HPP
#define LCX_CONVOLVE_HPP

#include "lcx/density.hpp"
#include "lcx/entropy.hpp"

namespace lcx {

// Exact pointwise convolution of two piecewise log-linear densities. Each
// value (f*g)(x) is a finite sum of closed-form piece-pair integrals, summed
// in a fixed order so sequential results are bit-for-bit reproducible.
class ConvolutionClosure {
public:
  ConvolutionClosure(LogConcaveDensity f, LogConcaveDensity g);

  double eval(double x) const;

  double lo() const { return lo_; }  // support hull [lo, hi]
  double hi() const { return hi_; }
  const LogConcaveDensity& left() const { return f_; }
  const LogConcaveDensity& right() const { return g_; }
  const std::vector<double>& knot_sums() const { return knot_sums_; }

  DensityEvaluator evaluator() const;

private:
  LogConcaveDensity f_, g_;
  std::vector<LogConcaveDensity::Piece> pf_, pg_;
  std::vector<double> knot_sums_;
  double lo_, hi_;
};

double conv_eval(const LogConcaveDensity& f, const LogConcaveDensity& g,
                 double x);

// Max of f*g: candidate scan over knot sums, then golden-section on the
// bracketing interval (f*g is log-concave, hence unimodal).
SupResult conv_sup_norm(const LogConcaveDensity& f, const LogConcaveDensity& g);

struct FitResult {
  LogConcaveDensity density;
  double achieved_bound;  // max potential error against the closure
  int knot_count;
};

// Piecewise log-linear fit of a convolution on adaptive knots, bisecting on
// interval midpoint error until the potential error is below rel_tol.
// Unbounded sides keep exponential tails with the true asymptotic slopes.
// Throws FitBudgetExceeded beyond 1e5 knots.
FitResult fit_density(const ConvolutionClosure& cl, double rel_tol = 1e-6);

struct SupBoundPair {
  double lhs;  // ||f*g||_inf
  double rhs;  // ||f|v * g|v||_inf
  double error_estimate;
};

// Both sides of the unimodal rearrangement comparison
// ||f*g||_inf >= ||f|v*g|v||_inf.
SupBoundPair rearranged_sup_bound(const LogConcaveDensity& f,
                                  const LogConcaveDensity& g);

struct SymmetrizationCheck {
  double h2;             // h_2(X)
  double hinf_of_diff;   // h_inf(X - X~)
  double gap;            // hinf_of_diff - h2, zero up to numerics
  double error_estimate;
};

// The identity h_inf(X - X~) = h_2(X) computed by two independent routes.
SymmetrizationCheck symmetrization_identity_check(const LogConcaveDensity& d);

}  // namespace lcx

#endif
