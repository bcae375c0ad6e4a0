#ifndef LCX_REARRANGE_HPP
#define LCX_REARRANGE_HPP

#include <vector>

#include "lcx/density.hpp"

namespace lcx {

// The level-set measure function t -> m_f(t) = |{f > t}|. For a piecewise
// log-linear density m_f is exactly alpha - beta log t between consecutive
// knot values, which is what makes the rearrangement below exact.
struct LevelProfile {
  struct Segment {
    double t_hi, t_lo;   // value interval (t_lo, t_hi], descending
    double alpha, beta;  // m(t) = alpha - beta log t, beta >= 0
  };
  std::vector<Segment> segments;
  double max_value = 0.0;
  double support_measure = 0.0;  // +inf for unbounded support
};

LevelProfile level_profile(const LogConcaveDensity& d);

// Lebesgue measure of the strict super-level set {f > t}, t > 0.
double level_measure(const LogConcaveDensity& d, double t);

// Measure of {f >= t}; differs from level_measure only across plateaus.
double closed_level_measure(const LogConcaveDensity& d, double t);

// Excess mass int (f - t)_+ dx, exact per piece.
double excess_mass(const LogConcaveDensity& d, double t);

// The decreasing rearrangement f|v on [0, |supp f|), constructed exactly by
// inverting the level profile: knots are the measures |{f >= t}|, |{f > t}|
// at each distinct knot value t. The output is log-concave and
// equimeasurable with the input.
LogConcaveDensity decreasing_rearrangement(const LogConcaveDensity& d);

struct HardyLittlewoodResult {
  double lhs = 0.0;  // int_a^b f g
  double rhs = 0.0;  // int_0^{b-a} f|v(x) g|v(b-a-x) dx
  double quad_error = 0.0;
};

// Both sides of the Hardy-Littlewood comparison for f, g supported in
// [a, b]. Throws SupportExceedsInterval when more than 1e-12 of either mass
// lies outside the interval.
HardyLittlewoodResult hardy_littlewood(const LogConcaveDensity& f,
                                       const LogConcaveDensity& g, double a,
                                       double b);

}  // namespace lcx

#endif
