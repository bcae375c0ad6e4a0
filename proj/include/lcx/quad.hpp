#ifndef LCX_QUAD_HPP
#define LCX_QUAD_HPP

#include <functional>
#include <vector>

namespace lcx {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;  // accumulated |K15 - G7| over accepted panels
  long evaluations = 0;
  bool converged = true;
};

// Adaptive Gauss-Kronrod 15(7) on [a, b]. `breakpoints` (kinks of the
// integrand) seed the initial panel subdivision; panels are then bisected
// until each local error is below its share of abs_tol or max_depth is hit.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double abs_tol = 1e-10,
                              const std::vector<double>& breakpoints = {},
                              int max_depth = 48);

}  // namespace lcx

#endif
