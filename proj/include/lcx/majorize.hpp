#ifndef LCX_MAJORIZE_HPP
#define LCX_MAJORIZE_HPP

#include <functional>
#include <string>
#include <vector>

#include "lcx/density.hpp"
#include "lcx/entropy.hpp"

namespace lcx {

struct MajorizationVerdict {
  bool holds = false;
  double worst_margin = 0.0;  // min over levels of M_g(t) - M_f(t)
  double worst_t = 0.0;
  int levels_checked = 0;
  double slack = 0.0;  // tolerance the verdict was judged against
};

// Does g majorize f, i.e. int (f-t)_+ <= int (g-t)_+ for all t? Checked on
// t_count log-spaced levels plus every knot value of both densities (excess
// mass is convex in t, and the kinks sit exactly at knot values). `slack`
// absorbs the numeric budget of fitted inputs. Throws MassMismatch.
MajorizationVerdict majorizes(const LogConcaveDensity& g,
                              const LogConcaveDensity& f, int t_count = 400,
                              double slack = 1e-10);

// For each width, the largest window mass max_b int_b^{b+w} f. Together with
// interval sufficiency this gives a one-parameter majorization test for
// unimodal densities.
std::vector<double> window_mass_curve(const LogConcaveDensity& d,
                                      const std::vector<double>& widths);

struct ConvexOrderReport {
  MajorizationVerdict precondition;
  std::vector<RenyiOrder> orders;
  std::vector<double> gaps;  // h_p(majorant) - h_p(majorized), expect <= 0
  bool all_ordered = false;
};

// Consequence of majorization for Renyi entropies: if g majorizes f then
// h_p(g) <= h_p(f) for every p. Throws PreconditionUnverified when the
// majorization check fails.
ConvexOrderReport convex_order_consequence(const LogConcaveDensity& g,
                                           const LogConcaveDensity& f,
                                           const std::vector<RenyiOrder>& p_grid,
                                           double tol = 1e-7);

// Prefix-sum majorization of two sequences after sorting both descending.
// Throws SumMismatch when totals differ by more than 1e-12.
bool sequence_majorizes(std::vector<double> a, std::vector<double> b);

struct ConvexSample {
  std::string name;
  std::function<double(double)> phi;  // convex, phi(0) = 0
};

// Standard convex test functions: squares, exponentials, hinge losses.
std::vector<ConvexSample> standard_convex_samples();

struct KaramataReport {
  std::vector<std::string> names;
  std::vector<double> lhs, rhs;  // sum phi(a) vs sum phi(b)
  bool all_hold = false;
};

// Karamata: a majorizes b implies sum phi(a) >= sum phi(b) for convex phi.
// Throws PreconditionUnverified when a does not majorize b.
KaramataReport karamata(const std::vector<double>& a,
                        const std::vector<double>& b,
                        const std::vector<ConvexSample>& phi_samples);

}  // namespace lcx

#endif
