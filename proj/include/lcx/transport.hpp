#ifndef LCX_TRANSPORT_HPP
#define LCX_TRANSPORT_HPP

#include "lcx/density.hpp"
#include "lcx/entropy.hpp"
#include "lcx/majorize.hpp"

namespace lcx {

// The CDF-to-CDF map phi = F_W^{-1} o F_Y pushing a monotone non-increasing
// log-concave Y forward onto the exponential W with the same h_inf:
// phi(y) = -log(1 - F_Y(y)) / f_Y(0). phi(0) = 0, phi is convex, and
// phi' >= 1, which is the expansion property the chain inequalities rest on.
// Coordinates are measured from the support start (callers shift first; the
// map canonicalizes internally and records the shift).
class TransportMap {
public:
  explicit TransportMap(const LogConcaveDensity& source);

  double phi(double y) const;      // +inf sentinel once F_Y(y) reaches 1
  double phi_inverse(double t) const;
  double phi_prime(double y) const;  // f(y) / (f(0) (1 - F(y)))

  double peak() const { return peak_; }  // f(0) = sup norm
  double applied_shift() const { return shift_; }
  const LogConcaveDensity& source() const { return source_; }

private:
  LogConcaveDensity source_;  // shifted so support starts at 0
  double peak_;
  double shift_;
};

// Throws NotMonotone unless d_Y is non-increasing on its support.
TransportMap transport_map(const LogConcaveDensity& d_Y);

// min over the grid of phi'(y); the lemma asserts the result is >= 1.
double expansion_check(const TransportMap& m, const std::vector<double>& y_grid);

// Change-of-measure comparison (f_X * f_W)(y) <= (f_X * f_Y)(phi^{-1}(y))
// with W = exponential_match(d_Y). Returns the worst rhs - lhs over the grid.
double pointwise_domination(const LogConcaveDensity& d_X,
                            const LogConcaveDensity& d_Y,
                            const std::vector<double>& y_grid);

// Full exponentialization chain h_p(X+Y) <= h_p(X+W) <= h_p(Z+W) with
// Z, W the h_inf-matched exponentials, plus the two majorization steps
// the proof runs on (X+Y majorizes X+W majorizes Z+W).
struct ChainReport {
  struct Entry {
    RenyiOrder order;
    double h_xy, h_xw, h_zw;
    double eps;  // summed error estimates for this row
    bool ordered;
  };
  std::vector<Entry> entries;
  MajorizationVerdict xy_over_xw;
  MajorizationVerdict xw_over_zw;
  double fit_budget = 0.0;
  bool all_ordered = false;

  Entry* find(RenyiOrder::Kind kind);
};

ChainReport exponentialization_chain(const LogConcaveDensity& d_X,
                                     const LogConcaveDensity& d_Y,
                                     const std::vector<RenyiOrder>& p_grid);

}  // namespace lcx

#endif
