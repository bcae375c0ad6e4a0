#ifndef LCX_DISCRETE_HPP
#define LCX_DISCRETE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lcx/errors.hpp"

namespace lcx {

// Probability mass function on Z with contiguous support and a log-concavity
// certificate: f(k+1)^2 >= f(k) f(k+2). Analytically infinite families are
// truncated at tail mass 1e-15; the dropped mass is recorded so that strict
// inequality margins can carry it as an error budget.
class LogConcavePMF {
public:
  enum class Family { General, Geometric };

  LogConcavePMF(int offset, std::vector<double> probs,
                Family family = Family::General, double lambda = 0.0,
                double dropped_tail = 0.0);

  int offset() const { return offset_; }
  const std::vector<double>& probs() const { return probs_; }
  Family family() const { return family_; }
  double lambda() const { return lambda_; }
  double dropped_tail_mass() const { return dropped_tail_; }

  double at(int k) const {
    const int i = k - offset_;
    return (i >= 0 && i < static_cast<int>(probs_.size()))
               ? probs_[static_cast<std::size_t>(i)]
               : 0.0;
  }
  double max_prob() const;
  int argmax() const;  // integer k attaining max_prob

  bool is_non_increasing(double tol = 1e-12) const;

private:
  int offset_;
  std::vector<double> probs_;
  Family family_;
  double lambda_;
  double dropped_tail_;
};

// f(k) = (1 - lambda) lambda^k on Z+, truncated at tail mass 1e-15.
LogConcavePMF geometric(double lambda);
// Closed-form self convolution (f*f)(k) = (k+1)(1-lambda)^2 lambda^k.
LogConcavePMF geometric_self_conv(double lambda);

// Exact finite convolution; the log-concavity of the output is revalidated,
// not assumed. Geometric self-convolutions take the closed-form path.
LogConcavePMF discrete_convolve(const LogConcavePMF& f, const LogConcavePMF& g);

LogConcavePMF reflect(const LogConcavePMF& f);

// pmf of X - X~ for X ~ f (closed form for the geometric family).
LogConcavePMF symmetrize(const LogConcavePMF& f);

// Probabilities sorted descending; input to the sequence majorization ops.
std::vector<double> discrete_sequence_rearrange(const LogConcavePMF& f);

// H2(X+Y) < H2(X) + log 2 for i.i.d. X, Y ~ f, along with the proof
// construction: the symmetrized pmf, its matched log-affine sequence
// g(k) = f(0) ((1-f(0))/(1+f(0)))^k, and the majorization feeding Karamata.
struct DiscreteH2Report {
  double h2 = 0.0;
  double h2_sum = 0.0;
  double margin = 0.0;  // h2 + log 2 - h2_sum
  double sym_peak = 0.0;  // f(0) of the symmetrized pmf
  bool majorization_holds = false;
  double karamata_lhs = 0.0;  // sum over Z+ of sym(k)^2
  double karamata_rhs = 0.0;  // sum over Z+ of g(k)^2
  double error_budget = 0.0;  // truncation mass given up by the inputs
};
DiscreteH2Report verify_discrete_h2(const LogConcavePMF& f);

// ||f*f||_inf > e^{-1} ||f||_inf for monotone f, with the proof witness
// sup_k phi(k), phi(k) = (k+1) f(k) indexed from the support start.
struct DiscreteHInfReport {
  double ratio = 0.0;   // ||f*f||_inf / ||f||_inf
  double margin = 0.0;  // ratio - exp(-1)
  double sup_phi = 0.0;
  int k_star = 0;
  std::string case_label;  // "k*=0" or "k*>=1"
  double error_budget = 0.0;
};
DiscreteHInfReport verify_discrete_hinf(const LogConcavePMF& f);

// H_inf(X+Y) < H_inf(X) + 1/2 for pmfs symmetric about an integer or
// half-integer. Returns the margin; throws NotSymmetric otherwise.
double verify_symmetric_half(const LogConcavePMF& f);

// Deterministic random log-concave pmf: convex random potential on a window,
// exponentiated and normalized. The monotone variant sorts the potential
// increments to be non-negative.
LogConcavePMF random_logconcave_pmf(std::uint64_t seed, int max_len,
                                    bool monotone = false);

}  // namespace lcx

#endif
