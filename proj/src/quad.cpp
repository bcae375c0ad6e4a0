#include "lcx/quad.hpp"

#include <algorithm>
#include <cmath>

namespace lcx {
namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1, 1]; the odd-indexed nodes
// form the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct PanelEval {
  double k15;
  double err;
};

PanelEval eval_panel(const std::function<double(double)>& f, double a, double b,
                     long& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  evals += 15;

  double k15 = 0.0, g7 = 0.0;
  for (int i = 0; i < 7; ++i) {
    k15 += kWgk[i] * (fv[i] + fv[14 - i]);
    if (i % 2 == 1) g7 += kWg[i / 2] * (fv[i] + fv[14 - i]);
  }
  k15 += kWgk[7] * fv[7];
  g7 += kWg[3] * fv[7];
  k15 *= h;
  g7 *= h;

  double err = std::abs(k15 - g7);
  // Standard QUADPACK-style sharpening of the raw difference.
  double resabs = 0.0;
  for (int i = 0; i < 15; ++i) resabs += std::abs(fv[i]);
  resabs *= h * 2.0 / 15.0;
  if (resabs > 0.0 && err > 0.0) {
    double scaled = std::pow(200.0 * err / resabs, 1.5);
    if (scaled < 1.0) err = resabs * scaled;
  }
  return {k15, err};
}

struct Panel {
  double a, b, value, err;
  int depth;
};

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, double abs_tol,
                              const std::vector<double>& breakpoints,
                              int max_depth) {
  QuadResult out;
  if (!(b > a)) return out;

  std::vector<double> cuts;
  cuts.push_back(a);
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Panel> work;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    PanelEval e = eval_panel(f, cuts[i], cuts[i + 1], out.evaluations);
    work.push_back({cuts[i], cuts[i + 1], e.k15, e.err, 0});
  }

  // Bisect the worst panel until the global error target is met.
  while (true) {
    double total_err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < work.size(); ++i) {
      total_err += work[i].err;
      if (work[i].err > work[worst].err) worst = i;
    }
    if (total_err <= abs_tol) break;
    if (work[worst].depth >= max_depth || work.size() > 100000) {
      out.converged = false;
      break;
    }
    Panel p = work[worst];
    const double mid = 0.5 * (p.a + p.b);
    PanelEval left = eval_panel(f, p.a, mid, out.evaluations);
    PanelEval right = eval_panel(f, mid, p.b, out.evaluations);
    work[worst] = {p.a, mid, left.k15, left.err, p.depth + 1};
    work.push_back({mid, p.b, right.k15, right.err, p.depth + 1});
  }

  // Deterministic reduction: sum in left-to-right order.
  std::sort(work.begin(), work.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const Panel& p : work) {
    out.value += p.value;
    out.error_estimate += p.err;
  }
  return out;
}

}  // namespace lcx
