#include "assocperc/renorm.hpp"

#include "assocperc/error.hpp"

namespace assocperc {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kEscapesToOne:
      return "escapes_to_one";
    case Verdict::kContracts:
      return "contracts";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

double renorm_map(double p, int w, ExecPolicy policy) {
  return exact_survival(w, w + 1, p, policy) * exact_survival(w, 0, p, policy);
}

RenormTrajectory iterate(double p0, int w, int max_iters, double eps, ExecPolicy policy) {
  require_probability(p0, "p0");
  require(w >= 1 && w <= kMaxDpWidth, "w must lie in [1, 24]");
  require(max_iters >= 1, "max_iters must be at least 1");
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
  RenormTrajectory t;
  t.w = w;
  t.p0 = p0;
  double p = p0;
  for (int n = 0;; ++n) {
    RenormStep step{n, p, 0.0, 0.0};
    if (p > 1.0 - eps) {
      t.steps.push_back(step);
      t.verdict = Verdict::kEscapesToOne;
      return t;
    }
    if (p < p0) {
      t.steps.push_back(step);
      t.verdict = Verdict::kContracts;
      return t;
    }
    if (n == max_iters) {
      t.steps.push_back(step);
      t.verdict = Verdict::kInconclusive;
      return t;
    }
    step.q_long = exact_survival(w, w + 1, p, policy);
    step.q_square = exact_survival(w, 0, p, policy);
    t.steps.push_back(step);
    p = step.q_long * step.q_square;
  }
}

}  // namespace assocperc
