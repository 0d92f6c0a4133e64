#pragma once

#include <string>
#include <vector>

#include "bdfi/measure.hpp"

namespace bdfi {

enum class BoundMethod { analytic, variational, theorem_bracket };

std::string bound_method_name(BoundMethod m);

// Certified two-sided bounds for a functional-inequality constant.
struct ConstantBracket {
  double lower;
  double upper;
  BoundMethod lower_method;
  BoundMethod upper_method;
};

struct CmuResult {
  double value;      // sup_{1<=k<=N} tail(k) * sum_{l<k} 1/mu_l
  double log_value;
  int argmax;
  bool attained;     // false when the sup is (or may be) a limit over k
  bool resolved;     // numeric sup has stabilized or a family certificate applies
  std::vector<double> series;  // summand per k = 1..N
};

// Hardy/Poincare criterion constant. The geometric family reports its exact
// closed-form limit r/(1-r)^2; cmp/poisson summands vanish at infinity, so a
// stabilized interior maximum is the true sup. Custom measures with a still
// rising trend at the truncation throw (no certificate available).
CmuResult c_mu(const TailMeasure& m);

// [C_mu, 4 C_mu] bracket for the best Hardy constant.
ConstantBracket hardy_bracket(const TailMeasure& m);

// [2 mu_0 C_mu, 8 C_mu] bracket for the best Poincare constant.
ConstantBracket poincare_bracket(const TailMeasure& m);

// Certified lower bound on the best Poincare constant: maximizes 2 Var/E over
// functions constant on [K, inf), a generalized symmetric eigenproblem on the
// lumped state space {0,...,K-1,[K,inf)}.
double poincare_numeric(const TailMeasure& m, int K);

// Same lumping for the Hardy quotient with f(0) = 0 pinned; lower bound on
// the best Hardy constant.
double hardy_numeric(const TailMeasure& m, int K);

}  // namespace bdfi
