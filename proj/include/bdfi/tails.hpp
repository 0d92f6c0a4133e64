#pragma once

#include <vector>

#include "bdfi/measure.hpp"

namespace bdfi {

struct MgfResult {
  double log_partial;          // log sum_{k<N} e^{lambda k} mu_k
  double log_remainder_bound;  // certified upper bound on the rest
  double log_value;            // log(partial + remainder bound)
  double value;
};

// True when E e^{lambda X} is provably finite for the family (geometric needs
// lambda < -log r; the other families converge for every lambda).
bool mgf_converges(const TailMeasure& m, double lambda);

// sum e^{lambda k} mu_k with a certified remainder, accumulated in log space.
// Throws outside the convergence radius or when the truncation cannot certify
// the remainder.
MgfResult mgf(const TailMeasure& m, double lambda);

// Tail-deficiency function of the Poisson-type tail bound, p in (0,1):
//   1                                          if t <= e^{1/p} - 1,
//   min(1, log E e^X / t
//          + C/4 * (1/p-1)^{-2} * (t+1)/(t log(t+1)))  otherwise.
double epsilon_p(double p, double t, double C, double log_mgf1);

// p = 1 via the interpolation schedule phi(t) = 0.5 for t <= e^e and
// phi(t) = (1 + 1/log log t)^{-1} above:
//   eps_1(t) = 1 - phi(t) (1 - eps_{phi(t)}(t)).
double epsilon_1(double t, double C, double log_mgf1);

struct TailCheckInput {
  const TailMeasure& measure;
  double p;                    // (0, 1]
  double pls_constant;         // C in p-LS(C), > 0
  std::vector<double> t_grid;  // sorted, >= 0
};

struct HerbstRow {
  double t;
  double log_tail;   // log mu[ceil(t), inf)
  double bound_rhs;  // -(1 - eps_p(t)) t p log(t+1)
  double epsilon;
  bool holds;
};

struct HerbstReport {
  std::vector<HerbstRow> rows;
  bool mgf_divergent = false;  // E e^X provably infinite
  double log_mgf1 = 0.0;       // NaN when divergent

  bool all_hold() const;
};

// Validates the Poisson-type tail bound per t. A provably divergent mgf at
// lambda = 1 already falsifies the bound (Poisson-type tails force
// E e^X < infinity), so every row is reported failed in that case rather than
// erroring out.
HerbstReport herbst_check(const TailCheckInput& input);

}  // namespace bdfi
