#pragma once

#include <span>
#include <vector>

#include "bdfi/numerics.hpp"

namespace bdfi {

// p in (0,1] together with its Hoelder conjugate p' = p/(p-1). p = 1 is an
// exact branch; inputs within 1e-8 of 1 are snapped to it (the factored
// formula cancels catastrophically as p -> 1).
struct HpParams {
  double p;
  double p_conj;  // NaN at p = 1
  bool is_one;

  explicit HpParams(double p_in);
};

// H_p(x) = p p' (x^{1/p} - 1)(x^{1/p'} - 1), and (x-1) log x at p = 1.
// Defined for x >= 1 only; x < 1 is rejected.
double hp_value(const HpParams& params, double x);

// log H_p(e^L) for L = log x >= 0; overflow-safe for arguments whose linear
// value exceeds the double range. Returns -inf at L = 0.
double log_hp_value(const HpParams& params, double log_x);

// Same algebraic formula evaluated on (0, inf); still nonnegative below 1.
// Used by the energy functional in its lenient domain mode.
double hp_value_extended(const HpParams& params, double x);

// Analytic derivative, x >= 1.
double hp_derivative(const HpParams& params, double x);

struct HpPropertyItem {
  bool holds = true;
  double worst_x = 0.0;
  double worst_margin = kInf;  // min over the grid of (lhs - rhs)
};

// One entry per item of the H_p property lemma, checked pointwise:
//   monotone_convex : increasing, midpoint-convex on the grid
//   log_sq_lower    : H_p(x) >= (log x)^2
//   xlogx_lower     : H_p(x) >= x log x * min{H_p(l)/(l log l), H_p'(l)/(1+log l), 1}
//   scaled_lower    : H_p(x) >= H_p(xc) * min{H_p(l)/H_p(lc), H_p'(l)/(c H_p'(lc)), c^{-1/p}}
//   slope_ratio     : H_p(y)/y <= l/(l-1) * H_p(x)/x for grid pairs y <= x
struct HpPropertyReport {
  HpPropertyItem monotone_convex;
  HpPropertyItem log_sq_lower;
  HpPropertyItem xlogx_lower;
  HpPropertyItem scaled_lower;
  HpPropertyItem slope_ratio;

  bool all_hold() const {
    return monotone_convex.holds && log_sq_lower.holds && xlogx_lower.holds &&
           scaled_lower.holds && slope_ratio.holds;
  }
};

// Grid must be sorted ascending with every x >= lambda > 1; c > 1.
HpPropertyReport verify_hp_properties(const HpParams& params, double lambda,
                                      double c, std::span<const double> grid);

struct IntegralBound {
  double lhs;        // int_1^lambda (e^{s/p}-1)/s^2 ds by adaptive quadrature
  double rhs;        // p/(1-p) * e^{lambda/p} / lambda
  double abs_error;  // quadrature error estimate
  bool holds;
};

// Integral estimate check for p in (0,1), lambda > 1. Quadrature error is
// driven below 1e-10 relative to both lhs and rhs.
IntegralBound integral_bound_check(double p, double lambda);

}  // namespace bdfi
