#pragma once

#include <utility>
#include <vector>

#include "bdfi/hp.hpp"
#include "bdfi/measure.hpp"

namespace bdfi {

// Piecewise-constant function on the naturals: value jumps only at the
// breakpoint indices and stays constant beyond the last one. The first
// breakpoint must sit at index 0 so the function is defined everywhere.
//
// Values may be any finite reals; the entropy and p-energy functionals
// require strict positivity and enforce it themselves.
class SimpleFunction {
 public:
  explicit SimpleFunction(std::vector<std::pair<int, double>> breakpoints);

  double operator()(int k) const;
  int last_index() const { return breakpoints_.back().first; }
  double tail_value() const { return breakpoints_.back().second; }
  const std::vector<std::pair<int, double>>& breakpoints() const {
    return breakpoints_;
  }

  bool positive() const;
  bool non_decreasing() const;
  SimpleFunction scaled(double a) const;
  SimpleFunction sqrt() const;  // requires positivity

 private:
  std::vector<std::pair<int, double>> breakpoints_;
};

// Ent_mu(f) = E[f log f] - E[f] log E[f], f > 0. The constant tail of f is
// folded in exactly through the tail mass, and the Bregman form
// sum mu_k [ f log(f/Ef) - (f - Ef) ] keeps the result nonnegative.
double entropy(const TailMeasure& m, const SimpleFunction& f);

double variance(const TailMeasure& m, const SimpleFunction& f);

// sum_k Df(k) Dg(k) mu_k (finite sum).
double dirichlet(const TailMeasure& m, const SimpleFunction& f,
                 const SimpleFunction& g);

// Domain handling for ratios f(k+1)/f(k) < 1 in the p-energy: the lemmas only
// ever need ratios >= 1, but the defining series carries no monotonicity
// restriction. Lenient mode evaluates the same algebraic formula (still
// nonnegative) and flags it; strict mode rejects.
enum class RatioDomain { strict, lenient };

struct EnergyResult {
  double value;
  bool used_extended_domain;
};

// E_p(f) = sum_k f(k) H_p(f(k+1)/f(k)) mu_k for p in (0,1], f > 0.
EnergyResult energy_p(const TailMeasure& m, const SimpleFunction& f, double p,
                      RatioDomain domain = RatioDomain::lenient);

// Lf(k) = Df(k) - 1_{k>0} (mu_{k-1}/mu_k) Df(k-1), 0 <= k <= N-1.
double generator_apply(const TailMeasure& m, const SimpleFunction& f, int k);

// g(0) = f(0), g(n) = f(0) + sum_{k<n} (Df(k))_+ ; non-decreasing, >= f.
SimpleFunction monotone_envelope(const SimpleFunction& f);

// Property-test generator: 1..12 breakpoints, gaps 1..5, values log-uniform
// in [1e-2, 1e2].
SimpleFunction random_simple_function(SplitMix64& rng);

}  // namespace bdfi
