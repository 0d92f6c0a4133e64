#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bdfi/numerics.hpp"

namespace bdfi {

enum class Family { geometric, poisson, cmp, custom };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Recipe for a fully supported probability measure on the naturals.
// Built-in families: geometric(r) with weights (1-r)r^k, poisson(lambda),
// and the Conway-Maxwell-Poisson family cmp(nu) with weights (k!)^(-nu)/Z_nu.
struct MeasureSpec {
  Family family = Family::custom;
  double param = 0.0;                // r | lambda | nu
  std::vector<double> log_weights;   // custom only, unnormalized
  int truncation = 0;                // N; 0 selects the family default

  static MeasureSpec geometric(double r, int truncation = 0);
  static MeasureSpec poisson(double lambda, int truncation = 0);
  static MeasureSpec cmp(double nu, int truncation = 0);
  static MeasureSpec custom(std::vector<double> log_weights);
};

inline constexpr int kDefaultTruncation = 512;

// Normalized measure with log-space weights mu_0..mu_{N-1} and a certified
// upper bound on the tail mass mu[N, inf). Immutable after construction.
//
// For built-in families the remainder bound is tight: its slack is below
// 1e-14 * tail(N-1) (exact for geometric). Custom measures carry a zero
// remainder and are flagged truncation_dependent.
class TailMeasure {
 public:
  int truncation() const { return n_; }
  Family family() const { return spec_.family; }
  const MeasureSpec& spec() const { return spec_; }
  double log_normalizer() const { return log_normalizer_; }
  bool truncation_dependent() const { return spec_.family == Family::custom; }

  // log mu_k, 0 <= k < N
  double log_weight(int k) const;
  double weight(int k) const { return std::exp(log_weight(k)); }

  // log mu_k for any k >= 0; for built-in families uses the family closed
  // form beyond the truncation, for custom measures returns -inf there.
  double log_weight_extended(long k) const;

  // log mu[k, inf), 0 <= k <= N; log_tail(N) is the certified remainder.
  double log_tail(int k) const;
  double tail(int k) const { return std::exp(log_tail(k)); }
  double log_tail_remainder() const { return log_tail_[n_]; }

  // Upper bound q on mu_{j+1}/mu_j valid for every j >= k (built-ins only).
  double weight_ratio_bound(long k) const;

  friend TailMeasure build_measure(const MeasureSpec& spec);

 private:
  TailMeasure() = default;

  MeasureSpec spec_;
  int n_ = 0;
  double log_normalizer_ = 0.0;
  std::vector<double> log_weights_;  // normalized, size N
  std::vector<double> log_tail_;     // normalized, size N+1
};

TailMeasure build_measure(const MeasureSpec& spec);

struct TailValue {
  double value;
  double log_value;
};

// mu[k, inf) in both scales; k = N yields the certified remainder bound.
TailValue tail(const TailMeasure& m, int k);

struct MeanResult {
  double lower;            // exact partial sum over k < N
  double upper;            // partial + certified remainder bound
  double remainder_bound;
  double value() const { return upper; }
};

// E X = sum k*mu_k with a certified remainder; throws when the remainder
// cannot be pushed below 1e-9 relative (mean not certified).
MeanResult mean(const TailMeasure& m);

// Columns: k,log_weight,log_tail with a final row (k = N) for the remainder.
void write_weights_csv(const TailMeasure& m, std::ostream& out);

}  // namespace bdfi
