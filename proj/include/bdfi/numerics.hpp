#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace bdfi {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(e^a + e^b), safe for -inf and widely different magnitudes.
inline double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

// log(1 - e^x) for x < 0.
inline double log1m_exp(double x) {
  if (!(x < 0.0)) throw std::domain_error("log1m_exp: argument must be negative");
  if (x > -0.6931471805599453)  // -log 2
    return std::log(-std::expm1(x));
  return std::log1p(-std::exp(x));
}

// log(e^t - 1) for t > 0.
inline double log_expm1(double t) {
  if (!(t > 0.0)) throw std::domain_error("log_expm1: argument must be positive");
  if (t > 33.0) return t + std::log1p(-std::exp(-t));
  return std::log(std::expm1(t));
}

// Streaming log-sum-exp.
class LogSumAccumulator {
 public:
  void add(double log_term) { sum_ = log_add_exp(sum_, log_term); }
  double log_sum() const { return sum_; }

 private:
  double sum_ = kNegInf;
};

std::vector<double> log_spaced_grid(double lo, double hi, int n);

// SplitMix64; fully specified, hence reproducible across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  // accumulated Gauss-Kronrod error estimate
  int subdivisions = 0;
};

// Adaptive Gauss-Kronrod (G7,K15) with interval bisection. Stops once the
// error estimate drops below max(abs_tol, rel_tol*|value|); throws on
// exceeding max_subdivisions.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    double rel_tol, int max_subdivisions = 4000);

// Golden-section minimizer for a unimodal function on [lo, hi].
double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, double x_tol);

}  // namespace bdfi
