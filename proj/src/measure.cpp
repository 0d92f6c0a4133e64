#include "bdfi/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace bdfi {

std::string family_name(Family f) {
  switch (f) {
    case Family::geometric: return "geometric";
    case Family::poisson: return "poisson";
    case Family::cmp: return "cmp";
    case Family::custom: return "custom";
  }
  return "custom";
}

Family family_from_name(const std::string& name) {
  if (name == "geometric") return Family::geometric;
  if (name == "poisson") return Family::poisson;
  if (name == "cmp") return Family::cmp;
  if (name == "custom") return Family::custom;
  throw std::invalid_argument("unknown measure family: " + name);
}

MeasureSpec MeasureSpec::geometric(double r, int truncation) {
  MeasureSpec s;
  s.family = Family::geometric;
  s.param = r;
  s.truncation = truncation;
  return s;
}

MeasureSpec MeasureSpec::poisson(double lambda, int truncation) {
  MeasureSpec s;
  s.family = Family::poisson;
  s.param = lambda;
  s.truncation = truncation;
  return s;
}

MeasureSpec MeasureSpec::cmp(double nu, int truncation) {
  MeasureSpec s;
  s.family = Family::cmp;
  s.param = nu;
  s.truncation = truncation;
  return s;
}

MeasureSpec MeasureSpec::custom(std::vector<double> log_weights) {
  MeasureSpec s;
  s.family = Family::custom;
  s.log_weights = std::move(log_weights);
  s.truncation = static_cast<int>(s.log_weights.size());
  return s;
}

namespace {

constexpr double kRemainderSlackTol = 1e-14;
constexpr long kMaxRemainderExtension = 500000;

double family_log_weight(const MeasureSpec& s, long k) {
  switch (s.family) {
    case Family::geometric:
      return static_cast<double>(k) * std::log(s.param);
    case Family::poisson:
      return static_cast<double>(k) * std::log(s.param) -
             std::lgamma(static_cast<double>(k) + 1.0);
    case Family::cmp:
      return -s.param * std::lgamma(static_cast<double>(k) + 1.0);
    case Family::custom:
      break;
  }
  throw std::logic_error("family_log_weight: custom family has no closed form");
}

double family_ratio_bound(const MeasureSpec& s, long k) {
  // bound on mu_{j+1}/mu_j for all j >= k; non-increasing in k
  switch (s.family) {
    case Family::geometric:
      return s.param;
    case Family::poisson:
      return s.param / static_cast<double>(k + 1);
    case Family::cmp:
      return std::pow(static_cast<double>(k + 1), -s.param);
    case Family::custom:
      break;
  }
  throw std::logic_error("family_ratio_bound: custom family has no certificate");
}

void validate_spec(const MeasureSpec& s, int n) {
  switch (s.family) {
    case Family::geometric:
      if (!(s.param > 0.0) || !(s.param < 1.0))
        throw std::invalid_argument("geometric: r must lie in (0,1)");
      break;
    case Family::poisson:
      if (!(s.param > 0.0) || !std::isfinite(s.param))
        throw std::invalid_argument("poisson: lambda must be positive");
      break;
    case Family::cmp:
      if (!(s.param > 0.0) || !std::isfinite(s.param))
        throw std::invalid_argument("cmp: nu must be positive");
      break;
    case Family::custom:
      if (s.log_weights.size() < 2)
        throw std::invalid_argument("custom: need at least two weights");
      for (double w : s.log_weights)
        if (!std::isfinite(w))
          throw std::invalid_argument("custom: log weights must be finite");
      break;
  }
  if (n < 2) throw std::invalid_argument("truncation must be at least 2");
}

// Certified upper bound on log sum_{k >= n} w_k (unnormalized) whose slack is
// at most kRemainderSlackTol * w_{n-1}. The geometric family has an exact
// closed form; the other families extend the summation internally until the
// geometric-ratio bound on the rest is negligible.
double certified_log_remainder(const MeasureSpec& s, int n) {
  if (s.family == Family::custom) return kNegInf;
  if (s.family == Family::geometric) {
    // sum_{k>=n} r^k = r^n / (1-r), exactly
    return static_cast<double>(n) * std::log(s.param) - std::log1p(-s.param);
  }
  const double log_target =
      family_log_weight(s, n - 1) + std::log(kRemainderSlackTol);
  LogSumAccumulator acc;  // exact terms w_n .. w_{j-1}
  for (long j = n;; ++j) {
    const double q = family_ratio_bound(s, j - 1);
    if (q < 1.0) {
      const double log_rest =
          family_log_weight(s, j - 1) + std::log(q) - std::log1p(-q);
      if (log_rest <= log_target) {
        acc.add(log_rest);
        return acc.log_sum();
      }
    }
    acc.add(family_log_weight(s, j));
    if (j - n > kMaxRemainderExtension)
      throw std::invalid_argument(
          "truncation too small for the requested remainder tolerance");
  }
}

}  // namespace

TailMeasure build_measure(const MeasureSpec& spec) {
  MeasureSpec s = spec;
  int n = s.truncation;
  if (s.family == Family::custom) {
    n = static_cast<int>(s.log_weights.size());
  } else if (n == 0) {
    n = kDefaultTruncation;
  }
  validate_spec(s, n);
  s.truncation = n;

  std::vector<double> w(n);
  if (s.family == Family::custom) {
    w = s.log_weights;
  } else {
    for (int k = 0; k < n; ++k) w[k] = family_log_weight(s, k);
  }

  std::vector<double> lt(n + 1);
  lt[n] = certified_log_remainder(s, n);
  for (int k = n - 1; k >= 0; --k) lt[k] = log_add_exp(lt[k + 1], w[k]);

  const double log_norm = lt[0];
  for (int k = 0; k < n; ++k) w[k] -= log_norm;
  for (int k = 0; k <= n; ++k) lt[k] -= log_norm;
  lt[0] = 0.0;

  TailMeasure m;
  m.spec_ = std::move(s);
  m.n_ = n;
  m.log_normalizer_ = log_norm;
  m.log_weights_ = std::move(w);
  m.log_tail_ = std::move(lt);
  return m;
}

double TailMeasure::log_weight(int k) const {
  if (k < 0 || k >= n_)
    throw std::out_of_range("log_weight: index outside truncation");
  return log_weights_[k];
}

double TailMeasure::log_weight_extended(long k) const {
  if (k < 0) throw std::out_of_range("log_weight_extended: negative index");
  if (k < n_) return log_weights_[k];
  if (spec_.family == Family::custom) return kNegInf;
  return family_log_weight(spec_, k) - log_normalizer_;
}

double TailMeasure::log_tail(int k) const {
  if (k < 0 || k > n_)
    throw std::out_of_range("log_tail: index outside [0, N]");
  return log_tail_[k];
}

double TailMeasure::weight_ratio_bound(long k) const {
  if (spec_.family == Family::custom)
    throw std::invalid_argument(
        "weight_ratio_bound: custom measures carry no ratio certificate");
  return family_ratio_bound(spec_, k);
}

TailValue tail(const TailMeasure& m, int k) {
  const double lt = m.log_tail(k);
  return {std::exp(lt), lt};
}

MeanResult mean(const TailMeasure& m) {
  const int n = m.truncation();
  double partial = 0.0;
  for (int k = n - 1; k >= 1; --k) partial += k * m.weight(k);

  double bound = 0.0;
  if (m.family() != Family::custom) {
    // sum_{k>=N} k mu_k <= mu_{N-1} [ (N-1) q/(1-q) + q/(1-q)^2 ],
    // exact for the geometric family
    const double q = m.weight_ratio_bound(n - 1);
    if (q >= 1.0)
      throw std::runtime_error("mean: remainder not certifiable, enlarge N");
    const double mu_last = m.weight(n - 1);
    bound = mu_last * ((n - 1) * q / (1.0 - q) + q / ((1.0 - q) * (1.0 - q)));
  }
  MeanResult r{partial, partial + bound, bound};
  if (!(r.remainder_bound <= 1e-9 * std::max(r.upper, 1e-300)))
    throw std::runtime_error("mean: remainder bound exceeds tolerance");
  return r;
}

void write_weights_csv(const TailMeasure& m, std::ostream& out) {
  out << "k,log_weight,log_tail\n";
  char buf[80];
  for (int k = 0; k < m.truncation(); ++k) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", k, m.log_weight(k),
                  m.log_tail(k));
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "%d,,%.17g\n", m.truncation(),
                m.log_tail_remainder());
  out << buf;
}

}  // namespace bdfi
