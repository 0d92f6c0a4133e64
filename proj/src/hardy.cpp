#include "bdfi/hardy.hpp"

#include <algorithm>
#include <cmath>

namespace bdfi {

std::string bound_method_name(BoundMethod m) {
  switch (m) {
    case BoundMethod::analytic: return "analytic";
    case BoundMethod::variational: return "variational";
    case BoundMethod::theorem_bracket: return "theorem-bracket";
  }
  return "theorem-bracket";
}

CmuResult c_mu(const TailMeasure& m) {
  const int n = m.truncation();
  CmuResult r;
  r.series.resize(n);
  double log_inv_sum = kNegInf;  // log sum_{l<k} 1/mu_l
  double best = kNegInf;
  int arg = 1;
  for (int k = 1; k <= n; ++k) {
    log_inv_sum = log_add_exp(log_inv_sum, -m.log_weight(k - 1));
    const double s = m.log_tail(k) + log_inv_sum;
    r.series[k - 1] = std::exp(s);
    if (s > best) {
      best = s;
      arg = k;
    }
  }

  const int window_start = std::max(1, static_cast<int>(0.9 * n));
  bool trailing_increasing = true;
  for (int k = window_start + 1; k <= n; ++k)
    if (!(r.series[k - 1] > r.series[k - 2])) {
      trailing_increasing = false;
      break;
    }
  double sup_at_window_start = kNegInf;
  for (int k = 1; k <= window_start; ++k)
    sup_at_window_start = std::max(sup_at_window_start, r.series[k - 1]);
  const double sup_total = std::exp(best);
  const bool still_moving =
      (sup_total - sup_at_window_start) > 1e-6 * sup_total;

  r.log_value = best;
  r.value = sup_total;
  r.argmax = arg;
  r.attained = !trailing_increasing;
  r.resolved = !(trailing_increasing && still_moving);

  switch (m.family()) {
    case Family::geometric: {
      // summand = (r - r^{k+1})/(1-r)^2, strictly increasing to r/(1-r)^2
      const double p = m.spec().param;
      r.value = p / ((1.0 - p) * (1.0 - p));
      r.log_value = std::log(p) - 2.0 * std::log1p(-p);
      r.attained = false;
      r.resolved = true;
      break;
    }
    case Family::poisson:
    case Family::cmp:
      // summand -> 0, so a stabilized interior maximum is the global sup
      if (!still_moving) {
        r.attained = true;
        r.resolved = true;
      }
      break;
    case Family::custom:
      if (!r.resolved)
        throw std::runtime_error(
            "c_mu: truncation too small, supremum trend unresolved and the "
            "custom family carries no monotonicity certificate");
      break;
  }
  return r;
}

ConstantBracket hardy_bracket(const TailMeasure& m) {
  const CmuResult c = c_mu(m);
  if (!c.resolved || !std::isfinite(c.value))
    throw std::runtime_error("hardy_bracket: C_mu unresolved");
  return {c.value, 4.0 * c.value, BoundMethod::theorem_bracket,
          BoundMethod::theorem_bracket};
}

ConstantBracket poincare_bracket(const TailMeasure& m) {
  const CmuResult c = c_mu(m);
  if (!c.resolved || !std::isfinite(c.value))
    throw std::runtime_error("poincare_bracket: C_mu unresolved");
  return {2.0 * m.weight(0) * c.value, 8.0 * c.value,
          BoundMethod::theorem_bracket, BoundMethod::theorem_bracket};
}

namespace {

constexpr double kRayleighTol = 1e-12;
constexpr int kMaxPowerIterations = 100000;

// Largest generalized eigenvalue of (A, B) restricted to coordinates 1..K
// after pinning x_0 = 0, where B is the tridiagonal Dirichlet matrix of the
// lumped chain and A is either the Hardy form diag(m_i) or the variance form
// diag(m_i) - m m^T. Inverse-free power iteration with B-normalization; the
// returned Rayleigh quotient is a certified lower bound for the pencil.
class LumpedPencil {
 public:
  LumpedPencil(const TailMeasure& m, int K, bool variance_form)
      : k_(K), variance_form_(variance_form) {
    if (K < 2 || K > m.truncation())
      throw std::invalid_argument("lumped solver: need 2 <= K <= N");
    mu_.resize(K);
    mass_.resize(K + 1);
    for (int i = 0; i < K; ++i) {
      mu_[i] = m.weight(i);
      mass_[i] = mu_[i];
    }
    mass_[K] = m.tail(K);
    if (mu_[K - 1] < 1e-290)
      throw std::invalid_argument(
          "lumped solver: weights underflow at this depth, reduce K");
    factorize();
  }

  double solve_largest() const {
    std::vector<double> x(k_ + 1, 0.0);
    for (int i = 1; i <= k_; ++i) x[i] = static_cast<double>(i) / k_;
    b_normalize(x);
    double rayleigh = quad_a(x);
    int settled = 0;
    for (int it = 0; it < kMaxPowerIterations; ++it) {
      std::vector<double> y = apply_a(x);
      solve_b(y);
      b_normalize(y);
      const double next = quad_a(y);
      x.swap(y);
      settled = std::abs(next - rayleigh) <= kRayleighTol * std::max(1.0, next)
                    ? settled + 1
                    : 0;
      rayleigh = next;
      if (settled >= 2) return rayleigh;
    }
    throw std::runtime_error("lumped solver: power iteration did not converge");
  }

 private:
  // B (coordinates 1..K): diag mu_{i-1}+mu_i (mu_K := 0), off-diag -mu_i
  void factorize() {
    diag_.assign(k_ + 1, 0.0);
    lower_.assign(k_ + 1, 0.0);
    std::vector<double> d(k_ + 1);
    for (int i = 1; i <= k_; ++i)
      d[i] = mu_[i - 1] + (i < k_ ? mu_[i] : 0.0);
    diag_[1] = d[1];
    for (int i = 2; i <= k_; ++i) {
      lower_[i] = -mu_[i - 1] / diag_[i - 1];
      diag_[i] = d[i] - mu_[i - 1] * mu_[i - 1] / diag_[i - 1];
    }
  }

  void solve_b(std::vector<double>& y) const {
    for (int i = 2; i <= k_; ++i) y[i] -= lower_[i] * y[i - 1];
    y[k_] /= diag_[k_];
    for (int i = k_ - 1; i >= 1; --i)
      y[i] = y[i] / diag_[i] - lower_[i + 1] * y[i + 1];
  }

  std::vector<double> apply_a(const std::vector<double>& x) const {
    std::vector<double> y(k_ + 1, 0.0);
    double s = 0.0;
    if (variance_form_)
      for (int i = 1; i <= k_; ++i) s += mass_[i] * x[i];
    for (int i = 1; i <= k_; ++i) y[i] = mass_[i] * (x[i] - s);
    return y;
  }

  double quad_a(const std::vector<double>& x) const {
    double s = 0.0, q = 0.0;
    for (int i = 1; i <= k_; ++i) {
      q += mass_[i] * x[i] * x[i];
      if (variance_form_) s += mass_[i] * x[i];
    }
    return q - s * s;
  }

  double quad_b(const std::vector<double>& x) const {
    double q = 0.0;
    for (int i = 0; i < k_; ++i) {
      const double d = x[i + 1] - x[i];
      q += mu_[i] * d * d;
    }
    return q;
  }

  void b_normalize(std::vector<double>& x) const {
    const double q = quad_b(x);
    if (!(q > 0.0))
      throw std::runtime_error("lumped solver: degenerate iterate");
    const double inv = 1.0 / std::sqrt(q);
    for (double& v : x) v *= inv;
  }

  int k_;
  bool variance_form_;
  std::vector<double> mu_;    // edge weights mu_0..mu_{K-1}
  std::vector<double> mass_;  // state masses, mass_[K] = tail(K)
  std::vector<double> diag_, lower_;  // LDL^T factors of B restricted
};

}  // namespace

double poincare_numeric(const TailMeasure& m, int K) {
  return 2.0 * LumpedPencil(m, K, /*variance_form=*/true).solve_largest();
}

double hardy_numeric(const TailMeasure& m, int K) {
  return LumpedPencil(m, K, /*variance_form=*/false).solve_largest();
}

}  // namespace bdfi
