#include "bdfi/criteria.hpp"

#include <algorithm>
#include <cmath>

#include "bdfi/hardy.hpp"

namespace bdfi {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::evidence_of_failure: return "evidence_of_failure";
    case Verdict::unresolved: return "unresolved";
  }
  return "unresolved";
}

std::string trend_name(Trend t) {
  switch (t) {
    case Trend::flat: return "flat";
    case Trend::increasing: return "increasing";
    case Trend::decreasing: return "decreasing";
    case Trend::mixed: return "mixed";
  }
  return "mixed";
}

RhoChoice rho_choice(double c_mu) {
  if (!(c_mu > 0.0))
    throw std::invalid_argument("rho_choice: C_mu must be positive");
  const double rho = std::min(std::cbrt((1.0 + c_mu) / c_mu), 2.0);
  return {rho, 1.0 / rho};
}

namespace {

// Checkpoint positions inside [1, len]: the dyadic window when the series is
// long enough, otherwise quartiles, otherwise the endpoints.
std::vector<int> checkpoint_positions(int len, const CriterionOptions& opts) {
  std::vector<int> cp;
  for (int e = opts.dyadic_lo; e <= opts.dyadic_hi; ++e) {
    const int n = 1 << e;
    if (n <= len) cp.push_back(n);
  }
  if (cp.size() >= 2) return cp;
  cp.clear();
  if (len >= 8) {
    for (int q = 1; q <= 4; ++q) cp.push_back(len * q / 4);
  } else if (len >= 2) {
    cp = {1, len};
  }
  return cp;
}

Trend checkpoint_trend(const std::vector<std::pair<int, double>>& series,
                       const std::vector<int>& cp, double& first,
                       double& last) {
  bool inc = true, dec = true;
  for (std::size_t i = 1; i < cp.size(); ++i) {
    const double prev = series[cp[i - 1] - 1].second;
    const double cur = series[cp[i] - 1].second;
    if (!(cur > prev)) inc = false;
    if (!(cur < prev)) dec = false;
  }
  first = series[cp.front() - 1].second;
  last = series[cp.back() - 1].second;
  if (inc) return Trend::increasing;
  if (dec) return Trend::decreasing;
  return Trend::mixed;
}

}  // namespace

CriterionReport sufficiency_chat(const TailMeasure& m, double p, int n_max,
                                 const CriterionOptions& opts) {
  if (n_max < 1 || n_max > m.truncation())
    throw std::invalid_argument("sufficiency_chat: need 1 <= n_max <= N");
  if (m.log_tail(n_max) == kNegInf)
    throw std::invalid_argument(
        "sufficiency_chat: tail vanishes before n_max (custom truncation)");
  const HpParams params(p);

  CriterionReport rep;
  rep.kind = CriterionKind::sufficient;
  rep.p = params.p;
  rep.series.reserve(n_max);
  double best = kNegInf;
  for (int n = 1; n <= n_max; ++n) {
    const double log_num = std::log(std::log(2.0) - m.log_tail(n));
    const double dlog = m.log_tail(n - 1) - m.log_tail(n);
    if (!(dlog > 0.0))
      throw std::runtime_error(
          "sufficiency_chat: non-decreasing tail detected (corrupt measure)");
    const double v = std::exp(log_num - log_hp_value(params, dlog));
    rep.series.emplace_back(n, v);
    if (v > best) {
      best = v;
      rep.argmax = n;
    }
  }
  rep.running_sup = best;

  const int window_start =
      std::max(1, static_cast<int>((1.0 - opts.trailing_window_frac) * n_max));
  const bool sup_flat = rep.argmax <= window_start;

  rep.checkpoints = checkpoint_positions(n_max, opts);
  if (rep.checkpoints.size() >= 2) {
    // trend of the running sup at the checkpoints
    std::vector<std::pair<int, double>> running(n_max);
    double s = kNegInf;
    for (int n = 1; n <= n_max; ++n) {
      s = std::max(s, rep.series[n - 1].second);
      running[n - 1] = {n, s};
    }
    rep.trend =
        checkpoint_trend(running, rep.checkpoints, rep.trend_first,
                         rep.trend_last);
  }
  if (sup_flat) rep.trend = Trend::flat;

  if (sup_flat) {
    const CmuResult cm = c_mu(m);
    if (cm.resolved && std::isfinite(cm.value)) {
      rep.verdict = Verdict::holds;
      rep.explicit_constant =
          explicit_pls_constant(cm.value, rep.running_sup, params.p).value;
    } else {
      rep.verdict = Verdict::unresolved;
    }
  } else if (rep.checkpoints.size() >= 2 && rep.trend == Trend::increasing &&
             rep.trend_last > opts.divergence_ratio * rep.trend_first) {
    rep.verdict = Verdict::evidence_of_failure;
  } else {
    rep.verdict = Verdict::unresolved;
  }
  return rep;
}

CriterionReport necessity_scan(const TailMeasure& m, double p,
                               std::span<const int> tau,
                               const CriterionOptions& opts) {
  if (tau.size() < 2 || tau[0] != 0)
    throw std::invalid_argument("necessity_scan: tau must start at 0");
  for (std::size_t i = 1; i < tau.size(); ++i)
    if (tau[i] <= tau[i - 1])
      throw std::invalid_argument("necessity_scan: tau must be increasing");
  if (tau.back() > m.truncation())
    throw std::invalid_argument("necessity_scan: tau exceeds truncation");
  if (m.log_tail(tau.back()) == kNegInf)
    throw std::invalid_argument(
        "necessity_scan: tail vanishes on tau (custom truncation)");
  const HpParams params(p);

  CriterionReport rep;
  rep.kind = CriterionKind::necessary;
  rep.p = params.p;
  const int len = static_cast<int>(tau.size()) - 1;
  rep.series.reserve(len);
  double best = kNegInf;
  for (int n = 1; n <= len; ++n) {
    const double lt_prev = m.log_tail(tau[n - 1]);
    const double lt_cur = m.log_tail(tau[n]);
    const double dlog = lt_prev - lt_cur;
    const double log_num = std::log(std::log(2.0) - lt_cur);
    const double log_mid = lt_prev - m.log_tail(tau[n] - 1);
    const double v =
        std::exp(log_num + log_mid - log_hp_value(params, dlog));
    rep.series.emplace_back(n, v);
    if (v > best) {
      best = v;
      rep.argmax = n;
    }
  }
  rep.running_sup = best;

  rep.checkpoints = checkpoint_positions(len, opts);
  if (rep.checkpoints.size() < 2) {
    rep.trend = Trend::mixed;
    rep.verdict = Verdict::unresolved;
    return rep;
  }
  rep.trend = checkpoint_trend(rep.series, rep.checkpoints, rep.trend_first,
                               rep.trend_last);
  if (rep.trend == Trend::increasing &&
      rep.trend_last > opts.divergence_ratio * rep.trend_first)
    rep.verdict = Verdict::evidence_of_failure;
  else if (rep.trend == Trend::decreasing)
    rep.verdict = Verdict::holds;
  else
    rep.verdict = Verdict::unresolved;
  return rep;
}

std::vector<int> tau_linear(int n_max) {
  if (n_max < 1) throw std::invalid_argument("tau_linear: n_max must be >= 1");
  std::vector<int> tau(n_max + 1);
  for (int i = 0; i <= n_max; ++i) tau[i] = i;
  return tau;
}

std::vector<int> tau_geometric(double gamma, int cap) {
  if (!(gamma > 1.0))
    throw std::invalid_argument("tau_geometric: gamma must exceed 1");
  if (cap < 1) throw std::invalid_argument("tau_geometric: cap must be >= 1");
  std::vector<int> tau{0};
  double g = 1.0;
  while (true) {
    g *= gamma;
    const int next = std::max(tau.back() + 1,
                              static_cast<int>(std::ceil(g)));
    if (next > cap) break;
    tau.push_back(next);
  }
  return tau;
}

namespace {

double hp_of_log_gap(const HpParams& params, double dlog) {
  if (dlog <= 0.0) return 0.0;
  return std::exp(log_hp_value(params, dlog));
}

double ladder_objective(const HpParams& params, const std::vector<double>& u,
                        const TailMeasure& m) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i)
    s += hp_of_log_gap(params, u[i + 1] - u[i]) *
         m.weight(static_cast<int>(i));
  return s;
}

}  // namespace

AlphaResult alpha_exact(const TailMeasure& m, double p, double x, double rho,
                        int k) {
  if (!(rho > 1.0) || !(x >= rho))
    throw std::invalid_argument("alpha_exact: need 1 < rho <= x");
  if (k < 1 || k > m.truncation())
    throw std::invalid_argument("alpha_exact: need 1 <= k <= N");
  const HpParams params(p);
  const double log_rho = std::log(rho);
  const double log_x = std::log(x);

  std::vector<double> u(k + 1, 0.0);
  u[k] = log_x;
  for (int s = 1; s < k; ++s) u[s] = log_rho * s / k;

  AlphaResult res;
  res.sweeps = 0;
  if (k > 1) {
    constexpr int kMaxSweeps = 2000;
    double move = kInf;
    while (move > 1e-13) {
      if (++res.sweeps > kMaxSweeps)
        throw std::runtime_error("alpha_exact: coordinate descent stalled");
      move = 0.0;
      for (int s = 1; s < k; ++s) {
        const double lo = u[s - 1];
        const double hi = std::min(u[s + 1], log_rho);
        const double mu_prev = m.weight(s - 1);
        const double mu_cur = m.weight(s);
        auto phi = [&](double v) {
          return hp_of_log_gap(params, v - u[s - 1]) * mu_prev +
                 hp_of_log_gap(params, u[s + 1] - v) * mu_cur;
        };
        const double v = golden_section_min(phi, lo, hi, 1e-15);
        move = std::max(move, std::abs(v - u[s]));
        u[s] = v;
      }
    }
  }
  res.value = ladder_objective(params, u, m);
  res.boundary_attained = k > 1 && u[k - 1] >= log_rho - 1e-9;
  res.ladder.resize(k + 1);
  for (int s = 0; s <= k; ++s) res.ladder[s] = std::exp(u[s]);
  res.ladder[0] = 1.0;
  res.ladder[k] = x;
  return res;
}

AlphaBounds alpha_lower_bounds(const TailMeasure& m, double p, double x,
                               double rho, int k) {
  if (!(rho > 1.0) || !(x >= rho))
    throw std::invalid_argument("alpha_lower_bounds: need 1 < rho <= x");
  if (k < 1 || k > m.truncation())
    throw std::invalid_argument("alpha_lower_bounds: need 1 <= k <= N");
  const HpParams params(p);
  double log_inv_sum = kNegInf;
  for (int s = 0; s < k; ++s)
    log_inv_sum = log_add_exp(log_inv_sum, -m.log_weight(s));
  const double lx = std::log(x);
  AlphaBounds b;
  b.cauchy_schwarz = std::exp(2.0 * std::log(lx) - log_inv_sum);
  b.last_step = hp_value(params, std::max(1.0, x / rho)) * m.weight(k - 1);
  return b;
}

ExplicitConstant explicit_pls_constant(double c_mu, double chat, double p) {
  if (!std::isfinite(c_mu) || !(c_mu > 0.0))
    throw std::invalid_argument("explicit_pls_constant: C_mu must be finite");
  if (!std::isfinite(chat) || chat < 0.0)
    throw std::invalid_argument(
        "explicit_pls_constant: sufficient condition constant not finite");
  const HpParams params(p);
  const RhoChoice rc = rho_choice(c_mu);
  const double rho = rc.rho, eps = rc.eps;
  const double rho3 = rho * rho * rho;
  const double h_rho = hp_value(params, rho);
  const double h_rho3 = hp_value(params, rho3);
  const double hd_rho = hp_derivative(params, rho);
  const double hd_rho3 = hp_derivative(params, rho3);
  const double log_rho = std::log(rho);

  ExplicitConstant e;
  e.c_mu = c_mu;
  e.chat = chat;
  e.p = params.p;
  e.rho = rho;
  e.eps = eps;
  e.c2 = (1.0 + c_mu) * rho / (rho - 1.0) *
         std::max({h_rho3 / h_rho, rho * rho * hd_rho3 / hd_rho,
                   std::pow(rho, 2.0 / params.p)}) *
         chat;
  e.c3 = c_mu * (rho3 / log_rho +
                 2.0 *
                     std::max({1.0, rho * log_rho / h_rho,
                               (1.0 + log_rho) / hd_rho}) *
                     rho * rho);
  e.c1_bound = e.c2 + 2.0 * e.c3;
  e.c_rho = (2.0 * e.c2 + 3.0 * e.c3) / (1.0 - eps);
  const double sq = 1.0 + std::sqrt(rho);
  e.value = 64.0 * c_mu * sq * sq + 4.0 * e.c_rho;
  return e;
}

}  // namespace bdfi
