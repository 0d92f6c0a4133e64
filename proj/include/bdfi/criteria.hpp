#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bdfi/hp.hpp"
#include "bdfi/measure.hpp"

namespace bdfi {

struct RhoChoice {
  double rho;  // min( ((1+C_mu)/C_mu)^{1/3}, 2 )
  double eps;  // 1/rho
};

RhoChoice rho_choice(double c_mu);

enum class CriterionKind { sufficient, necessary };
enum class Verdict { holds, evidence_of_failure, unresolved };
enum class Trend { flat, increasing, decreasing, mixed };

std::string verdict_name(Verdict v);
std::string trend_name(Trend t);

struct CriterionOptions {
  double trailing_window_frac = 0.1;
  int dyadic_lo = 7;   // checkpoints 2^lo .. 2^hi clipped to the series
  int dyadic_hi = 13;
  double divergence_ratio = 1.5;
};

// Scan trace for the sufficient (running sup of the criterion summand) or
// necessary (beta series) condition. Verdicts are three-valued on purpose: a
// finite scan can exhibit evidence, never prove a sup or limit infinite.
struct CriterionReport {
  CriterionKind kind;
  double p = 0.0;
  std::vector<std::pair<int, double>> series;  // (n, summand) or (n, beta_n)
  double running_sup = 0.0;
  int argmax = 0;
  Trend trend = Trend::mixed;
  double trend_first = 0.0;  // series value at first/last checkpoint
  double trend_last = 0.0;
  std::vector<int> checkpoints;
  Verdict verdict = Verdict::unresolved;
  std::optional<double> explicit_constant;  // sufficient kind, verdict holds
};

// summand_n = log(2/tail(n)) / H_p(tail(n-1)/tail(n)), n = 1..n_max.
// Verdict holds iff the running sup is flat over the trailing window and the
// Poincare criterion constant C_mu is resolved finite.
CriterionReport sufficiency_chat(const TailMeasure& m, double p, int n_max,
                                 const CriterionOptions& opts = {});

// beta_n = H_p(tail(tau_{n-1})/tail(tau_n))^{-1}
//          * tail(tau_{n-1})/tail(tau_n - 1) * log(2/tail(tau_n)).
// Requires tau_0 = 0 strictly increasing with max tau <= N.
CriterionReport necessity_scan(const TailMeasure& m, double p,
                               std::span<const int> tau,
                               const CriterionOptions& opts = {});

std::vector<int> tau_linear(int n_max);
std::vector<int> tau_geometric(double gamma, int cap);

struct AlphaResult {
  double value;
  std::vector<double> ladder;  // optimal g_0..g_k
  bool boundary_attained;      // minimizer pushed to the open g_{k-1} < rho face
  int sweeps;
};

// alpha_{x,rho}(k): infimum of sum_{s<k} H_p(g_{s+1}/g_s) mu_s over ladders
// 1 = g_0 <= ... <= g_{k-1} < rho <= x <= g_k. Convex in u_s = log g_s;
// solved by projected coordinate descent on the closure (g_k = x is optimal
// since H_p is increasing).
AlphaResult alpha_exact(const TailMeasure& m, double p, double x, double rho,
                        int k);

struct AlphaBounds {
  double cauchy_schwarz;  // (log x)^2 / sum_{s<k} 1/mu_s
  double last_step;       // H_p(x/rho) mu_{k-1}
};

AlphaBounds alpha_lower_bounds(const TailMeasure& m, double p, double x,
                               double rho, int k);

// Fully explicit p-LS constant assembled from the closed-form bounds:
// C = 64 C_mu (1+sqrt(rho))^2 + 4 C_rho with C_rho = (2 C2 + 3 C3)/(1-eps).
struct ExplicitConstant {
  double c_mu, chat, p;
  double rho, eps;
  double c2, c3;
  double c1_bound;  // C1 <= C2 + 2 C3
  double c_rho;
  double value;
};

ExplicitConstant explicit_pls_constant(double c_mu, double chat, double p);

}  // namespace bdfi
