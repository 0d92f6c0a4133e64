#include "bdfi/hp.hpp"

#include <algorithm>
#include <cmath>

namespace bdfi {

HpParams::HpParams(double p_in) {
  if (!(p_in > 0.0) || !(p_in <= 1.0))
    throw std::invalid_argument("HpParams: p must lie in (0, 1]");
  if (p_in > 1.0 - 1e-8) {
    p = 1.0;
    p_conj = std::numeric_limits<double>::quiet_NaN();
    is_one = true;
  } else {
    p = p_in;
    p_conj = p_in / (p_in - 1.0);
    is_one = false;
  }
}

double log_hp_value(const HpParams& params, double log_x) {
  if (!(log_x >= 0.0))
    throw std::domain_error("log_hp_value: requires x >= 1");
  if (log_x == 0.0) return kNegInf;
  if (params.is_one) {
    // (x-1) log x
    return log_expm1(log_x) + std::log(log_x);
  }
  const double a = 1.0 / params.p;       // > 1
  const double b = 1.0 - a;              // = 1/p' < 0
  // H_p = (-pp') (e^{aL}-1)(1 - e^{bL}) with -pp' = p^2/(1-p) > 0
  const double log_c = 2.0 * std::log(params.p) - std::log1p(-params.p);
  return log_c + log_expm1(a * log_x) + log1m_exp(b * log_x);
}

double hp_value(const HpParams& params, double x) {
  if (!(x >= 1.0)) throw std::domain_error("hp_value: requires x >= 1");
  if (x == 1.0) return 0.0;
  return std::exp(log_hp_value(params, std::log(x)));
}

double hp_value_extended(const HpParams& params, double x) {
  if (!(x > 0.0)) throw std::domain_error("hp_value_extended: requires x > 0");
  if (x >= 1.0) return hp_value(params, x);
  const double log_x = std::log(x);  // < 0
  if (params.is_one) return (x - 1.0) * log_x;
  const double a = 1.0 / params.p;
  const double b = 1.0 - a;
  const double c = params.p * params.p / (1.0 - params.p);  // -pp'
  // (e^{aL}-1) < 0 and (1 - e^{bL}) < 0 for L < 0
  return c * std::expm1(a * log_x) * (-std::expm1(b * log_x));
}

double hp_derivative(const HpParams& params, double x) {
  if (!(x >= 1.0)) throw std::domain_error("hp_derivative: requires x >= 1");
  if (params.is_one) return std::log(x) + 1.0 - 1.0 / x;
  const double p = params.p, pc = params.p_conj;
  // from H_p = pp'(x - x^{1/p} - x^{1/p'} + 1)
  return p * pc - pc * std::pow(x, 1.0 / p - 1.0) -
         p * std::pow(x, 1.0 / pc - 1.0);
}

namespace {

constexpr double kSlack = 1e-12;  // roundoff allowance in property checks

void update(HpPropertyItem& item, double lhs, double rhs, double x) {
  const double margin = lhs - rhs;
  if (margin < item.worst_margin) {
    item.worst_margin = margin;
    item.worst_x = x;
  }
  if (lhs < rhs - kSlack * std::max({std::abs(lhs), std::abs(rhs), 1.0}))
    item.holds = false;
}

}  // namespace

HpPropertyReport verify_hp_properties(const HpParams& params, double lambda,
                                      double c, std::span<const double> grid) {
  if (!(lambda > 1.0)) throw std::invalid_argument("lambda must exceed 1");
  if (!(c > 1.0)) throw std::invalid_argument("c must exceed 1");
  if (grid.empty()) throw std::invalid_argument("grid must be nonempty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= lambda))
      throw std::invalid_argument("grid points must be >= lambda");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw std::invalid_argument("grid must be strictly increasing");
  }

  HpPropertyReport rep;
  std::vector<double> h(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    h[i] = hp_value(params, grid[i]);

  // (i) increasing, midpoint-convex
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    update(rep.monotone_convex, h[i + 1], h[i], grid[i + 1]);
    const double mid = 0.5 * (grid[i] + grid[i + 1]);
    update(rep.monotone_convex, 0.5 * (h[i] + h[i + 1]),
           hp_value(params, mid), mid);
  }

  // (ii) (log x)^2 lower bound
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double lx = std::log(grid[i]);
    update(rep.log_sq_lower, h[i], lx * lx, grid[i]);
  }

  // (iii) x log x scaled lower bound
  const double h_l = hp_value(params, lambda);
  const double hd_l = hp_derivative(params, lambda);
  const double f3 = std::min(
      {h_l / (lambda * std::log(lambda)), hd_l / (1.0 + std::log(lambda)),
       1.0});
  for (std::size_t i = 0; i < grid.size(); ++i)
    update(rep.xlogx_lower, h[i], grid[i] * std::log(grid[i]) * f3, grid[i]);

  // (iv) H_p(xc) scaled lower bound
  const double f4 =
      std::min({h_l / hp_value(params, lambda * c),
                hd_l / (c * hp_derivative(params, lambda * c)),
                std::pow(c, -1.0 / params.p)});
  for (std::size_t i = 0; i < grid.size(); ++i)
    update(rep.scaled_lower, h[i], hp_value(params, grid[i] * c) * f4,
           grid[i]);

  // (v) H_p(y)/y <= lambda/(lambda-1) H_p(x)/x for y <= x
  const double slope_c = lambda / (lambda - 1.0);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i; j < grid.size(); ++j)
      update(rep.slope_ratio, slope_c * h[j] / grid[j], h[i] / grid[i],
             grid[i]);

  return rep;
}

IntegralBound integral_bound_check(double p, double lambda) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("integral_bound_check: p must lie in (0,1)");
  if (!(lambda > 1.0))
    throw std::invalid_argument("integral_bound_check: lambda must exceed 1");
  if (lambda / p > 700.0)
    throw std::invalid_argument(
        "integral_bound_check: integrand overflows binary64");

  const double rhs = p / (1.0 - p) * std::exp(lambda / p) / lambda;
  auto integrand = [p](double s) { return std::expm1(s / p) / (s * s); };
  QuadratureResult q =
      integrate_adaptive(integrand, 1.0, lambda, 1e-10 * rhs, 1e-10);
  return {q.value, rhs, q.abs_error, q.value <= rhs};
}

}  // namespace bdfi
