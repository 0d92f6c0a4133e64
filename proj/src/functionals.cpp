#include "bdfi/functionals.hpp"

#include <algorithm>
#include <cmath>

namespace bdfi {

SimpleFunction::SimpleFunction(std::vector<std::pair<int, double>> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.empty())
    throw std::invalid_argument("SimpleFunction: need at least one breakpoint");
  if (breakpoints_.front().first != 0)
    throw std::invalid_argument("SimpleFunction: first breakpoint must be at 0");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i].second))
      throw std::invalid_argument("SimpleFunction: values must be finite");
    if (i > 0 && breakpoints_[i].first <= breakpoints_[i - 1].first)
      throw std::invalid_argument(
          "SimpleFunction: breakpoint indices must be strictly increasing");
  }
}

double SimpleFunction::operator()(int k) const {
  if (k < 0) throw std::out_of_range("SimpleFunction: negative index");
  auto it = std::upper_bound(
      breakpoints_.begin(), breakpoints_.end(), k,
      [](int key, const auto& bp) { return key < bp.first; });
  return std::prev(it)->second;
}

bool SimpleFunction::positive() const {
  return std::all_of(breakpoints_.begin(), breakpoints_.end(),
                     [](const auto& bp) { return bp.second > 0.0; });
}

bool SimpleFunction::non_decreasing() const {
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    if (breakpoints_[i].second < breakpoints_[i - 1].second) return false;
  return true;
}

SimpleFunction SimpleFunction::scaled(double a) const {
  auto bps = breakpoints_;
  for (auto& bp : bps) bp.second *= a;
  return SimpleFunction(std::move(bps));
}

SimpleFunction SimpleFunction::sqrt() const {
  if (!positive())
    throw std::invalid_argument("SimpleFunction::sqrt: requires positivity");
  auto bps = breakpoints_;
  for (auto& bp : bps) bp.second = std::sqrt(bp.second);
  return SimpleFunction(std::move(bps));
}

namespace {

void check_support(const TailMeasure& m, const SimpleFunction& f) {
  if (f.last_index() > m.truncation())
    throw std::invalid_argument(
        "simple function jumps beyond the measure truncation");
}

// E[phi(f)] decomposed into the exact finite sum over [0, L) plus the
// closed-form tail term phi(f(L)) * mu[L, inf).
template <typename Phi>
double expect(const TailMeasure& m, const SimpleFunction& f, Phi&& phi) {
  const int L = f.last_index();
  double s = phi(f.tail_value()) * m.tail(L);
  for (int k = L - 1; k >= 0; --k) s += phi(f(k)) * m.weight(k);
  return s;
}

}  // namespace

double entropy(const TailMeasure& m, const SimpleFunction& f) {
  if (!f.positive())
    throw std::invalid_argument("entropy: f must be strictly positive");
  check_support(m, f);
  const double ef = expect(m, f, [](double t) { return t; });
  const double log_ef = std::log(ef);
  // each Bregman term is nonnegative; clamp stray roundoff
  auto psi = [&](double t) {
    return std::max(0.0, t * (std::log(t) - log_ef) - (t - ef));
  };
  return expect(m, f, psi);
}

double variance(const TailMeasure& m, const SimpleFunction& f) {
  check_support(m, f);
  const double ef = expect(m, f, [](double t) { return t; });
  return expect(m, f, [&](double t) { return (t - ef) * (t - ef); });
}

double dirichlet(const TailMeasure& m, const SimpleFunction& f,
                 const SimpleFunction& g) {
  check_support(m, f);
  check_support(m, g);
  const int L = std::max(f.last_index(), g.last_index());
  double s = 0.0;
  for (int k = 0; k < L; ++k) {
    const double df = f(k + 1) - f(k);
    if (df == 0.0) continue;
    const double dg = g(k + 1) - g(k);
    if (dg == 0.0) continue;
    s += df * dg * m.weight(k);
  }
  return s;
}

EnergyResult energy_p(const TailMeasure& m, const SimpleFunction& f, double p,
                      RatioDomain domain) {
  if (!f.positive())
    throw std::invalid_argument("energy_p: f must be strictly positive");
  check_support(m, f);
  const HpParams params(p);
  const int L = f.last_index();
  double s = 0.0;
  bool extended = false;
  for (int k = 0; k < L; ++k) {
    const double ratio = f(k + 1) / f(k);
    if (ratio == 1.0) continue;
    if (ratio < 1.0) {
      if (domain == RatioDomain::strict)
        throw std::domain_error(
            "energy_p: ratio below 1 encountered in strict mode");
      extended = true;
    }
    s += f(k) * hp_value_extended(params, ratio) * m.weight(k);
  }
  return {s, extended};
}

double generator_apply(const TailMeasure& m, const SimpleFunction& f, int k) {
  if (k < 0 || k >= m.truncation())
    throw std::out_of_range("generator_apply: index beyond truncation");
  double v = f(k + 1) - f(k);
  if (k > 0)
    v -= std::exp(m.log_weight(k - 1) - m.log_weight(k)) * (f(k) - f(k - 1));
  return v;
}

SimpleFunction monotone_envelope(const SimpleFunction& f) {
  std::vector<std::pair<int, double>> out;
  const auto& bps = f.breakpoints();
  double g = bps.front().second;
  out.emplace_back(0, g);
  for (std::size_t i = 1; i < bps.size(); ++i) {
    const double jump = bps[i].second - bps[i - 1].second;
    if (jump > 0.0) {
      g += jump;
      out.emplace_back(bps[i].first, g);
    }
  }
  return SimpleFunction(std::move(out));
}

SimpleFunction random_simple_function(SplitMix64& rng) {
  const int n_bp = rng.uniform_int(1, 12);
  std::vector<std::pair<int, double>> bps;
  int idx = 0;
  const double lo = std::log(1e-2), hi = std::log(1e2);
  for (int i = 0; i < n_bp; ++i) {
    bps.emplace_back(idx, std::exp(rng.uniform(lo, hi)));
    idx += rng.uniform_int(1, 5);
  }
  return SimpleFunction(std::move(bps));
}

}  // namespace bdfi
