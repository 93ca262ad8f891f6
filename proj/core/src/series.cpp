#include "radpulse/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "radpulse/errors.hpp"
#include "radpulse/kahan.hpp"

namespace radpulse {

void ModelParams::validate() const {
  if (!(diffusivity > 0.0)) throw InvalidArgument("diffusivity must be > 0");
  if (!(length > 0.0)) throw InvalidArgument("length must be > 0");
  if (!(pulse_amount > 0.0)) throw InvalidArgument("pulse_amount must be > 0");
  if (!(rate_k >= 0.0)) throw InvalidArgument("rate_k must be >= 0");
  if (!(injection_x0 >= 0.0 && injection_x0 < length)) {
    throw InvalidArgument("injection_x0 must lie in [0, L)");
  }
  PecletNumber{peclet()}; // throws InvalidPeclet outside the supported range
}

void Truncation::validate() const {
  if (max_terms < 1 || max_terms > kMaxTermsCap) {
    throw InvalidArgument("max_terms must be in [1, " + std::to_string(kMaxTermsCap) + "]");
  }
  if (!(tail_tol > 0.0)) throw InvalidArgument("tail_tol must be > 0");
  if (!(min_time > 0.0)) throw InvalidArgument("min_time must be > 0");
}

namespace {

void check_basis(const EigenBasis& basis, double pe) {
  const double scale = std::max(1.0, std::fabs(pe));
  if (std::fabs(basis.pe.value() - pe) > 1e-12 * scale) {
    throw BasisMismatch("basis built for Pe = " + std::to_string(basis.pe.value()) +
                        ", called with Pe = " + std::to_string(pe));
  }
  if (basis.count() == 0) throw BasisMismatch("empty basis");
}

void check_tau(double tau, const Truncation& trunc) {
  if (!(tau >= trunc.min_time)) {
    throw TimeTooSmall("t/t_d = " + std::to_string(tau) + " below min_time floor " +
                       std::to_string(trunc.min_time));
  }
}

// Largest index (1-based count) whose term bound still reaches tail_tol.
// The bound envelope mu^p * exp(-mu^2 tau) is not monotone at small tau, so
// the whole admissible range is scanned instead of stopping at the first dip.
template <class BoundFn>
std::size_t term_count(const EigenBasis& basis, const Truncation& trunc, BoundFn bound) {
  const std::size_t limit = std::min<std::size_t>(basis.count(), trunc.max_terms);
  std::size_t n = 1; // always keep the leading mode
  for (std::size_t i = 0; i < limit; ++i) {
    if (bound(i) >= trunc.tail_tol) n = i + 1;
  }
  return n;
}

// Sum of term(i) for i = n-1 .. 0, smallest terms first.
template <class TermFn>
double sum_descending(std::size_t n, TermFn term) {
  KahanAccumulator acc;
  for (std::size_t i = n; i-- > 0;) acc += term(i);
  return acc.result();
}

struct SeriesSetup {
  double tau;
  double kappa_d;
  double pe;
};

SeriesSetup dimensional_setup(const ModelParams& params, const EigenBasis& basis, double t,
                              const Truncation& trunc) {
  params.validate();
  trunc.validate();
  const double pe = params.peclet();
  check_basis(basis, pe);
  const double tau = t / params.diffusion_time();
  check_tau(tau, trunc);
  return {tau, params.kappa_d(), pe};
}

} // namespace

double concentration(const ModelParams& params, const EigenBasis& basis, double x, double t,
                     const Truncation& trunc) {
  const auto s = dimensional_setup(params, basis, t, trunc);
  if (!(x >= 0.0 && x <= params.length)) throw InvalidArgument("x must lie in [0, L]");
  const double xi = x / params.length;
  const double xi0 = params.injection_x0 / params.length;
  const auto& mu = basis.mu;
  const auto& w = basis.norm_weight;
  const std::size_t n = term_count(basis, trunc, [&](std::size_t i) {
    return std::exp(-mu[i] * mu[i] * s.tau) / w[i];
  });
  const double series = sum_descending(n, [&](std::size_t i) {
    return std::sin(mu[i] * (1.0 - xi0)) * std::sin(mu[i] * (1.0 - xi)) / w[i] *
           std::exp(-mu[i] * mu[i] * s.tau);
  });
  const double prefactor = params.pulse_amount / params.length *
                           std::exp(0.5 * s.pe * (xi - xi0) - (0.25 * s.pe * s.pe + s.kappa_d) * s.tau);
  return prefactor * series;
}

double exit_flow(const ModelParams& params, const EigenBasis& basis, double t,
                 const Truncation& trunc) {
  const auto s = dimensional_setup(params, basis, t, trunc);
  const double xi0 = params.injection_x0 / params.length;
  const auto& mu = basis.mu;
  const auto& w = basis.norm_weight;
  const std::size_t n = term_count(basis, trunc, [&](std::size_t i) {
    return mu[i] / w[i] * std::exp(-mu[i] * mu[i] * s.tau);
  });
  const double series = sum_descending(n, [&](std::size_t i) {
    return mu[i] * std::sin(mu[i] * (1.0 - xi0)) / w[i] * std::exp(-mu[i] * mu[i] * s.tau);
  });
  const double prefactor = params.pulse_amount * params.diffusivity / params.length *
                           std::exp(0.5 * s.pe * (1.0 - xi0) - (0.25 * s.pe * s.pe + s.kappa_d) * s.tau);
  return prefactor * series;
}

double holdup(const ModelParams& params, const EigenBasis& basis, double t,
              const Truncation& trunc) {
  const auto s = dimensional_setup(params, basis, t, trunc);
  const double xi0 = params.injection_x0 / params.length;
  const auto& mu = basis.mu;
  const auto& w = basis.norm_weight;
  const std::size_t n = term_count(basis, trunc, [&](std::size_t i) {
    return std::exp(-mu[i] * mu[i] * s.tau) / (mu[i] * w[i]);
  });
  const double series = sum_descending(n, [&](std::size_t i) {
    const double q = 0.5 * s.pe / mu[i];
    return std::sin(mu[i] * (1.0 - xi0)) / (mu[i] * w[i] * (1.0 + q * q)) *
           std::exp(-mu[i] * mu[i] * s.tau);
  });
  const double prefactor = params.pulse_amount *
                           std::exp(0.5 * s.pe * (1.0 - xi0) - (0.25 * s.pe * s.pe + s.kappa_d) * s.tau);
  return prefactor * series;
}

namespace {

double normalized_flow_series(const EigenBasis& basis, double tau, const Truncation& trunc) {
  const auto& mu = basis.mu;
  const auto& w = basis.norm_weight;
  const std::size_t n = term_count(basis, trunc, [&](std::size_t i) {
    return mu[i] / w[i] * std::exp(-mu[i] * mu[i] * tau);
  });
  return sum_descending(n, [&](std::size_t i) {
    return mu[i] * std::sin(mu[i]) / w[i] * std::exp(-mu[i] * mu[i] * tau);
  });
}

} // namespace

double normalized_exit_flow(PecletNumber pe, double kappa_d, double tau, const EigenBasis& basis,
                            const Truncation& trunc) {
  trunc.validate();
  check_basis(basis, pe.value());
  check_tau(tau, trunc);
  if (!(kappa_d >= 0.0)) throw InvalidArgument("kappa_d must be >= 0");
  const double p = pe.value();
  return std::exp(0.5 * p - (0.25 * p * p + kappa_d) * tau) * normalized_flow_series(basis, tau, trunc);
}

double normalized_exit_flow_derivative(PecletNumber pe, double kappa_d, double tau,
                                       const EigenBasis& basis, const Truncation& trunc) {
  trunc.validate();
  check_basis(basis, pe.value());
  check_tau(tau, trunc);
  if (!(kappa_d >= 0.0)) throw InvalidArgument("kappa_d must be >= 0");
  const double p = pe.value();
  const double decay = 0.25 * p * p + kappa_d;
  const auto& mu = basis.mu;
  const auto& w = basis.norm_weight;
  const std::size_t n = term_count(basis, trunc, [&](std::size_t i) {
    return mu[i] * (decay + mu[i] * mu[i]) / w[i] * std::exp(-mu[i] * mu[i] * tau);
  });
  const double series = sum_descending(n, [&](std::size_t i) {
    return mu[i] * std::sin(mu[i]) / w[i] * (decay + mu[i] * mu[i]) *
           std::exp(-mu[i] * mu[i] * tau);
  });
  return -std::exp(0.5 * p - decay * tau) * series;
}

double two_term_exit_flow(PecletNumber pe, double kappa_d, double tau, const EigenBasis& basis) {
  check_basis(basis, pe.value());
  if (basis.count() < 2) throw BasisMismatch("two-term evaluation needs a basis with >= 2 modes");
  if (!(kappa_d >= 0.0)) throw InvalidArgument("kappa_d must be >= 0");
  if (!(tau > 0.0)) throw TimeTooSmall("tau must be > 0");
  const double p = pe.value();
  double series = 0.0;
  for (std::size_t i = 2; i-- > 0;) {
    series += basis.mu[i] * std::sin(basis.mu[i]) / basis.norm_weight[i] *
              std::exp(-basis.mu[i] * basis.mu[i] * tau);
  }
  return std::exp(0.5 * p - (0.25 * p * p + kappa_d) * tau) * series;
}

namespace {

void check_grid(std::span<const double> times) {
  if (times.empty()) throw InvalidArgument("time grid is empty");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw InvalidArgument("time grid not strictly increasing");
  }
}

Curve meta_curve(CurveKind kind, const ModelParams& params) {
  Curve c;
  c.kind = kind;
  c.pe = params.peclet();
  c.kappa_d = params.kappa_d();
  c.t_d = params.diffusion_time();
  c.x0 = params.injection_x0;
  c.a = params.pulse_amount;
  return c;
}

} // namespace

Curve sample_exit_flow(const ModelParams& params, const EigenBasis& basis,
                       std::span<const double> times, const Truncation& trunc) {
  check_grid(times);
  Curve c = meta_curve(CurveKind::ExitFlow, params);
  c.t.assign(times.begin(), times.end());
  c.y.resize(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) c.y[i] = exit_flow(params, basis, times[i], trunc);
  return c;
}

Curve sample_holdup(const ModelParams& params, const EigenBasis& basis,
                    std::span<const double> times, const Truncation& trunc) {
  check_grid(times);
  Curve c = meta_curve(CurveKind::Holdup, params);
  c.t.assign(times.begin(), times.end());
  c.y.resize(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) c.y[i] = holdup(params, basis, times[i], trunc);
  return c;
}

Curve sample_concentration(const ModelParams& params, const EigenBasis& basis, double x,
                           std::span<const double> times, const Truncation& trunc) {
  check_grid(times);
  Curve c = meta_curve(CurveKind::Concentration, params);
  c.t.assign(times.begin(), times.end());
  c.y.resize(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    c.y[i] = concentration(params, basis, x, times[i], trunc);
  }
  return c;
}

Curve sample_normalized_exit_flow(PecletNumber pe, double kappa_d, const EigenBasis& basis,
                                  std::span<const double> taus, const Truncation& trunc) {
  check_grid(taus);
  Curve c;
  c.kind = CurveKind::NormalizedExitFlow;
  c.pe = pe.value();
  c.kappa_d = kappa_d;
  c.t_d = 1.0;
  c.x0 = 0.0;
  c.a = 1.0;
  c.t.assign(taus.begin(), taus.end());
  c.y.resize(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    c.y[i] = normalized_exit_flow(pe, kappa_d, taus[i], basis, trunc);
  }
  return c;
}

std::vector<double> make_time_grid(double lo, double hi, int n, bool log_spacing) {
  if (n < 2) throw InvalidArgument("time grid needs at least 2 points");
  if (!(hi > lo)) throw InvalidArgument("time grid needs hi > lo");
  if (log_spacing && !(lo > 0.0)) throw InvalidArgument("log grid needs lo > 0");
  std::vector<double> t(static_cast<std::size_t>(n));
  if (log_spacing) {
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) t[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    t.front() = lo;
    t.back() = hi;
  } else {
    for (int i = 0; i < n; ++i) t[i] = lo + (hi - lo) * i / (n - 1);
  }
  return t;
}

} // namespace radpulse
