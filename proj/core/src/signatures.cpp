#include "radpulse/signatures.hpp"

#include <cmath>
#include <string>

#include "radpulse/errors.hpp"
#include "radpulse/kahan.hpp"
#include "radpulse/series.hpp"

namespace radpulse {

namespace {

constexpr int kMaxMomentOrder = 6;

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

} // namespace

double moment_G(int m, PecletNumber pe, double kappa_d, const EigenBasis& basis,
                const Truncation& trunc) {
  if (m < 0 || m > kMaxMomentOrder) {
    throw OrderTooHigh("moment order " + std::to_string(m) + " outside [0, " +
                       std::to_string(kMaxMomentOrder) + "]");
  }
  if (!(kappa_d >= 0.0)) throw InvalidArgument("kappa_d must be >= 0");
  trunc.validate();
  const double p = pe.value();
  {
    const double scale = std::max(1.0, std::fabs(p));
    if (std::fabs(basis.pe.value() - p) > 1e-12 * scale) {
      throw BasisMismatch("basis Pe does not match moment_G Pe");
    }
  }
  const auto& mu = basis.mu;
  const auto& w = basis.norm_weight;
  const std::size_t limit = std::min<std::size_t>(basis.count(), trunc.max_terms);
  // Tail control on the mu^{-2m-3} envelope of the summand.
  std::size_t n = 1;
  for (std::size_t i = 0; i < limit; ++i) {
    if (std::pow(mu[i], -2.0 * m - 3.0) >= trunc.tail_tol) n = i + 1;
  }
  KahanAccumulator acc;
  for (std::size_t i = n; i-- > 0;) {
    const double q = 0.5 * p / mu[i];
    const double drift = 1.0 + q * q;                          // transport bracket
    const double decay = drift + kappa_d / (mu[i] * mu[i]);    // reaction-shifted bracket
    acc += std::pow(mu[i], -2.0 * m - 3.0) * std::sin(mu[i]) /
           (2.0 * w[i] * drift * std::pow(decay, m + 1));
  }
  return 2.0 * factorial(m) * std::exp(0.5 * p) * acc.result();
}

double moment_M(int m, const ModelParams& params, const EigenBasis& basis,
                const Truncation& trunc) {
  params.validate();
  if (params.injection_x0 != 0.0) {
    throw InvalidArgument("moments are defined for injection at x0 = 0");
  }
  const PecletNumber pe{params.peclet()};
  const double kd = params.kappa_d();
  const double td = params.diffusion_time();
  if (m == 0) {
    return params.pulse_amount * (1.0 - kd * moment_G(0, pe, kd, basis, trunc));
  }
  const double g_prev = moment_G(m - 1, pe, kd, basis, trunc);
  const double g_m = moment_G(m, pe, kd, basis, trunc);
  return params.pulse_amount * std::pow(td, m) * (m * g_prev - kd * g_m);
}

double two_term_tau_max(PecletNumber pe, double kappa_d, const EigenBasis& basis) {
  if (basis.count() < 2) throw BasisMismatch("two-term peak needs a basis with >= 2 modes");
  if (!(kappa_d >= 0.0)) throw InvalidArgument("kappa_d must be >= 0");
  const double p = pe.value();
  const double decay = 0.25 * p * p + kappa_d;
  const double mu1 = basis.mu[0], mu2 = basis.mu[1];
  const double term1 = mu1 * std::sin(mu1) / basis.norm_weight[0];
  const double term2 = mu2 * std::sin(mu2) / basis.norm_weight[1];
  const double arg = -(term2 * (decay + mu2 * mu2)) / (term1 * (decay + mu1 * mu1));
  if (!(arg > 0.0)) {
    throw DegenerateRatio("two-mode peak condition has no positive solution");
  }
  return std::log(arg) / (mu2 * mu2 - mu1 * mu1);
}

namespace {

PeakResult full_series_peak(PecletNumber pe, double kappa_d, const EigenBasis& basis,
                            const Truncation& trunc) {
  if (basis.count() < 100) {
    throw BasisMismatch("full-series peak search needs a basis with >= 100 modes");
  }
  const double lo_limit = trunc.min_time;
  const double hi_limit = 5.0;
  const auto slope = [&](double tau) {
    return normalized_exit_flow_derivative(pe, kappa_d, tau, basis, trunc);
  };
  // Blind bisection from min_time is unreliable: as tau -> 0 the series
  // cancels to ~0 and the floating-point sign of dJ/dtau is noise. The
  // two-mode tau_max lands near the true peak, where values are
  // well-conditioned, so the bracket is grown outward from that seed.
  double seed;
  try {
    seed = two_term_tau_max(pe, kappa_d, basis);
  } catch (const DegenerateRatio&) {
    seed = 0.15;
  }
  seed = std::min(std::max(seed, lo_limit), hi_limit);
  double lo = seed;
  while (lo > lo_limit && !(slope(lo) > 0.0)) lo = std::max(lo_limit, 0.5 * lo);
  double hi = seed;
  while (hi < hi_limit && !(slope(hi) < 0.0)) hi = std::min(hi_limit, 2.0 * hi);
  double flo = slope(lo);
  const double fhi = slope(hi);
  if (!(flo > 0.0) || !(fhi < 0.0)) {
    throw RootNotBracketed("dJ/dtau has no sign change in [min_time, 5]");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fmid = slope(mid);
    if (fmid > 0.0) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-12) break;
  }
  PeakResult r;
  r.method = PeakMethod::FullSeries;
  r.tau_max = 0.5 * (lo + hi);
  r.j_max = normalized_exit_flow(pe, kappa_d, r.tau_max, basis, trunc);
  r.peak_number = r.tau_max * r.j_max;
  return r;
}

} // namespace

PeakResult peak_characteristic(PecletNumber pe, double kappa_d, const EigenBasis& basis,
                               const Truncation& trunc, PeakMethod method) {
  trunc.validate();
  if (method == PeakMethod::FullSeries) return full_series_peak(pe, kappa_d, basis, trunc);
  PeakResult r;
  r.method = PeakMethod::TwoTerm;
  r.tau_max = two_term_tau_max(pe, kappa_d, basis);
  r.j_max = two_term_exit_flow(pe, kappa_d, r.tau_max, basis);
  r.peak_number = r.tau_max * r.j_max;
  return r;
}

double mean_exit_time(PecletNumber pe, double t_d) {
  if (!(t_d > 0.0)) throw InvalidArgument("t_d must be > 0");
  const double p = pe.value();
  if (std::fabs(p) < 1e-4) {
    // (e^{-Pe} - 1 + Pe)/Pe^2 = 1/2 - Pe/6 + Pe^2/24 - Pe^3/120 + Pe^4/720 - ...
    return t_d * (0.5 + p * (-1.0 / 6.0 + p * (1.0 / 24.0 + p * (-1.0 / 120.0 + p / 720.0))));
  }
  return t_d * (std::exp(-p) - 1.0 + p) / (p * p);
}

double moment_time_ratio(const ModelParams& params, const EigenBasis& basis,
                         const Truncation& trunc) {
  params.validate();
  if (params.rate_k != 0.0) {
    throw InvalidArgument("moment_time_ratio is defined for pure transport (k = 0)");
  }
  const double m0 = moment_M(0, params, basis, trunc);
  const double m1 = moment_M(1, params, basis, trunc);
  return (m1 / m0) / mean_exit_time(PecletNumber{params.peclet()}, params.diffusion_time());
}

SignatureSet compute_signatures(PecletNumber pe, double kappa_d, double t_d, double a,
                                const EigenBasis& basis, const Truncation& trunc,
                                PeakMethod method) {
  if (!(t_d > 0.0)) throw InvalidArgument("t_d must be > 0");
  if (!(a > 0.0)) throw InvalidArgument("a must be > 0");
  ModelParams params;
  params.length = 1.0;
  params.diffusivity = 1.0 / t_d;
  params.velocity = pe.value() * params.diffusivity;
  params.rate_k = kappa_d / t_d;
  params.pulse_amount = a;
  params.injection_x0 = 0.0;
  SignatureSet s;
  s.pe = pe.value();
  s.kappa_d = kappa_d;
  s.m0 = moment_M(0, params, basis, trunc);
  s.m1 = moment_M(1, params, basis, trunc);
  s.m2 = moment_M(2, params, basis, trunc);
  s.peak = peak_characteristic(pe, kappa_d, basis, trunc, method);
  s.t_mean = mean_exit_time(pe, t_d);
  s.t_moments = s.m0 != 0.0 ? s.m1 / s.m0 : 0.0;
  return s;
}

} // namespace radpulse
