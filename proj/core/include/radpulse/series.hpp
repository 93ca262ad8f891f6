#pragma once

#include <span>
#include <vector>

#include "radpulse/curve.hpp"
#include "radpulse/eigen.hpp"
#include "radpulse/params.hpp"

namespace radpulse {

// Eigenfunction-series solution of
//   dc/dt = D c_xx - v c_x - k c            on (0, L)
//   c v - D c_x = 0 at x = 0,  c = 0 at x = L
//   c(x, 0) = a * delta(x - x0)
// All entry points refuse t < trunc.min_time * t_d (TimeTooSmall) and
// require basis.pe to match the Peclet number they are called with
// (BasisMismatch).

// c(x, t), amount/length.
double concentration(const ModelParams& params, const EigenBasis& basis, double x, double t,
                     const Truncation& trunc = {});

// Outlet flux j(L, t) = c v - D c_x evaluated at x = L, amount/time.
double exit_flow(const ModelParams& params, const EigenBasis& basis, double t,
                 const Truncation& trunc = {});

// Held-up amount I(t) = integral of c over (0, L).
double holdup(const ModelParams& params, const EigenBasis& basis, double t,
              const Truncation& trunc = {});

// Dimensionless outlet flux J(tau) = j*L/(a*D) for injection at x0 = 0,
// tau = t/t_d, kappa_d = k*t_d.
double normalized_exit_flow(PecletNumber pe, double kappa_d, double tau, const EigenBasis& basis,
                            const Truncation& trunc = {});

// dJ/dtau, termwise-exact derivative of the series above.
double normalized_exit_flow_derivative(PecletNumber pe, double kappa_d, double tau,
                                       const EigenBasis& basis, const Truncation& trunc = {});

// J(tau) truncated to exactly the first two modes (basis.count() >= 2).
double two_term_exit_flow(PecletNumber pe, double kappa_d, double tau, const EigenBasis& basis);

// Batch samplers; times must be strictly increasing and all >= the
// min_time floor. The returned Curve carries full metadata.
Curve sample_exit_flow(const ModelParams& params, const EigenBasis& basis,
                       std::span<const double> times, const Truncation& trunc = {});
Curve sample_holdup(const ModelParams& params, const EigenBasis& basis,
                    std::span<const double> times, const Truncation& trunc = {});
Curve sample_concentration(const ModelParams& params, const EigenBasis& basis, double x,
                           std::span<const double> times, const Truncation& trunc = {});
Curve sample_normalized_exit_flow(PecletNumber pe, double kappa_d, const EigenBasis& basis,
                                  std::span<const double> taus, const Truncation& trunc = {});

// Uniform grid of n points on [lo, hi] (n >= 2), or log-spaced when log_spacing.
std::vector<double> make_time_grid(double lo, double hi, int n, bool log_spacing = false);

} // namespace radpulse
