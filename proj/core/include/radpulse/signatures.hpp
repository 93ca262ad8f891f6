#pragma once

#include <vector>

#include "radpulse/eigen.hpp"
#include "radpulse/params.hpp"

namespace radpulse {

// Exit-flow signatures: time moments of j(L, t), the peak of the
// dimensionless curve J(tau), and the two mean-time definitions. All of
// them assume injection at x0 = 0.

// Dimensionless moment kernel G_m(Pe, kappa_d), m in [0, 6]; throws
// OrderTooHigh above the cap. The moments of j are
//   M_0 = a * (1 - kappa_d * G_0)
//   M_m = a * t_d^m * (m * G_{m-1} - kappa_d * G_m),  m >= 1.
double moment_G(int m, PecletNumber pe, double kappa_d, const EigenBasis& basis,
                const Truncation& trunc = {});

// M_m in the units of params (amount * time^m).
double moment_M(int m, const ModelParams& params, const EigenBasis& basis,
                const Truncation& trunc = {});

enum class PeakMethod {
  TwoTerm,    // closed-form tau_max from the first two modes
  FullSeries, // root of dJ/dtau, bracket seeded by the two-term tau_max
};

struct PeakResult {
  double tau_max = 0.0;     // location, units of t_d
  double j_max = 0.0;       // J(tau_max), dimensionless
  double peak_number = 0.0; // tau_max * j_max
  PeakMethod method = PeakMethod::FullSeries;
};

// Closed-form two-mode peak location; throws DegenerateRatio when the log
// argument is not positive.
double two_term_tau_max(PecletNumber pe, double kappa_d, const EigenBasis& basis);

// Peak of J. FullSeries requires basis.count() >= 100; throws
// RootNotBracketed when dJ/dtau has no sign change in [min_time, 5].
PeakResult peak_characteristic(PecletNumber pe, double kappa_d, const EigenBasis& basis,
                               const Truncation& trunc = {},
                               PeakMethod method = PeakMethod::FullSeries);

// Closed-form mean exit time t_d * (e^{-Pe} - 1 + Pe) / Pe^2 for pure
// transport (k = 0), with a series expansion used for |Pe| < 1e-4.
double mean_exit_time(PecletNumber pe, double t_d);

// (M_1/M_0) / mean_exit_time for a pure-transport configuration
// (params.rate_k must be 0). Identically 1 in exact arithmetic; evaluated
// to expose the truncation error of the moment route.
double moment_time_ratio(const ModelParams& params, const EigenBasis& basis,
                         const Truncation& trunc = {});

// One row of the signature table for a dimensionless configuration.
struct SignatureSet {
  double pe = 0.0;
  double kappa_d = 0.0;
  double m0 = 0.0, m1 = 0.0, m2 = 0.0; // moments for amount a at time scale t_d
  PeakResult peak;
  double t_mean = 0.0;    // closed-form mean exit time (k = 0 definition)
  double t_moments = 0.0; // M_1 / M_0
};

SignatureSet compute_signatures(PecletNumber pe, double kappa_d, double t_d, double a,
                                const EigenBasis& basis, const Truncation& trunc = {},
                                PeakMethod method = PeakMethod::FullSeries);

} // namespace radpulse
