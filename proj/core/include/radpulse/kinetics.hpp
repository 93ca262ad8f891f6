#pragma once

#include "radpulse/curve.hpp"
#include "radpulse/eigen.hpp"
#include "radpulse/params.hpp"

namespace radpulse {

// Inversion of exit-flow data for the kinetic constants, built on the
// identity j_k(t) = e^{-k t} * j_0(t): the rate constant is the slope of
// -ln(j_k/j_0) against t through the origin.

struct FitWindow {
  double t_lo = 0.0;
  double t_hi = 0.0;
};

enum class WeightingMode {
  ByBaseline, // weight ~ j_0(t), de-emphasizes the noisy tail
  Uniform,
};

struct RateEstimate {
  double k_hat = 0.0;     // clamped at 0; see negative_slope
  double raw_slope = 0.0; // unclamped least-squares slope
  double std_error = 0.0; // standard error of the slope
  int n_points_used = 0;
  FitWindow window;               // window actually applied
  bool negative_slope = false;    // raw slope was negative before clamping
  WeightingMode weighting = WeightingMode::ByBaseline;
};

// Least-squares slope of -ln(j_k/j_0) vs t through the origin over the
// window (default [0.05, 2] * t_d from the curves' metadata). Points where
// j_k <= 0 (possible in noisy tails) are skipped. Errors: GridMismatch when
// the two curves are not on the same time grid, NonPositiveBaseline when
// j_0 <= 0 inside the window, WindowTooNarrow when fewer than 3 usable
// points remain.
RateEstimate extract_rate_constant(const Curve& with_reaction, const Curve& baseline,
                                   const FitWindow& window = {},
                                   WeightingMode weighting = WeightingMode::ByBaseline);

enum class PecletMethod { MomentRatio };

struct PecletEstimate {
  double pe_hat = 0.0;
  double residual = 0.0; // |predicted m1/m0 - observed m1/m0|
  PecletMethod method = PecletMethod::MomentRatio;
};

// Inverts m1/m0 = t_d * G_0(Pe, 0), which is strictly decreasing in Pe, by
// bisection over the supported Pe range. Errors: NotPureTransport when
// |m0 - a|/a > 0.01 (the moment ratio only identifies Pe when k = 0),
// OutOfRange when the observed ratio is outside what the Pe range can
// produce.
PecletEstimate estimate_peclet(double m0, double m1, double t_d, double a);

// Converted fraction 1 - M_0/a = kappa_d * G_0(Pe, kappa_d).
double conversion(PecletNumber pe, double kappa_d, const EigenBasis& basis,
                  const Truncation& trunc = {});

} // namespace radpulse
