#pragma once

namespace radpulse {

// Physical configuration of one pulse experiment. Units are SI-agnostic:
// any consistent (length, time, amount) system works, and all outputs come
// out in the same system.
struct ModelParams {
  double diffusivity = 1.0;  // D > 0, length^2/time
  double velocity = 0.0;     // v, signed, length/time
  double rate_k = 0.0;       // first-order loss rate k >= 0, 1/time
  double length = 1.0;       // L > 0
  double pulse_amount = 1.0; // injected amount a > 0
  double injection_x0 = 0.0; // injection position, 0 <= x0 < L

  double peclet() const { return velocity * length / diffusivity; }
  double diffusion_time() const { return length * length / diffusivity; } // t_d
  double kappa_d() const { return rate_k * diffusion_time(); }

  // Throws InvalidArgument (or InvalidPeclet via the derived Pe) on a field
  // outside its domain.
  void validate() const;
};

// Series truncation policy. Terms are added until the per-term magnitude
// bound drops below tail_tol or max_terms is reached; evaluation below
// min_time (in units of t_d) is refused because the alternating series
// cancels into floating-point noise there.
struct Truncation {
  static constexpr int kMaxTermsCap = 5000;

  int max_terms = 2000;
  double tail_tol = 1e-12;
  double min_time = 1e-4; // dimensionless floor, t >= min_time * t_d

  void validate() const; // throws InvalidArgument
};

} // namespace radpulse
