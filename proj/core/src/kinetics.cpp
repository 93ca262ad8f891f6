#include "radpulse/kinetics.hpp"

#include <cmath>
#include <string>

#include "radpulse/errors.hpp"
#include "radpulse/signatures.hpp"

namespace radpulse {

RateEstimate extract_rate_constant(const Curve& with_reaction, const Curve& baseline,
                                   const FitWindow& window, WeightingMode weighting) {
  with_reaction.validate();
  baseline.validate();
  if (with_reaction.size() != baseline.size()) {
    throw GridMismatch("curves have different sample counts");
  }
  for (std::size_t i = 0; i < baseline.size(); ++i) {
    const double scale = std::max(1.0, std::fabs(baseline.t[i]));
    if (std::fabs(with_reaction.t[i] - baseline.t[i]) > 1e-12 * scale) {
      throw GridMismatch("curves sampled on different time grids (row " + std::to_string(i) + ")");
    }
  }
  FitWindow w = window;
  if (w.t_lo == 0.0 && w.t_hi == 0.0) {
    w.t_lo = 0.05 * baseline.t_d;
    w.t_hi = 2.0 * baseline.t_d;
  }
  if (!(w.t_hi > w.t_lo)) throw WindowTooNarrow("fit window is empty");

  double s_tt = 0.0, s_ty = 0.0;
  int in_window = 0;
  std::vector<double> ts, ys, ws;
  for (std::size_t i = 0; i < baseline.size(); ++i) {
    const double t = baseline.t[i];
    if (t < w.t_lo || t > w.t_hi) continue;
    ++in_window;
    if (!(baseline.y[i] > 0.0)) {
      throw NonPositiveBaseline("baseline exit flow <= 0 at t = " + std::to_string(t));
    }
    if (!(with_reaction.y[i] > 0.0)) continue; // noisy tail can cross zero; no log there
    const double y = -std::log(with_reaction.y[i] / baseline.y[i]);
    const double wt = weighting == WeightingMode::ByBaseline ? baseline.y[i] : 1.0;
    ts.push_back(t);
    ys.push_back(y);
    ws.push_back(wt);
    s_tt += wt * t * t;
    s_ty += wt * t * y;
  }
  if (in_window < 3) throw WindowTooNarrow("fewer than 3 samples inside the fit window");
  const int n = static_cast<int>(ts.size());
  if (n < 3) throw WindowTooNarrow("fewer than 3 usable (positive) samples inside the window");

  RateEstimate est;
  est.window = w;
  est.weighting = weighting;
  est.n_points_used = n;
  est.raw_slope = s_ty / s_tt;
  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ys[i] - est.raw_slope * ts[i];
    ss_res += ws[i] * r * r;
  }
  est.std_error = std::sqrt(ss_res / (n - 1) / s_tt);
  if (est.raw_slope < 0.0) {
    est.negative_slope = true;
    est.k_hat = 0.0;
  } else {
    est.k_hat = est.raw_slope;
  }
  return est;
}

namespace {

// G_0(Pe, 0) evaluated with a locally built basis; used by the bisection.
double g0_of_pe(double pe_value) {
  const PecletNumber pe{pe_value};
  const EigenBasis basis = build_basis(pe, 200);
  Truncation trunc;
  trunc.max_terms = 200;
  return moment_G(0, pe, 0.0, basis, trunc);
}

} // namespace

PecletEstimate estimate_peclet(double m0, double m1, double t_d, double a) {
  if (!(t_d > 0.0)) throw InvalidArgument("t_d must be > 0");
  if (!(a > 0.0)) throw InvalidArgument("a must be > 0");
  if (!(m0 > 0.0)) throw InvalidArgument("m0 must be > 0");
  if (std::fabs(m0 - a) / a > 0.01) {
    throw NotPureTransport("m0 deviates from a by more than 1%; moment ratio needs k = 0");
  }
  const double observed = m1 / (m0 * t_d); // dimensionless mean time
  // G_0(Pe, 0) is strictly decreasing in Pe, so a plain bisection inverts it.
  double lo = -1.9, hi = 10.0;
  const double g_lo = g0_of_pe(lo), g_hi = g0_of_pe(hi);
  if (observed > g_lo || observed < g_hi) {
    throw OutOfRange("observed m1/m0 corresponds to a Peclet number outside (-1.9, 10]");
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g0_of_pe(mid) > observed) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-9) break;
  }
  PecletEstimate est;
  est.pe_hat = 0.5 * (lo + hi);
  est.method = PecletMethod::MomentRatio;
  est.residual = std::fabs(g0_of_pe(est.pe_hat) * t_d - m1 / m0);
  return est;
}

double conversion(PecletNumber pe, double kappa_d, const EigenBasis& basis,
                  const Truncation& trunc) {
  if (!(kappa_d >= 0.0)) throw InvalidArgument("kappa_d must be >= 0");
  return kappa_d * moment_G(0, pe, kappa_d, basis, trunc);
}

} // namespace radpulse
