#include <algorithm>
#include <cmath>
#include <string>

#include "radpulse/errors.hpp"
#include "radpulse/kahan.hpp"
#include "radpulse/oracles.hpp"
#include "radpulse/series.hpp"

namespace radpulse {

namespace {

double interpolate(const std::vector<double>& t, const std::vector<double>& y, double at) {
  // callers guarantee t.front() <= at <= t.back()
  const auto it = std::upper_bound(t.begin(), t.end(), at);
  if (it == t.begin()) return y.front();
  if (it == t.end()) return y.back();
  const std::size_t hi = static_cast<std::size_t>(it - t.begin());
  const std::size_t lo = hi - 1;
  const double f = (at - t[lo]) / (t[hi] - t[lo]);
  return y[lo] + f * (y[hi] - y[lo]);
}

std::size_t count_in(const std::vector<double>& t, double lo, double hi) {
  const auto b = std::lower_bound(t.begin(), t.end(), lo);
  const auto e = std::upper_bound(t.begin(), t.end(), hi);
  return static_cast<std::size_t>(e - b);
}

} // namespace

OracleReport compare_curves(const Curve& a, const Curve& b, const FitWindow& window,
                            double tolerance) {
  a.validate();
  b.validate();
  if (a.size() == 0 || b.size() == 0) throw DisjointWindows("empty curve");
  if (!(tolerance >= 0.0)) throw InvalidArgument("tolerance must be >= 0");
  double lo = std::max(a.t.front(), b.t.front());
  double hi = std::min(a.t.back(), b.t.back());
  if (!(window.t_lo == 0.0 && window.t_hi == 0.0)) {
    if (!(window.t_hi > window.t_lo)) throw InvalidArgument("window needs t_hi > t_lo");
    lo = std::max(lo, window.t_lo);
    hi = std::min(hi, window.t_hi);
  }
  if (!(lo <= hi)) throw DisjointWindows("curves/window share no time range");

  const bool a_finer = count_in(a.t, lo, hi) >= count_in(b.t, lo, hi);
  const Curve& fine = a_finer ? a : b;
  const Curve& coarse = a_finer ? b : a;

  OracleReport rep;
  rep.window = {lo, hi};
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const double t = fine.t[i];
    if (t < lo || t > hi) continue;
    const double diff = std::fabs(fine.y[i] - interpolate(coarse.t, coarse.y, t));
    rep.sup_norm_error = std::max(rep.sup_norm_error, diff);
    ++rep.samples_compared;
  }
  if (rep.samples_compared == 0) throw DisjointWindows("no samples inside the window");
  rep.pass = rep.sup_norm_error <= tolerance;
  return rep;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& model_cdf) {
  if (samples.empty()) throw InvalidArgument("KS needs at least one sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = model_cdf(samples[i]);
    d = std::max(d, std::fabs((i + 1) / n - f));
    d = std::max(d, std::fabs(f - i / n));
  }
  return d;
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0 || !(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("bad KS parameters");
  return std::sqrt(-0.5 * std::log(0.5 * alpha)) / std::sqrt(static_cast<double>(n));
}

ExitTimeCdf::ExitTimeCdf(PecletNumber pe, const EigenBasis& basis, double tau_end, int n_panels,
                         const Truncation& trunc) {
  if (n_panels < 10) throw InvalidArgument("n_panels must be >= 10");
  tau_lo_ = trunc.min_time; // below the floor J underflows to 0 anyway
  if (!(tau_end > tau_lo_)) throw InvalidArgument("tau_end must exceed the min_time floor");
  dtau_ = (tau_end - tau_lo_) / n_panels;
  cumulative_.resize(static_cast<std::size_t>(n_panels) + 1);
  KahanAccumulator acc;
  cumulative_[0] = 0.0;
  double prev = normalized_exit_flow(pe, 0.0, tau_lo_, basis, trunc);
  for (int i = 1; i <= n_panels; ++i) {
    const double tau = tau_lo_ + dtau_ * i;
    const double cur = normalized_exit_flow(pe, 0.0, tau, basis, trunc);
    acc += 0.5 * dtau_ * (prev + cur);
    cumulative_[static_cast<std::size_t>(i)] = acc.result();
    prev = cur;
  }
}

double ExitTimeCdf::operator()(double tau) const {
  if (tau <= tau_lo_) return 0.0;
  const double pos = (tau - tau_lo_) / dtau_;
  const std::size_t idx = static_cast<std::size_t>(pos);
  if (idx + 1 >= cumulative_.size()) return cumulative_.back();
  const double f = pos - static_cast<double>(idx);
  return cumulative_[idx] + f * (cumulative_[idx + 1] - cumulative_[idx]);
}

} // namespace radpulse
