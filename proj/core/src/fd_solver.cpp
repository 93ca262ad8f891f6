#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "radpulse/errors.hpp"
#include "radpulse/oracles.hpp"

namespace radpulse {

void FDGrid::validate() const {
  if (nx < 50) throw InvalidArgument("nx must be >= 50");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be > 0");
  if (!(t_end > dt)) throw InvalidArgument("t_end must exceed dt");
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw InvalidArgument("epsilon must be in (0, 0.5]");
  if (epsilon < 2.0 / nx) {
    throw InvalidArgument("pulse narrower than two cells: epsilon must be >= 2/nx");
  }
  if (sample_every < 0) throw InvalidArgument("sample_every must be >= 0");
}

namespace {

// One theta-scheme run; samples j(L,t) and the holdup at the given step
// indices. State vector holds c_0..c_nx (c_{nx+1} = 0 eliminated).
struct FdRun {
  std::vector<double> t, flux, held;
};

FdRun run_scheme(const ModelParams& p, int nx, double dt, long n_steps, double epsilon,
                 FdScheme scheme, const std::vector<long>& sample_steps) {
  const double L = p.length, D = p.diffusivity, v = p.velocity, k = p.rate_k;
  const double h = L / (nx + 1);
  const std::size_t m = static_cast<std::size_t>(nx) + 1; // unknowns c_0..c_nx

  // Spatial operator A (tridiagonal): dc/dt = A c.
  // Row 0 folds the ghost node of the zero-flux (Robin) inlet condition
  // c v - D c_x = 0 into the PDE at x = 0 at second order.
  std::vector<double> Al(m, 0.0), Ad(m, 0.0), Au(m, 0.0);
  Ad[0] = -2.0 * D / (h * h) - 2.0 * v / h - v * v / D - k;
  Au[0] = 2.0 * D / (h * h);
  for (std::size_t i = 1; i < m; ++i) {
    Al[i] = D / (h * h) + v / (2.0 * h);
    Ad[i] = -2.0 * D / (h * h) - k;
    Au[i] = D / (h * h) - v / (2.0 * h); // row nx: multiplies c_{nx+1} = 0
  }

  // Initial state: control-volume average of the square pulse, which keeps
  // the trapezoidal mass exactly a.
  std::vector<double> c(m, 0.0);
  const double xe = epsilon * L;
  const double c0 = p.pulse_amount / xe;
  for (std::size_t i = 0; i < m; ++i) {
    const double lo = std::max(0.0, i * h - 0.5 * h);
    const double hi = std::min(L, i * h + 0.5 * h);
    const double overlap = std::min(hi, xe) - lo;
    if (overlap > 0.0) c[i] = c0 * overlap / (hi - lo);
  }

  auto flux_at_exit = [&](const std::vector<double>& u) {
    // j(L) = -D c_x(L) (c(L) = 0); one-sided second-order difference.
    return D * (4.0 * u[m - 1] - u[m - 2]) / (2.0 * h);
  };
  auto trapezoid_mass = [&](const std::vector<double>& u) {
    double s = 0.5 * u[0]; // node 0 carries a half cell
    for (std::size_t i = 1; i < m; ++i) s += u[i];
    return s * h; // node nx+1 contributes 0
  };

  FdRun out;
  out.t.reserve(sample_steps.size());
  out.flux.reserve(sample_steps.size());
  out.held.reserve(sample_steps.size());
  std::size_t next_sample = 0;
  auto maybe_sample = [&](long step) {
    while (next_sample < sample_steps.size() && sample_steps[next_sample] == step) {
      out.t.push_back(step * dt);
      out.flux.push_back(flux_at_exit(c));
      out.held.push_back(trapezoid_mass(c));
      ++next_sample;
    }
  };
  maybe_sample(0);

  // Work arrays for the Thomas solve of (I - theta*dt*A) c_new = rhs.
  std::vector<double> dl(m), dd(m), du(m), rhs(m), cp(m), dp(m);
  auto step_theta = [&](double theta, double step_dt) {
    const double it = theta * step_dt;
    const double et = (1.0 - theta) * step_dt;
    for (std::size_t i = 0; i < m; ++i) {
      dl[i] = -it * Al[i];
      dd[i] = 1.0 - it * Ad[i];
      du[i] = -it * Au[i];
      const double below = i > 0 ? c[i - 1] : 0.0;
      const double above = i + 1 < m ? c[i + 1] : 0.0;
      rhs[i] = c[i] + et * (Al[i] * below + Ad[i] * c[i] + Au[i] * above);
    }
    // Thomas forward sweep
    cp[0] = du[0] / dd[0];
    dp[0] = rhs[0] / dd[0];
    for (std::size_t i = 1; i < m; ++i) {
      const double denom = dd[i] - dl[i] * cp[i - 1];
      cp[i] = du[i] / denom;
      dp[i] = (rhs[i] - dl[i] * dp[i - 1]) / denom;
    }
    c[m - 1] = dp[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) c[i] = dp[i] - cp[i] * c[i + 1];
  };

  long step = 0;
  if (scheme == FdScheme::CrankNicolson) {
    // Rannacher startup: the square pulse excites modes Crank-Nicolson
    // only damps marginally; two implicit-Euler half-steps kill them.
    step_theta(1.0, 0.5 * dt);
    step_theta(1.0, 0.5 * dt);
    step = 1;
    maybe_sample(step);
  }
  const double theta = scheme == FdScheme::CrankNicolson ? 0.5 : 1.0;
  while (step < n_steps) {
    step_theta(theta, dt);
    ++step;
    maybe_sample(step);
  }
  return out;
}

} // namespace

FdSolution fd_solve_detailed(const ModelParams& params, const FDGrid& grid) {
  params.validate();
  grid.validate();
  const long n_steps = std::max<long>(2, std::lround(grid.t_end / grid.dt));
  int stride = grid.sample_every;
  if (stride <= 0) stride = std::max<long>(1, n_steps / 2000);
  std::vector<long> samples;
  for (long s = 0; s <= n_steps; s += stride) samples.push_back(s);
  if (samples.back() != n_steps) samples.push_back(n_steps);

  const FdRun coarse = run_scheme(params, grid.nx, grid.dt, n_steps, grid.epsilon, grid.scheme,
                                  samples);
  std::vector<long> samples2(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) samples2[i] = 2 * samples[i];
  const FdRun fine = run_scheme(params, grid.nx, 0.5 * grid.dt, 2 * n_steps, grid.epsilon,
                                grid.scheme, samples2);

  const double flux_scale = params.pulse_amount * params.diffusivity / params.length;
  double est = 0.0;
  for (std::size_t i = 0; i < coarse.flux.size(); ++i) {
    est = std::max(est, std::fabs(coarse.flux[i] - fine.flux[i]));
  }
  est /= flux_scale;
  if (est > 1e-2) {
    throw UnstableConfig("step-halving error estimate " + std::to_string(est) +
                         " exceeds 1e-2; refine dt or nx");
  }

  FdSolution sol;
  sol.halving_error = est;
  sol.exit_flow.kind = CurveKind::ExitFlow;
  sol.exit_flow.pe = params.peclet();
  sol.exit_flow.kappa_d = params.kappa_d();
  sol.exit_flow.t_d = params.diffusion_time();
  sol.exit_flow.x0 = 0.5 * grid.epsilon * params.length; // pulse centroid
  sol.exit_flow.a = params.pulse_amount;
  sol.exit_flow.t = fine.t;
  sol.exit_flow.y = fine.flux;
  sol.holdup = sol.exit_flow;
  sol.holdup.kind = CurveKind::Holdup;
  sol.holdup.y = fine.held;
  return sol;
}

Curve fd_solve(const ModelParams& params, const FDGrid& grid) {
  return fd_solve_detailed(params, grid).exit_flow;
}

} // namespace radpulse
