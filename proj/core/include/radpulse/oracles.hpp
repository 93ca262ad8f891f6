#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "radpulse/curve.hpp"
#include "radpulse/eigen.hpp"
#include "radpulse/kinetics.hpp" // FitWindow
#include "radpulse/params.hpp"

namespace radpulse {

// Independent numerical routes to the same exit-flow problem; nothing here
// reuses the eigenfunction series, so agreement is a genuine cross-check.

enum class FdScheme {
  CrankNicolson, // with Rannacher startup: two implicit-Euler half-steps
  ImplicitEuler,
};

// Finite-difference configuration. The delta pulse is regularized as a
// square pulse of width epsilon*L: c(x,0) = a/(epsilon*L) on [0, epsilon*L].
struct FDGrid {
  int nx = 1000;         // interior grid points, >= 50
  double dt = 1e-4;      // time step, > 0 (same units as t_end)
  double t_end = 2.0;    // final time, > dt
  double epsilon = 0.1;  // pulse width fraction, 0 < epsilon <= 0.5, >= 2/nx
  FdScheme scheme = FdScheme::CrankNicolson;
  int sample_every = 0;  // curve sampling stride in steps; 0 = auto (~2000 samples)

  void validate() const; // throws InvalidArgument
};

struct FdSolution {
  Curve exit_flow;      // j(L, t) including the t = 0 sample
  Curve holdup;         // trapezoidal integral of c over [0, L]
  double halving_error; // sup |j_dt - j_dt/2| * L / (a*D), the stability estimate
};

// Second-order theta-scheme solve (ghost-node Robin inlet, Dirichlet
// outlet, Thomas tridiagonal solver). Runs at dt and dt/2; throws
// UnstableConfig when the step-halving estimate exceeds 1e-2 in the
// dimensionless sup norm, otherwise returns the finer solution.
FdSolution fd_solve_detailed(const ModelParams& params, const FDGrid& grid);
Curve fd_solve(const ModelParams& params, const FDGrid& grid);

// Monte Carlo first-passage sampler for the pure-transport problem
// (params.rate_k must be 0): Euler-Maruyama on dX = v dt + sqrt(2D) dW,
// mirror reflection at x = 0, absorption at x = L with a Brownian-bridge
// crossing check per step (plain end-of-step absorption has an
// O(sqrt(dt)) barrier bias far above the statistical resolution).
// The default step keeps the residual O(dt) bias below the KS resolution
// of 1e5 paths (measured: KS 0.0054/0.0052 at dt=2e-4 against a 1%
// critical value of 0.0051, 0.0033/0.0035 at dt=5e-5, Pe 0/4).
struct MCConfig {
  std::int64_t n_paths = 100000;   // >= 1000
  double dt = 5e-5;                // <= 1e-3 * t_d of the params it is used with
  std::uint64_t seed = 1;
  double t_cap = 0.0;              // censoring horizon; 0 = 50 * t_d
  int threads = 0;                 // worker override; 0 = worker_count()

  void validate(const ModelParams& params) const; // throws InvalidArgument
};

struct McResult {
  std::vector<double> exit_times; // absorbed paths, in path-index order
  std::int64_t n_censored = 0;

  double mean() const;
  double std_error() const; // of the mean
};

// Throws TooManyCensored when the censored fraction reaches 0.1%.
McResult mc_exit_times(const ModelParams& params, const MCConfig& cfg);

struct OracleReport {
  double sup_norm_error = 0.0;
  FitWindow window;                  // overlap actually compared
  std::int64_t samples_compared = 0;
  bool pass = false;
};

// Sup-norm distance between two curves over window intersected with both
// time ranges; the coarser curve is linearly interpolated onto the finer
// grid. A (0, 0) window means the full overlap. Throws DisjointWindows
// when nothing overlaps.
OracleReport compare_curves(const Curve& a, const Curve& b, const FitWindow& window,
                            double tolerance);

// One-sample Kolmogorov-Smirnov distance between samples and a model CDF,
// and the asymptotic critical value sqrt(-ln(alpha/2)/2)/sqrt(n).
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& model_cdf);
double ks_critical_value(std::size_t n, double alpha = 0.01);

// F(tau) = integral of J over [0, tau], built by cumulative trapezoidal
// quadrature of the analytic normalized exit flow on a uniform grid; the
// independent reference distribution for the KS check.
class ExitTimeCdf {
public:
  ExitTimeCdf(PecletNumber pe, const EigenBasis& basis, double tau_end, int n_panels = 40000,
              const Truncation& trunc = {});
  double operator()(double tau) const; // 0 below the grid, flat above
  double total() const { return cumulative_.back(); }

private:
  double tau_lo_;
  double dtau_;
  std::vector<double> cumulative_;
};

} // namespace radpulse
