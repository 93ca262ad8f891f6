// radpulse: analytic pulse-response curves, exit-flow signatures, kinetic
// fits, and independent numerical cross-checks for a 1-D
// reaction-advection-diffusion reactor.
//
// Exit codes: 0 success (and, for `validate`, comparison passed),
// 2 invalid arguments or parameter domains, 3 file I/O problems,
// 4 `validate` ran but the comparison failed, 1 anything unexpected.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radpulse/curve.hpp"
#include "radpulse/eigen.hpp"
#include "radpulse/errors.hpp"
#include "radpulse/kinetics.hpp"
#include "radpulse/oracles.hpp"
#include "radpulse/series.hpp"
#include "radpulse/signatures.hpp"

namespace {

using namespace radpulse;

constexpr int kExitOk = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitIo = 3;
constexpr int kExitValidationFailed = 4;

std::string fmt(double v) { return format_double(v); }

// Expands `--config FILE` (flat key=value lines, '#' comments) into ordinary
// command-line options appended after the user's own, skipping keys the user
// already gave so explicit flags win. Expansion happens before parsing, which
// keeps the semantics identical for every subcommand. Returns an exit code,
// kExitOk when parsing should proceed.
int expand_config_args(std::vector<std::string>& args) {
  std::string path;
  bool found = false;
  for (std::size_t i = 0; i < args.size() && !found; ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) return kExitOk; // parser reports the missing value
      path = args[i + 1];
      found = true;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      found = true;
    }
  }
  if (!found) return kExitOk;

  std::ifstream is(path);
  if (!is) {
    std::cerr << "error message=\"cannot open config file '" << path << "'\"\n";
    return kExitBadInput;
  }
  auto trim = [](const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return std::string{};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  };
  auto given = [&args](const std::string& name) {
    for (const std::string& tok : args)
      if (tok == name || tok.rfind(name + "=", 0) == 0) return true;
    return false;
  };
  // options that take no value
  static const char* kFlagKeys[] = {"log", "peclet", "unweighted"};
  std::vector<std::string> extra;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    const std::string key = eq == std::string::npos ? std::string{} : trim(s.substr(0, eq));
    if (key.empty()) {
      std::cerr << "error message=\"config line " << line_no << ": expected key=value\"\n";
      return kExitBadInput;
    }
    const std::string value = trim(s.substr(eq + 1));
    const std::string name = "--" + key;
    if (given(name)) continue;
    const bool is_flag =
        std::any_of(std::begin(kFlagKeys), std::end(kFlagKeys),
                    [&key](const char* f) { return key == f; });
    if (is_flag) {
      if (value == "true" || value == "1" || value == "yes") {
        extra.push_back(name);
      } else if (value != "false" && value != "0" && value != "no") {
        std::cerr << "error message=\"config line " << line_no << ": '" << key
                  << "' takes true/false\"\n";
        return kExitBadInput;
      }
    } else {
      extra.push_back(name);
      extra.push_back(value);
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return kExitOk;
}

// Shared model flags. Dimensionless mode (--pe/--kappa-d/--td) is the
// default; giving any of --D/--v/--L/--k switches to dimensional mode.
struct ModelFlags {
  double pe = 0.0;
  double kappa_d = 0.0;
  double td = 1.0;
  double a = 1.0;
  std::optional<double> x0; // length units; commands pick their default

  std::optional<double> D, v, L, k;

  void add_to(CLI::App* cmd, bool with_x0) {
    auto* pe_opt = cmd->add_option("--pe", pe, "Peclet number v*L/D (dimensionless mode)")
                       ->capture_default_str();
    auto* kd_opt = cmd->add_option("--kappa-d", kappa_d, "Damkohler number k*t_d")
                       ->capture_default_str();
    auto* td_opt = cmd->add_option("--td", td, "diffusion time t_d = L^2/D")
                       ->capture_default_str();
    cmd->add_option("--a", a, "injected amount")->capture_default_str();
    if (with_x0) cmd->add_option("--x0", x0, "injection position (length units)");
    auto* d_opt = cmd->add_option("--D", D, "diffusivity (dimensional mode)");
    auto* v_opt = cmd->add_option("--v", v, "velocity (dimensional mode)");
    auto* l_opt = cmd->add_option("--L", L, "reactor length (dimensional mode)");
    auto* k_opt = cmd->add_option("--k", k, "loss rate constant (dimensional mode)");
    for (auto* dim : {d_opt, v_opt, l_opt, k_opt}) {
      dim->excludes(pe_opt);
      dim->excludes(kd_opt);
      dim->excludes(td_opt);
    }
  }

  bool dimensional() const { return D || v || L || k; }

  ModelParams to_params(double default_x0_fraction) const {
    ModelParams p;
    if (dimensional()) {
      p.diffusivity = D.value_or(1.0);
      p.length = L.value_or(1.0);
      p.velocity = v.value_or(0.0);
      p.rate_k = k.value_or(0.0);
    } else {
      if (!(td > 0.0)) throw InvalidArgument("--td must be > 0");
      p.length = 1.0;
      p.diffusivity = 1.0 / td;
      p.velocity = pe * p.diffusivity;
      if (kappa_d < 0.0) throw InvalidArgument("--kappa-d must be >= 0");
      p.rate_k = kappa_d / td;
    }
    p.pulse_amount = a;
    p.injection_x0 = x0.value_or(default_x0_fraction * p.length);
    p.validate();
    return p;
  }
};

struct TruncationFlags {
  int terms = 100;
  double tail_tol = 1e-12;
  double min_time = 1e-4;

  void add_to(CLI::App* cmd, int default_terms) {
    terms = default_terms;
    cmd->add_option("--terms", terms, "eigenmodes in the series basis")->capture_default_str();
    cmd->add_option("--tail-tol", tail_tol, "series tail bound")->capture_default_str();
    cmd->add_option("--min-time", min_time, "smallest evaluable t/t_d")->capture_default_str();
  }

  Truncation to_truncation() const {
    Truncation t;
    t.max_terms = terms;
    t.tail_tol = tail_tol;
    t.min_time = min_time;
    return t;
  }
};

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

// Writes to the file (or stdout for "-") and prints the one-line summary.
// The summary goes to stderr so stdout stays a clean, pipeable table.
void emit(const std::string& out_path, const std::string& payload, const std::string& summary) {
  if (out_path == "-") {
    std::cout << payload;
  } else {
    auto os = open_out(out_path);
    os << payload;
    if (!os) throw IoError("write failed for '" + out_path + "'");
  }
  std::cerr << summary << "\n";
}

// ---------------------------------------------------------------- eigen ---

struct EigenArgs {
  double pe = 0.0;
  int n = 14;
  double tol = 1e-12;
  std::string out = "eigen.csv";
};

void run_eigen(const EigenArgs& args) {
  const PecletNumber pe{args.pe};
  const EigenBasis basis = build_basis(pe, args.n, args.tol);
  std::ostringstream csv;
  csv << "n,mu_n,w_n\n";
  for (std::size_t i = 0; i < basis.count(); ++i) {
    csv << (i + 1) << "," << fmt(basis.mu[i]) << "," << fmt(basis.norm_weight[i]) << "\n";
  }
  emit(args.out, csv.str(),
       "eigen ok pe=" + fmt(args.pe) + " n=" + std::to_string(args.n) + " tol=" + fmt(args.tol) +
           " out=" + args.out);
}

// ---------------------------------------------------------------- curve ---

struct CurveArgs {
  ModelFlags model;
  TruncationFlags trunc;
  std::string kind = "exit-flow";
  double x_fraction = 0.5;
  double t_min = 0.001;
  double t_max = 2.0;
  int points = 400;
  bool log_grid = false;
  std::string out = "curve.csv";
};

void run_curve(const CurveArgs& args) {
  const ModelParams params = args.model.to_params(0.01);
  const Truncation trunc = args.trunc.to_truncation();
  const EigenBasis basis = build_basis(PecletNumber{params.peclet()}, args.trunc.terms);
  const double td = params.diffusion_time();
  if (!(args.t_min >= trunc.min_time)) {
    throw InvalidArgument("--t-min must be >= --min-time (" + fmt(trunc.min_time) + ")");
  }
  const std::vector<double> taus = make_time_grid(args.t_min, args.t_max, args.points,
                                                  args.log_grid);
  Curve curve;
  if (args.kind == "normalized") {
    if (params.injection_x0 != 0.0 && args.model.x0) {
      throw InvalidArgument("normalized curves are defined for injection at x0 = 0");
    }
    curve = sample_normalized_exit_flow(PecletNumber{params.peclet()}, params.kappa_d(), basis,
                                        taus, trunc);
  } else {
    std::vector<double> times(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) times[i] = taus[i] * td;
    if (args.kind == "exit-flow") {
      curve = sample_exit_flow(params, basis, times, trunc);
    } else if (args.kind == "holdup") {
      curve = sample_holdup(params, basis, times, trunc);
    } else if (args.kind == "concentration") {
      if (!(args.x_fraction >= 0.0 && args.x_fraction <= 1.0)) {
        throw InvalidArgument("--x must be in [0, 1] (fraction of L)");
      }
      curve = sample_concentration(params, basis, args.x_fraction * params.length, times, trunc);
    } else {
      throw InvalidArgument("unknown curve kind '" + args.kind + "'");
    }
  }
  std::ostringstream csv;
  write_curve_csv(csv, curve);
  emit(args.out, csv.str(),
       "curve ok kind=" + std::string(to_string(curve.kind)) + " pe=" + fmt(curve.pe) +
           " kappa_d=" + fmt(curve.kappa_d) + " points=" + std::to_string(args.points) +
           " out=" + args.out);
}

// ----------------------------------------------------------- signatures ---

struct SignatureArgs {
  std::optional<double> pe;
  std::optional<double> kappa_d;
  double pe_min = 0.0, pe_max = 5.0;
  int pe_steps = 51;
  double kappa_min = 0.0, kappa_max = 5.0;
  int kappa_steps = 51;
  double td = 1.0;
  double a = 1.0;
  TruncationFlags trunc;
  std::string method = "full";
  std::string out = "signatures.csv";
};

void run_signatures(const SignatureArgs& args) {
  const PeakMethod method = args.method == "two-term" ? PeakMethod::TwoTerm
                          : args.method == "full"     ? PeakMethod::FullSeries
                                                      : throw InvalidArgument(
                                                            "--method must be full or two-term");
  std::vector<double> pes, kds;
  if (args.pe) {
    pes.push_back(*args.pe);
  } else {
    if (args.pe_steps < 1) throw InvalidArgument("--pe-steps must be >= 1");
    for (int i = 0; i < args.pe_steps; ++i) {
      pes.push_back(args.pe_steps == 1
                        ? args.pe_min
                        : args.pe_min + (args.pe_max - args.pe_min) * i / (args.pe_steps - 1));
    }
  }
  if (args.kappa_d) {
    kds.push_back(*args.kappa_d);
  } else {
    if (args.kappa_steps < 1) throw InvalidArgument("--kappa-steps must be >= 1");
    for (int i = 0; i < args.kappa_steps; ++i) {
      kds.push_back(args.kappa_steps == 1 ? args.kappa_min
                                          : args.kappa_min + (args.kappa_max - args.kappa_min) *
                                                                 i / (args.kappa_steps - 1));
    }
  }
  const Truncation trunc = args.trunc.to_truncation();
  std::ostringstream csv;
  csv << "Pe,kappa_d,M0,M1,M2,tau_max,J_max,peak_number,t_mean,t_moments\n";
  for (double pe_value : pes) {
    const PecletNumber pe{pe_value};
    const EigenBasis basis = build_basis(pe, args.trunc.terms);
    for (double kd : kds) {
      const SignatureSet s = compute_signatures(pe, kd, args.td, args.a, basis, trunc, method);
      csv << fmt(s.pe) << "," << fmt(s.kappa_d) << "," << fmt(s.m0) << "," << fmt(s.m1) << ","
          << fmt(s.m2) << "," << fmt(s.peak.tau_max) << "," << fmt(s.peak.j_max) << ","
          << fmt(s.peak.peak_number) << "," << fmt(s.t_mean) << "," << fmt(s.t_moments) << "\n";
    }
  }
  emit(args.out, csv.str(),
       "signatures ok rows=" + std::to_string(pes.size() * kds.size()) + " method=" + args.method +
           " out=" + args.out);
}

// ------------------------------------------------------------------ fit ---

struct FitArgs {
  std::string curve_k_path;
  std::string curve_0_path;
  std::string curve_path; // pure-transport curve for --peclet
  bool peclet_mode = false;
  std::optional<double> m0, m1;
  std::optional<double> td, a;
  double window_lo = 0.05, window_hi = 2.0; // units of t_d
  bool unweighted = false;
  std::string out = "fit.txt";
};

// Trapezoidal m0/m1 of an exit-flow curve, for the moment-based Pe route.
std::pair<double, double> curve_moments(const Curve& c) {
  double m0 = 0.0, m1 = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    const double dt = c.t[i] - c.t[i - 1];
    m0 += 0.5 * dt * (c.y[i] + c.y[i - 1]);
    m1 += 0.5 * dt * (c.t[i] * c.y[i] + c.t[i - 1] * c.y[i - 1]);
  }
  return {m0, m1};
}

void run_fit(const FitArgs& args) {
  std::ostringstream rep;
  std::string summary;
  if (args.peclet_mode) {
    double m0, m1, td, a;
    if (args.m0 && args.m1) {
      m0 = *args.m0;
      m1 = *args.m1;
      td = args.td.value_or(1.0);
      a = args.a.value_or(1.0);
    } else if (!args.curve_path.empty()) {
      const CurveReadResult r = read_curve_csv(args.curve_path);
      std::tie(m0, m1) = curve_moments(r.curve);
      td = args.td.value_or(r.curve.t_d);
      a = args.a.value_or(r.curve.a);
    } else {
      throw InvalidArgument("--peclet needs either --m0/--m1 or --curve");
    }
    const PecletEstimate est = estimate_peclet(m0, m1, td, a);
    rep << "mode=peclet\n"
        << "pe_hat=" << fmt(est.pe_hat) << "\n"
        << "residual=" << fmt(est.residual) << "\n"
        << "m0=" << fmt(m0) << "\n"
        << "m1=" << fmt(m1) << "\n"
        << "t_d=" << fmt(td) << "\n"
        << "a=" << fmt(a) << "\n";
    summary = "fit ok mode=peclet pe_hat=" + fmt(est.pe_hat) + " residual=" + fmt(est.residual) +
              " out=" + args.out;
  } else {
    if (args.curve_k_path.empty() || args.curve_0_path.empty()) {
      throw InvalidArgument("rate fit needs --curve-k and --curve-0");
    }
    const Curve with_reaction = read_curve_csv(args.curve_k_path).curve;
    const Curve baseline = read_curve_csv(args.curve_0_path).curve;
    FitWindow window{args.window_lo * baseline.t_d, args.window_hi * baseline.t_d};
    const WeightingMode mode = args.unweighted ? WeightingMode::Uniform
                                               : WeightingMode::ByBaseline;
    const RateEstimate est = extract_rate_constant(with_reaction, baseline, window, mode);
    rep << "mode=rate\n"
        << "k_hat=" << fmt(est.k_hat) << "\n"
        << "raw_slope=" << fmt(est.raw_slope) << "\n"
        << "std_error=" << fmt(est.std_error) << "\n"
        << "n_points=" << est.n_points_used << "\n"
        << "window_lo=" << fmt(est.window.t_lo) << "\n"
        << "window_hi=" << fmt(est.window.t_hi) << "\n"
        << "weighting=" << (mode == WeightingMode::Uniform ? "uniform" : "baseline") << "\n"
        << "negative_slope=" << (est.negative_slope ? 1 : 0) << "\n";
    summary = "fit ok mode=rate k_hat=" + fmt(est.k_hat) + " std_error=" + fmt(est.std_error) +
              " n_points=" + std::to_string(est.n_points_used) + " out=" + args.out;
  }
  emit(args.out, rep.str(), summary);
}

// ------------------------------------------------------------- validate ---

struct ValidateArgs {
  ModelFlags model;
  TruncationFlags trunc;
  std::string oracle = "fd";
  // fd
  double eps = 0.1;
  int nx = 0;        // 0 = auto
  double dt = 0.0;   // units of t_d; 0 = auto
  double t_end = 2.0; // units of t_d
  std::string scheme = "cn";
  double tol = 0.1;
  double window_lo = 0.0, window_hi = 0.0; // units of t_d; 0,0 = full overlap
  // mc
  long long paths = 100000;
  unsigned long long seed = 1;
  double mc_dt = 5e-5;  // units of t_d; keeps step bias below the KS gate at 1e5 paths
  double t_cap = 50.0;  // units of t_d
  double se_band = 3.0;
  double alpha = 0.01;
  std::string exit_times_out;
  std::string out = "validate.csv";
};

int run_validate_fd(const ValidateArgs& args) {
  const ModelParams params = args.model.to_params(0.0);
  if (params.injection_x0 != 0.0) {
    throw InvalidArgument("the finite-difference check compares against injection at x0 = 0");
  }
  const double td = params.diffusion_time();
  FDGrid grid;
  grid.epsilon = args.eps;
  grid.nx = args.nx > 0 ? args.nx : std::max(1000, static_cast<int>(std::ceil(2.0 / args.eps)));
  grid.dt = (args.dt > 0.0 ? args.dt : 2e-4) * td;
  grid.t_end = args.t_end * td;
  if (args.scheme == "cn") {
    grid.scheme = FdScheme::CrankNicolson;
  } else if (args.scheme == "ie") {
    grid.scheme = FdScheme::ImplicitEuler;
  } else {
    throw InvalidArgument("--scheme must be cn or ie");
  }

  const Truncation trunc = args.trunc.to_truncation();
  const FdSolution fd = fd_solve_detailed(params, grid);
  const EigenBasis basis = build_basis(PecletNumber{params.peclet()}, args.trunc.terms);
  // A truncated series rings below tau ~ 1/mu_N^2; compare only where the
  // last retained mode has decayed to ~1e-13 so the gap measures the oracle,
  // not the truncation.
  const double mu_last = basis.mu.back();
  const double tau_start = std::max(trunc.min_time, 30.0 / (mu_last * mu_last));
  const std::vector<double> times = make_time_grid(tau_start * td, grid.t_end, 4000, false);
  const Curve analytic = sample_exit_flow(params, basis, times, trunc);
  FitWindow window{args.window_lo * td, args.window_hi * td};
  const OracleReport rep = compare_curves(fd.exit_flow, analytic, window, args.tol);

  std::ostringstream csv;
  csv << "oracle,sup_norm_error,window_lo,window_hi,samples_compared,tolerance,pass,"
         "halving_error,nx,dt,epsilon,scheme\n";
  csv << "fd," << fmt(rep.sup_norm_error) << "," << fmt(rep.window.t_lo) << ","
      << fmt(rep.window.t_hi) << "," << rep.samples_compared << "," << fmt(args.tol) << ","
      << (rep.pass ? 1 : 0) << "," << fmt(fd.halving_error) << "," << grid.nx << ","
      << fmt(grid.dt) << "," << fmt(grid.epsilon) << "," << args.scheme << "\n";
  emit(args.out, csv.str(),
       "validate ok oracle=fd pass=" + std::to_string(rep.pass ? 1 : 0) +
           " sup_norm_error=" + fmt(rep.sup_norm_error) + " tolerance=" + fmt(args.tol) +
           " out=" + args.out);
  return rep.pass ? kExitOk : kExitValidationFailed;
}

int run_validate_mc(const ValidateArgs& args) {
  const ModelParams params = args.model.to_params(0.0);
  const double td = params.diffusion_time();
  MCConfig cfg;
  cfg.n_paths = args.paths;
  cfg.seed = args.seed;
  cfg.dt = args.mc_dt * td;
  cfg.t_cap = args.t_cap * td;
  const McResult mc = mc_exit_times(params, cfg);

  if (!args.exit_times_out.empty()) {
    auto os = open_out(args.exit_times_out);
    os << "# " << cfg.seed << ", " << cfg.n_paths << ", " << fmt(cfg.dt) << "\n";
    for (double t : mc.exit_times) os << fmt(t) << "\n";
  }

  const PecletNumber pe{params.peclet()};
  const Truncation trunc = args.trunc.to_truncation();
  const double expected = mean_exit_time(pe, td);
  const double mc_mean = mc.mean();
  const double se = mc.std_error();
  const bool mean_ok = std::fabs(mc_mean - expected) <= args.se_band * se;

  const EigenBasis basis = build_basis(pe, args.trunc.terms);
  double max_tau = 4.0;
  for (double t : mc.exit_times) max_tau = std::max(max_tau, t / td + 0.5);
  const ExitTimeCdf cdf(pe, basis, max_tau, 40000, trunc);
  const double ks = ks_statistic(
      [&] {
        std::vector<double> taus(mc.exit_times.size());
        for (std::size_t i = 0; i < taus.size(); ++i) taus[i] = mc.exit_times[i] / td;
        return taus;
      }(),
      [&](double tau) { return cdf(tau); });
  const double ks_crit = ks_critical_value(mc.exit_times.size(), args.alpha);
  const bool ks_ok = ks < ks_crit;
  const bool pass = mean_ok && ks_ok;

  std::ostringstream csv;
  csv << "oracle,mc_mean,expected_mean,std_error,se_band,ks_stat,ks_critical,alpha,"
         "n_paths,n_censored,seed,dt,pass\n";
  csv << "mc," << fmt(mc_mean) << "," << fmt(expected) << "," << fmt(se) << ","
      << fmt(args.se_band) << "," << fmt(ks) << "," << fmt(ks_crit) << "," << fmt(args.alpha)
      << "," << cfg.n_paths << "," << mc.n_censored << "," << cfg.seed << "," << fmt(cfg.dt)
      << "," << (pass ? 1 : 0) << "\n";
  emit(args.out, csv.str(),
       "validate ok oracle=mc pass=" + std::to_string(pass ? 1 : 0) + " mc_mean=" + fmt(mc_mean) +
           " expected=" + fmt(expected) + " ks=" + fmt(ks) + " ks_critical=" + fmt(ks_crit) +
           " out=" + args.out);
  return pass ? kExitOk : kExitValidationFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"pulse-response curves and kinetics for a 1-D reaction-advection-diffusion "
               "reactor (RADPULSE_THREADS caps worker threads)"};
  app.require_subcommand(1);
  std::string g_config_path; // recorded for help; values are expanded pre-parse

  EigenArgs eigen_args;
  auto* eigen_cmd = app.add_subcommand("eigen", "eigenvalue/weight table as CSV");
  eigen_cmd->add_option("--config", g_config_path, "flat key=value config file (command-line flags win)");
  eigen_cmd->add_option("--pe", eigen_args.pe, "Peclet number")->required();
  eigen_cmd->add_option("--n", eigen_args.n, "number of modes")->capture_default_str();
  eigen_cmd->add_option("--tol", eigen_args.tol, "bisection tolerance")->capture_default_str();
  eigen_cmd->add_option("--out", eigen_args.out, "output CSV ('-' = stdout)")
      ->capture_default_str();

  CurveArgs curve_args;
  auto* curve_cmd = app.add_subcommand("curve", "sampled pulse-response curve as CSV");
  curve_cmd->add_option("--config", g_config_path, "flat key=value config file (command-line flags win)");
  curve_cmd->add_option("--kind", curve_args.kind,
                        "exit-flow | normalized | concentration | holdup")
      ->capture_default_str();
  curve_args.model.add_to(curve_cmd, true);
  curve_args.trunc.add_to(curve_cmd, 100);
  curve_cmd->add_option("--x", curve_args.x_fraction, "probe position as fraction of L")
      ->capture_default_str();
  curve_cmd->add_option("--t-min", curve_args.t_min, "grid start, units of t_d")
      ->capture_default_str();
  curve_cmd->add_option("--t-max", curve_args.t_max, "grid end, units of t_d")
      ->capture_default_str();
  curve_cmd->add_option("--points", curve_args.points, "samples")->capture_default_str();
  curve_cmd->add_flag("--log", curve_args.log_grid, "log-spaced grid");
  curve_cmd->add_option("--out", curve_args.out, "output CSV ('-' = stdout)")
      ->capture_default_str();

  SignatureArgs sig_args;
  auto* sig_cmd = app.add_subcommand("signatures", "moment/peak signature table as CSV");
  sig_cmd->add_option("--config", g_config_path, "flat key=value config file (command-line flags win)");
  sig_cmd->add_option("--pe", sig_args.pe, "single Peclet number (else a sweep)");
  sig_cmd->add_option("--kappa-d", sig_args.kappa_d, "single Damkohler number (else a sweep)");
  sig_cmd->add_option("--pe-min", sig_args.pe_min)->capture_default_str();
  sig_cmd->add_option("--pe-max", sig_args.pe_max)->capture_default_str();
  sig_cmd->add_option("--pe-steps", sig_args.pe_steps)->capture_default_str();
  sig_cmd->add_option("--kappa-min", sig_args.kappa_min)->capture_default_str();
  sig_cmd->add_option("--kappa-max", sig_args.kappa_max)->capture_default_str();
  sig_cmd->add_option("--kappa-steps", sig_args.kappa_steps)->capture_default_str();
  sig_cmd->add_option("--td", sig_args.td, "diffusion time")->capture_default_str();
  sig_cmd->add_option("--a", sig_args.a, "injected amount")->capture_default_str();
  sig_args.trunc.add_to(sig_cmd, 200);
  sig_cmd->add_option("--method", sig_args.method, "peak method: full | two-term")
      ->capture_default_str();
  sig_cmd->add_option("--out", sig_args.out, "output CSV ('-' = stdout)")->capture_default_str();

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "kinetic constants from exit-flow CSVs");
  fit_cmd->add_option("--config", g_config_path, "flat key=value config file (command-line flags win)");
  fit_cmd->add_option("--curve-k", fit_args.curve_k_path, "exit-flow CSV with reaction");
  fit_cmd->add_option("--curve-0", fit_args.curve_0_path, "baseline (k = 0) exit-flow CSV");
  fit_cmd->add_flag("--peclet", fit_args.peclet_mode, "estimate Pe from moments instead");
  fit_cmd->add_option("--curve", fit_args.curve_path, "pure-transport exit-flow CSV (--peclet)");
  fit_cmd->add_option("--m0", fit_args.m0, "zeroth moment (--peclet)");
  fit_cmd->add_option("--m1", fit_args.m1, "first moment (--peclet)");
  fit_cmd->add_option("--td", fit_args.td, "diffusion time override");
  fit_cmd->add_option("--a", fit_args.a, "injected amount override");
  fit_cmd->add_option("--window-lo", fit_args.window_lo, "fit window start, units of t_d")
      ->capture_default_str();
  fit_cmd->add_option("--window-hi", fit_args.window_hi, "fit window end, units of t_d")
      ->capture_default_str();
  fit_cmd->add_flag("--unweighted", fit_args.unweighted, "uniform weights instead of j_0");
  fit_cmd->add_option("--out", fit_args.out, "output report ('-' = stdout)")
      ->capture_default_str();

  ValidateArgs val_args;
  auto* val_cmd = app.add_subcommand("validate", "cross-check the series against an oracle");
  val_cmd->add_option("--config", g_config_path, "flat key=value config file (command-line flags win)");
  val_cmd->add_option("--oracle", val_args.oracle, "fd | mc")->capture_default_str();
  val_args.model.add_to(val_cmd, false);
  val_args.trunc.add_to(val_cmd, 100);
  val_cmd->add_option("--eps", val_args.eps, "square-pulse width fraction (fd)")
      ->capture_default_str();
  val_cmd->add_option("--nx", val_args.nx, "grid points (fd, 0 = auto)")->capture_default_str();
  val_cmd->add_option("--dt", val_args.dt, "time step in t_d units (fd, 0 = auto)")
      ->capture_default_str();
  val_cmd->add_option("--t-end", val_args.t_end, "horizon in t_d units (fd)")
      ->capture_default_str();
  val_cmd->add_option("--scheme", val_args.scheme, "cn | ie (fd)")->capture_default_str();
  val_cmd->add_option("--tol", val_args.tol, "sup-norm pass tolerance (fd)")
      ->capture_default_str();
  val_cmd->add_option("--window-lo", val_args.window_lo, "compare window start, t_d units (fd)")
      ->capture_default_str();
  val_cmd->add_option("--window-hi", val_args.window_hi, "compare window end, t_d units (fd)")
      ->capture_default_str();
  val_cmd->add_option("--paths", val_args.paths, "paths (mc)")->capture_default_str();
  val_cmd->add_option("--seed", val_args.seed, "RNG seed (mc)")->capture_default_str();
  val_cmd->add_option("--mc-dt", val_args.mc_dt, "time step in t_d units (mc)")
      ->capture_default_str();
  val_cmd->add_option("--t-cap", val_args.t_cap, "censoring horizon in t_d units (mc)")
      ->capture_default_str();
  val_cmd->add_option("--se-band", val_args.se_band, "allowed |mean error| in std errors (mc)")
      ->capture_default_str();
  val_cmd->add_option("--alpha", val_args.alpha, "KS significance level (mc)")
      ->capture_default_str();
  val_cmd->add_option("--exit-times-out", val_args.exit_times_out,
                      "also dump exit times to this CSV (mc)");
  val_cmd->add_option("--out", val_args.out, "output report CSV ('-' = stdout)")
      ->capture_default_str();

  std::vector<std::string> args(argv + 1, argv + argc);
  if (const int rc = expand_config_args(args); rc != kExitOk) return rc;
  std::reverse(args.begin(), args.end()); // the vector-parse entry point expects reversed args
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (eigen_cmd->parsed()) {
      run_eigen(eigen_args);
    } else if (curve_cmd->parsed()) {
      run_curve(curve_args);
    } else if (sig_cmd->parsed()) {
      run_signatures(sig_args);
    } else if (fit_cmd->parsed()) {
      run_fit(fit_args);
    } else if (val_cmd->parsed()) {
      if (val_args.oracle == "fd") return run_validate_fd(val_args);
      if (val_args.oracle == "mc") return run_validate_mc(val_args);
      throw InvalidArgument("--oracle must be fd or mc");
    }
    return kExitOk;
  } catch (const IoError& e) {
    std::cerr << "error type=IoError message=\"" << e.what() << "\"\n";
    return kExitIo;
  } catch (const Error& e) {
    // domain/validation failures: InvalidPeclet, TimeTooSmall, ...
    std::cerr << "error message=\"" << e.what() << "\"\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error type=unexpected message=\"" << e.what() << "\"\n";
    return kExitUnexpected;
  }
}
