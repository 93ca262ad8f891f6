#include <doctest.h>

#include <cmath>
#include <sstream>

#include "radpulse/errors.hpp"
#include "radpulse/series.hpp"
#include "radpulse/signatures.hpp"

using namespace radpulse;

namespace {

constexpr double kPi = 3.14159265358979323846;

ModelParams dimensionless(double pe, double kappa = 0.0) {
  ModelParams p;
  p.diffusivity = 1.0;
  p.length = 1.0;
  p.velocity = pe;
  p.rate_k = kappa;
  p.pulse_amount = 1.0;
  p.injection_x0 = 0.0;
  return p;
}

} // namespace

TEST_CASE("evaluation below the time floor is refused") {
  const auto basis = build_basis(PecletNumber{0.0}, 100);
  const auto p = dimensionless(0.0);
  CHECK_THROWS_AS(exit_flow(p, basis, 0.99e-4), TimeTooSmall);
  CHECK_THROWS_AS(concentration(p, basis, 0.5, 0.0), TimeTooSmall);
  CHECK_THROWS_AS(holdup(p, basis, -0.1), TimeTooSmall);
  CHECK_THROWS_AS(normalized_exit_flow(PecletNumber{0.0}, 0.0, 5e-5, basis), TimeTooSmall);
  CHECK_NOTHROW(exit_flow(p, basis, 1e-4));
}

TEST_CASE("basis built for a different Pe is rejected") {
  const auto basis = build_basis(PecletNumber{2.0}, 50);
  const auto p = dimensionless(4.0);
  CHECK_THROWS_AS(exit_flow(p, basis, 0.1), BasisMismatch);
  CHECK_THROWS_AS(normalized_exit_flow(PecletNumber{4.0}, 0.0, 0.1, basis), BasisMismatch);
}

TEST_CASE("truncation policy validates its fields") {
  Truncation t;
  t.max_terms = 0;
  CHECK_THROWS_AS(t.validate(), InvalidArgument);
  t = {};
  t.max_terms = Truncation::kMaxTermsCap + 1;
  CHECK_THROWS_AS(t.validate(), InvalidArgument);
  t = {};
  t.tail_tol = 0.0;
  CHECK_THROWS_AS(t.validate(), InvalidArgument);
  t = {};
  t.min_time = 0.0;
  CHECK_THROWS_AS(t.validate(), InvalidArgument);
  CHECK_NOTHROW(Truncation{}.validate());
}

TEST_CASE("model parameter validation") {
  ModelParams p = dimensionless(0.0);
  p.diffusivity = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = dimensionless(0.0);
  p.length = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = dimensionless(0.0);
  p.rate_k = -0.5;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = dimensionless(0.0);
  p.pulse_amount = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = dimensionless(0.0);
  p.injection_x0 = 1.0; // == L not allowed
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = dimensionless(15.0); // Pe out of range
  CHECK_THROWS_AS(p.validate(), InvalidPeclet);
}

TEST_CASE("truncation is converged: doubling the term cap does not move J") {
  // The cut is per-term-bound based, so the omitted geometric tail can be a
  // small multiple of tail_tol (ratio exp(-(mu_{N+1}^2-mu_N^2)tau) ~ 0.7 at
  // the smallest supported tau); tightening tail_tol may therefore shift J by
  // a few tail_tol, but doubling the cap under the same bound changes nothing.
  for (double pe : {0.0, 4.0, -1.5}) {
    const PecletNumber p{pe};
    const auto basis = build_basis(p, 4000);
    Truncation base;
    base.max_terms = 2000;
    Truncation more = base;
    more.max_terms = 4000;
    Truncation tighter = base;
    tighter.tail_tol = 0.5e-12;
    for (double tau : {1e-4, 5e-3, 0.05, 0.3, 1.0, 2.0}) {
      const double j0 = normalized_exit_flow(p, 0.0, tau, basis, base);
      const double j1 = normalized_exit_flow(p, 0.0, tau, basis, more);
      const double j2 = normalized_exit_flow(p, 0.0, tau, basis, tighter);
      CHECK(std::fabs(j1 - j0) < base.tail_tol);
      CHECK(std::fabs(j2 - j0) < 10.0 * base.tail_tol);
    }
  }
}

TEST_CASE("dimensional exit flow is the normalized curve scaled by a*D/L") {
  const PecletNumber pe{3.0};
  const auto basis = build_basis(pe, 400);
  auto p = dimensionless(3.0);
  p.pulse_amount = 2.5;
  for (double tau : {0.02, 0.1667, 0.5, 1.5}) {
    const double dimensional = exit_flow(p, basis, tau);
    const double normalized = normalized_exit_flow(pe, 0.0, tau, basis);
    CHECK(dimensional == doctest::Approx(p.pulse_amount * normalized).epsilon(1e-13));
  }
}

TEST_CASE("peak region value of the pure-diffusion curve") {
  // Frozen from a 2000-term evaluation: J(0.16697) for Pe = 0, kappa_d = 0.
  const auto basis = build_basis(PecletNumber{0.0}, 2000);
  const double j = normalized_exit_flow(PecletNumber{0.0}, 0.0, 0.16697, basis);
  CHECK(j == doctest::Approx(1.850126).epsilon(1e-4));
}

TEST_CASE("reaction only multiplies the exit flow by exp(-kappa_d * tau)") {
  for (double pe : {-1.0, 0.0, 2.0, 8.0}) {
    const PecletNumber p{pe};
    const auto basis = build_basis(p, 600);
    for (double kappa : {0.3, 2.0, 5.0}) {
      for (double tau : {0.01, 0.1, 0.5, 2.0}) {
        const double with = normalized_exit_flow(p, kappa, tau, basis);
        const double without = normalized_exit_flow(p, 0.0, tau, basis);
        CHECK(with == doctest::Approx(without * std::exp(-kappa * tau)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("concentration vanishes identically at the outflow face") {
  const auto basis = build_basis(PecletNumber{4.0}, 300);
  auto p = dimensionless(4.0, 1.0);
  p.injection_x0 = 0.2;
  for (double t : {0.001, 0.05, 0.4, 1.7}) CHECK(concentration(p, basis, p.length, t) == 0.0);
}

TEST_CASE("inlet flux is zero: the no-leak boundary holds") {
  // j(0, t) = c v - D c_x at x = 0, approximated with a one-sided
  // second-order difference; compared against the natural flux scale a/t_d.
  for (double pe : {0.0, 4.0, -1.5}) {
    const auto basis = build_basis(PecletNumber{pe}, 600);
    const auto p = dimensionless(pe);
    const double h = 1e-5;
    for (double t : {0.05, 0.2, 1.0}) {
      const double c0 = concentration(p, basis, 0.0, t);
      const double c1 = concentration(p, basis, h, t);
      const double c2 = concentration(p, basis, 2.0 * h, t);
      const double cx = (-3.0 * c0 + 4.0 * c1 - c2) / (2.0 * h);
      const double flux = c0 * p.velocity - p.diffusivity * cx;
      CHECK(std::fabs(flux) < 1e-6 * (p.pulse_amount / p.diffusion_time()));
    }
  }
}

TEST_CASE("outlet flow balances the loss of held-up material") {
  // j(L, t) = -dI/dt - k I, with dI/dt from a central difference.
  const auto basis = build_basis(PecletNumber{4.0}, 600);
  const auto p = dimensionless(4.0, 1.0);
  const double h = 1e-5;
  for (double t : {0.05, 0.1, 0.3, 1.0, 2.0}) {
    const double didt = (holdup(p, basis, t + h) - holdup(p, basis, t - h)) / (2.0 * h);
    const double lhs = exit_flow(p, basis, t);
    const double rhs = -didt - p.rate_k * holdup(p, basis, t);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
  }
}

TEST_CASE("early holdup recovers the injected amount") {
  for (double pe : {0.0, 4.0}) {
    const auto basis = build_basis(PecletNumber{pe}, 3000);
    auto p = dimensionless(pe);
    p.pulse_amount = 2.0;
    Truncation trunc;
    trunc.max_terms = 3000;
    const double early = holdup(p, basis, 1e-4, trunc);
    CHECK(early == doctest::Approx(p.pulse_amount).epsilon(0.01));
  }
}

TEST_CASE("exit flow is positive once the pulse reaches the outlet") {
  for (double pe : {-1.9, 0.0, 4.0, 10.0}) {
    const PecletNumber p{pe};
    const auto basis = build_basis(p, 400);
    for (double kappa : {0.0, 2.0})
      for (double tau : {0.05, 0.1, 0.3, 1.0, 2.0})
        CHECK(normalized_exit_flow(p, kappa, tau, basis) > 0.0);
  }
}

TEST_CASE("two-term evaluation matches the leading modes by hand") {
  const PecletNumber pe{4.0};
  const auto basis = build_basis(pe, 10);
  const double kappa = 0.7, tau = 0.4;
  double hand = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double mu = basis.mu[i];
    hand += mu * std::sin(mu) / basis.norm_weight[i] * std::exp(-mu * mu * tau);
  }
  hand *= std::exp(0.5 * 4.0 - (0.25 * 16.0 + kappa) * tau);
  CHECK(two_term_exit_flow(pe, kappa, tau, basis) == doctest::Approx(hand).epsilon(1e-14));
  const auto tiny = build_basis(pe, 1);
  CHECK_THROWS_AS(two_term_exit_flow(pe, kappa, tau, tiny), BasisMismatch);
}

TEST_CASE("derivative of the normalized curve matches a central difference") {
  const PecletNumber pe{2.0};
  const auto basis = build_basis(pe, 800);
  const double h = 1e-6;
  for (double tau : {0.05, 0.1669690462, 0.8}) {
    const double numeric = (normalized_exit_flow(pe, 0.5, tau + h, basis) -
                            normalized_exit_flow(pe, 0.5, tau - h, basis)) /
                           (2.0 * h);
    const double analytic = normalized_exit_flow_derivative(pe, 0.5, tau, basis);
    CHECK(analytic == doctest::Approx(numeric).epsilon(1e-6));
  }
}

TEST_CASE("two modes describe the curve to a percent soon after a tenth of t_d") {
  // Measured pointwise error of the two-mode sum at Pe=0: 2.24% at tau=0.10,
  // 0.7% at tau=0.12, 0.08% at tau=0.15 (third mode decays like
  // exp(-25 pi^2 tau / 4)). The percent level is reached just past 0.11.
  const PecletNumber pe{0.0};
  const auto basis = build_basis(pe, 100);
  Truncation deep;
  deep.max_terms = 100;
  for (double tau = 0.1; tau <= 2.0; tau += 0.05) {
    const double full = normalized_exit_flow(pe, 0.0, tau, basis, deep);
    const double two = two_term_exit_flow(pe, 0.0, tau, basis);
    const double rel = std::fabs(two - full) / std::fabs(full);
    CHECK(rel < 0.025);
    if (tau >= 0.12) CHECK(rel < 0.01);
  }
}

TEST_CASE("the curve decays monotonically after its peak") {
  for (double pe_v : {0.0, 3.0}) {
    const PecletNumber pe{pe_v};
    const auto basis = build_basis(pe, 400);
    const double tau_max = two_term_tau_max(pe, 0.0, basis);
    for (double tau = tau_max + 0.01; tau <= 2.0; tau += 0.02)
      CHECK(normalized_exit_flow_derivative(pe, 0.0, tau, basis) < 0.0);
  }
}

TEST_CASE("diffusion-limit curve equals its closed odd-mode form") {
  // With Pe = 0: mu_n = (n - 1/2) pi, w_n = 1/2, sin mu_n = (-1)^{n+1}, so
  // J(tau) = pi * sum (-1)^{n+1} (2n-1) exp(-(n-1/2)^2 pi^2 tau).
  const PecletNumber pe{0.0};
  const auto basis = build_basis(pe, 2000);
  Truncation trunc;
  trunc.max_terms = 2000;
  for (double tau : {5e-3, 0.05, 0.1669690462, 0.7, 2.0}) {
    double closed = 0.0;
    for (int n = 2000; n >= 1; --n) {
      const double half = (n - 0.5) * kPi;
      closed += (n % 2 == 1 ? 1.0 : -1.0) * (2.0 * n - 1.0) * std::exp(-half * half * tau);
    }
    closed *= kPi;
    const double j = normalized_exit_flow(pe, 0.0, tau, basis, trunc);
    CHECK(j == doctest::Approx(closed).epsilon(1e-12));
  }
}

TEST_CASE("injection point shifts the arrival but conserves mass structure") {
  // Moving the injection closer to the outlet raises the early exit flow.
  const auto basis = build_basis(PecletNumber{0.0}, 800);
  auto near = dimensionless(0.0);
  near.injection_x0 = 0.8;
  auto far = dimensionless(0.0);
  far.injection_x0 = 0.0;
  CHECK(exit_flow(near, basis, 0.02) > exit_flow(far, basis, 0.02));
}

TEST_CASE("time grids are well-formed") {
  const auto lin = make_time_grid(0.5, 2.0, 4);
  REQUIRE(lin.size() == 4);
  CHECK(lin.front() == 0.5);
  CHECK(lin.back() == 2.0);
  CHECK(lin[1] == doctest::Approx(1.0));
  const auto logg = make_time_grid(0.01, 1.0, 3, true);
  REQUIRE(logg.size() == 3);
  CHECK(logg[1] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(make_time_grid(1.0, 0.5, 4), InvalidArgument);
  CHECK_THROWS_AS(make_time_grid(0.5, 2.0, 1), InvalidArgument);
  CHECK_THROWS_AS(make_time_grid(0.0, 1.0, 4, true), InvalidArgument);
}

TEST_CASE("samplers carry full metadata and reject bad grids") {
  const PecletNumber pe{1.5};
  const auto basis = build_basis(pe, 200);
  auto p = dimensionless(1.5, 0.5);
  p.pulse_amount = 3.0;
  const auto grid = make_time_grid(0.01, 2.0, 25);
  const Curve c = sample_exit_flow(p, basis, grid);
  CHECK(c.kind == CurveKind::ExitFlow);
  CHECK(c.pe == doctest::Approx(1.5));
  CHECK(c.kappa_d == doctest::Approx(0.5));
  CHECK(c.t_d == doctest::Approx(1.0));
  CHECK(c.a == doctest::Approx(3.0));
  REQUIRE(c.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(c.y[i] == exit_flow(p, basis, grid[i]));

  std::vector<double> bad = {0.2, 0.1};
  CHECK_THROWS_AS(sample_exit_flow(p, basis, bad), InvalidArgument);
  std::vector<double> below = {1e-6, 0.1};
  CHECK_THROWS_AS(sample_exit_flow(p, basis, below), TimeTooSmall);

  const Curve n = sample_normalized_exit_flow(pe, 0.5, basis, grid);
  CHECK(n.kind == CurveKind::NormalizedExitFlow);
  CHECK(n.a == doctest::Approx(1.0));
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(n.y[i] == normalized_exit_flow(pe, 0.5, grid[i], basis));
}

TEST_CASE("curve csv round-trips bit-exactly with metadata") {
  const PecletNumber pe{2.0};
  const auto basis = build_basis(pe, 150);
  auto p = dimensionless(2.0, 1.0);
  p.pulse_amount = 0.731;
  const auto grid = make_time_grid(0.01, 1.0, 40, true);
  const Curve c = sample_holdup(p, basis, grid);

  std::ostringstream os;
  write_curve_csv(os, c);
  std::istringstream is(os.str());
  const auto back = read_curve_csv(is);
  CHECK(back.has_header);
  CHECK(back.curve.kind == CurveKind::Holdup);
  CHECK(back.curve.pe == c.pe);
  CHECK(back.curve.kappa_d == c.kappa_d);
  CHECK(back.curve.a == c.a);
  REQUIRE(back.curve.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(back.curve.t[i] == c.t[i]);
    CHECK(back.curve.y[i] == c.y[i]);
  }
}

TEST_CASE("headerless csv is accepted with default metadata") {
  std::istringstream is("0.1,1.5\n0.2,1.25\n0.4,0.75\n");
  const auto r = read_curve_csv(is);
  CHECK_FALSE(r.has_header);
  REQUIRE(r.curve.size() == 3);
  CHECK(r.curve.t[2] == 0.4);
  CHECK(r.curve.y[1] == 1.25);
  CHECK(r.curve.t_d == 1.0);
}

TEST_CASE("malformed csv raises IoError") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_curve_csv(empty), IoError);
  std::istringstream garbage("hello,world\n");
  CHECK_THROWS_AS(read_curve_csv(garbage), IoError);
  std::istringstream short_row("0.1\n");
  CHECK_THROWS_AS(read_curve_csv(short_row), IoError);
  CHECK_THROWS_AS(read_curve_csv("/nonexistent/path/file.csv"), IoError);
}

TEST_CASE("curve kind names round-trip") {
  for (auto kind : {CurveKind::ExitFlow, CurveKind::NormalizedExitFlow, CurveKind::Concentration,
                    CurveKind::Holdup})
    CHECK(curve_kind_from_string(to_string(kind)) == kind);
  CHECK_THROWS_AS(curve_kind_from_string("bogus"), IoError);
}
