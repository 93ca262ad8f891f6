#include <doctest.h>

#include <cmath>
#include <limits>

#include "radpulse/eigen.hpp"
#include "radpulse/errors.hpp"
#include "support/quadrature.hpp"

using namespace radpulse;

namespace {
constexpr double kPi = 3.14159265358979323846;

double residual(double mu, double pe) {
  return mu * std::cos(mu) + 0.5 * pe * std::sin(mu);
}
} // namespace

TEST_CASE("peclet range is half-open (-2, 10]") {
  CHECK_NOTHROW(PecletNumber{10.0});
  CHECK_NOTHROW(PecletNumber{-1.999});
  CHECK_NOTHROW(PecletNumber{0.0});
  CHECK_THROWS_AS(PecletNumber{-2.0}, InvalidPeclet);
  CHECK_THROWS_AS(PecletNumber{-2.5}, InvalidPeclet);
  CHECK_THROWS_AS(PecletNumber{10.0001}, InvalidPeclet);
  CHECK_THROWS_AS(PecletNumber{std::numeric_limits<double>::quiet_NaN()}, InvalidPeclet);
}

TEST_CASE("peclet error message names the supported range") {
  try {
    PecletNumber bad{-3.0};
    (void)bad;
    FAIL("expected InvalidPeclet");
  } catch (const InvalidPeclet& e) {
    const std::string msg = e.what();
    CHECK(msg.find("(-2, 10]") != std::string::npos);
  }
}

TEST_CASE("bracket intervals avoid the cot poles") {
  CHECK_THROWS_AS(bracket_interval(0), IndexOutOfRange);
  for (int n = 1; n <= 50; ++n) {
    const auto [lo, hi] = bracket_interval(n);
    CHECK(lo > (n - 1) * kPi);
    CHECK(hi < n * kPi);
    CHECK(lo < hi);
  }
}

TEST_CASE("pure diffusion eigenvalues are the quarter-shifted multiples of pi") {
  const PecletNumber pe{0.0};
  for (int n = 1; n <= 100; ++n) {
    const double mu = solve_eigenvalue(n, pe);
    CHECK(std::fabs(mu - (n - 0.5) * kPi) <= 1e-12);
  }
}

TEST_CASE("reference eigenvalues at Pe=4") {
  // Frozen from an independent high-precision bisection of mu*cos(mu) + 2*sin(mu).
  const double expected[] = {2.2889,  5.0870,  8.0962,  11.1727, 14.2764, 17.3932, 20.5175,
                             23.6463, 26.7781, 29.9119, 33.0472, 36.1835, 39.3207, 42.4586};
  const auto basis = build_basis(PecletNumber{4.0}, 14);
  REQUIRE(basis.count() == 14);
  for (int n = 0; n < 14; ++n) CHECK(std::fabs(basis.mu[n] - expected[n]) < 5e-5);
}

TEST_CASE("residual of the characteristic function stays small across the Pe range") {
  for (double pe : {-1.9, -1.0, -0.5, 0.5, 2.0, 4.0, 7.0, 10.0}) {
    const auto basis = build_basis(PecletNumber{pe}, 200);
    for (std::size_t n = 0; n < basis.count(); ++n) {
      const double mu = basis.mu[n];
      CHECK(std::fabs(residual(mu, pe)) <= 1e-8 * std::max(1.0, mu));
    }
  }
}

TEST_CASE("each bracket holds exactly one sign change") {
  for (double pe : {-1.9, -0.7, 1.0, 4.0, 10.0}) {
    for (int n = 1; n <= 50; ++n) {
      const auto [lo, hi] = bracket_interval(n);
      CHECK(residual(lo, pe) * residual(hi, pe) < 0.0);
      // Scan interior: at most one sign change of the residual.
      int changes = 0;
      const int kScan = 2000;
      double prev = residual(lo, pe);
      for (int i = 1; i <= kScan; ++i) {
        const double x = lo + (hi - lo) * i / kScan;
        const double cur = residual(x, pe);
        if (prev * cur < 0.0) ++changes;
        prev = cur;
      }
      CHECK(changes == 1);
    }
  }
}

TEST_CASE("eigenvalues interlace the multiples of pi and increase") {
  for (double pe : {-1.9, 0.0, 3.0, 10.0}) {
    const auto basis = build_basis(PecletNumber{pe}, 80);
    for (std::size_t n = 0; n < basis.count(); ++n) {
      CHECK(basis.mu[n] > (static_cast<double>(n)) * kPi);
      CHECK(basis.mu[n] < (static_cast<double>(n) + 1.0) * kPi);
      if (n > 0) CHECK(basis.mu[n] > basis.mu[n - 1]);
    }
  }
}

TEST_CASE("offset from the diffusion-only values shrinks monotonically with n") {
  for (double pe : {-1.5, 2.0, 6.0, 10.0}) {
    const auto basis = build_basis(PecletNumber{pe}, 60);
    double prev = std::fabs(basis.mu[0] - 0.5 * kPi);
    for (std::size_t n = 1; n < basis.count(); ++n) {
      const double cur = std::fabs(basis.mu[n] - (static_cast<double>(n) + 0.5) * kPi);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("eigenvalues vary continuously near Pe=0") {
  const auto basis = build_basis(PecletNumber{1e-6}, 5);
  for (std::size_t n = 0; n < basis.count(); ++n)
    CHECK(std::fabs(basis.mu[n] - (static_cast<double>(n) + 0.5) * kPi) < 1e-6);
}

TEST_CASE("for positive Pe the ratio to the asymptote decays toward one from above") {
  const auto basis = build_basis(PecletNumber{4.0}, 100);
  double prev_ratio = basis.mu[9] / (9.5 * kPi);
  CHECK(prev_ratio > 1.0);
  CHECK(prev_ratio < 1.005);
  for (std::size_t n = 10; n < basis.count(); ++n) {
    const double ratio = basis.mu[n] / ((static_cast<double>(n) + 0.5) * kPi);
    CHECK(ratio > 1.0);
    CHECK(ratio <= prev_ratio);
    prev_ratio = ratio;
  }
}

TEST_CASE("tolerance below the floating-point floor is rejected") {
  CHECK_THROWS_AS(solve_eigenvalue(1, PecletNumber{4.0}, 1e-18), ToleranceTooSmall);
  CHECK_THROWS_AS(solve_eigenvalue(3, PecletNumber{4.0}, 1e-15), ToleranceTooSmall);
  CHECK_NOTHROW(solve_eigenvalue(1000, PecletNumber{4.0}, 1e-12));
}

TEST_CASE("norm weights stay positive down to the edge of the Pe range") {
  for (double pe : {-1.9, -1.99, 0.0, 10.0}) {
    const auto basis = build_basis(PecletNumber{pe}, 50);
    for (double w : basis.norm_weight) CHECK(w > 0.0);
  }
}

TEST_CASE("mode shapes vanish at the outflow face and reject bad arguments") {
  const auto basis = build_basis(PecletNumber{3.0}, 10);
  for (std::size_t n = 1; n <= basis.count(); ++n) CHECK(eigenfunction_value(basis, n, 1.0) == 0.0);
  CHECK_THROWS_AS(eigenfunction_value(basis, 0, 0.5), IndexOutOfRange);
  CHECK_THROWS_AS(eigenfunction_value(basis, 11, 0.5), IndexOutOfRange);
  CHECK_THROWS_AS(eigenfunction_value(basis, 1, -0.1), InvalidArgument);
  CHECK_THROWS_AS(eigenfunction_value(basis, 1, 1.1), InvalidArgument);
}

TEST_CASE("mode shapes are orthonormal under plain L2 quadrature") {
  for (double pe : {0.0, 4.0, -1.5}) {
    const auto basis = build_basis(PecletNumber{pe}, 10);
    for (std::size_t m = 1; m <= 10; ++m) {
      for (std::size_t n = m; n <= 10; ++n) {
        const double ip = testsupport::simpson(
            [&](double xi) {
              return eigenfunction_value(basis, m, xi) * eigenfunction_value(basis, n, xi);
            },
            0.0, 1.0, 2000);
        const double expect = (m == n) ? 1.0 : 0.0;
        CHECK(std::fabs(ip - expect) < 1e-6);
      }
    }
  }
}

TEST_CASE("mode shapes satisfy the oscillator equation") {
  const auto basis = build_basis(PecletNumber{4.0}, 6);
  const double h = 1e-5;
  for (std::size_t n = 1; n <= basis.count(); ++n) {
    const double mu = basis.mu[n - 1];
    for (double xi : {0.2, 0.5, 0.8}) {
      const double second = (eigenfunction_value(basis, n, xi + h) -
                             2.0 * eigenfunction_value(basis, n, xi) +
                             eigenfunction_value(basis, n, xi - h)) /
                            (h * h);
      CHECK(std::fabs(second + mu * mu * eigenfunction_value(basis, n, xi)) < 1e-4 * mu * mu);
    }
  }
}

TEST_CASE("basis construction validates the term count") {
  CHECK_THROWS_AS(build_basis(PecletNumber{1.0}, 0), InvalidArgument);
  CHECK_THROWS_AS(build_basis(PecletNumber{1.0}, -3), InvalidArgument);
}
