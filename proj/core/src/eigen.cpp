#include "radpulse/eigen.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

#include "radpulse/errors.hpp"

namespace radpulse {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBracketInset = 1e-12;

// Root function g(mu) = mu*cos(mu) + (Pe/2)*sin(mu). Unlike the equivalent
// tan form it has no poles, so plain bisection is safe on each branch.
double root_function(double mu, double pe) {
  return mu * std::cos(mu) + 0.5 * pe * std::sin(mu);
}

} // namespace

PecletNumber::PecletNumber(double value) : value_(value) {
  if (!(value > kMin && value <= kMax)) {
    throw InvalidPeclet("Peclet number " + std::to_string(value) +
                        " outside supported range (-2, 10]");
  }
}

std::pair<double, double> bracket_interval(int n) {
  if (n < 1) throw IndexOutOfRange("mode index must be >= 1, got " + std::to_string(n));
  return {(n - 1) * kPi + kBracketInset, n * kPi - kBracketInset};
}

double solve_eigenvalue(int n, PecletNumber pe, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (pe.value() == 0.0) {
    if (n < 1) throw IndexOutOfRange("mode index must be >= 1, got " + std::to_string(n));
    return (n - 0.5) * kPi;
  }
  auto [lo, hi] = bracket_interval(n);
  if (tol < 4.0 * DBL_EPSILON * (hi - lo)) {
    throw ToleranceTooSmall("tolerance " + std::to_string(tol) +
                            " below bisection resolution for mode " + std::to_string(n));
  }
  double flo = root_function(lo, pe.value());
  // One sign change per bracket: mu*cot(mu) is strictly decreasing from +inf
  // to -inf on ((n-1)pi, n*pi), so g = sin(mu)*(mu*cot(mu) + Pe/2) crosses
  // zero exactly once there for Pe in (-2, 10].
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break; // bracket at ULP resolution
    const double fmid = root_function(mid, pe.value());
    if ((flo < 0.0) == (fmid < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

EigenBasis build_basis(PecletNumber pe, int n_terms, double tol) {
  if (n_terms < 1) throw InvalidArgument("n_terms must be >= 1");
  EigenBasis basis{pe, {}, {}};
  basis.mu.reserve(static_cast<std::size_t>(n_terms));
  basis.norm_weight.reserve(static_cast<std::size_t>(n_terms));
  for (int n = 1; n <= n_terms; ++n) {
    const double mu = solve_eigenvalue(n, pe, tol);
    const double s = std::sin(mu) / mu;
    basis.mu.push_back(mu);
    basis.norm_weight.push_back(0.5 + 0.25 * pe.value() * s * s);
  }
  return basis;
}

double eigenfunction_value(const EigenBasis& basis, int n, double xi) {
  if (n < 1 || static_cast<std::size_t>(n) > basis.count()) {
    throw IndexOutOfRange("mode index " + std::to_string(n) + " not in [1, " +
                          std::to_string(basis.count()) + "]");
  }
  if (!(xi >= 0.0 && xi <= 1.0)) {
    throw InvalidArgument("xi must be in [0, 1], got " + std::to_string(xi));
  }
  const std::size_t i = static_cast<std::size_t>(n - 1);
  return std::sin(basis.mu[i] * (1.0 - xi)) / std::sqrt(basis.norm_weight[i]);
}

} // namespace radpulse
