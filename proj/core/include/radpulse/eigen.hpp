#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace radpulse {

// Peclet number Pe = v*L/D, restricted to the interval where the
// transverse eigenproblem below has a full real, positive spectrum.
class PecletNumber {
public:
  static constexpr double kMin = -2.0; // exclusive
  static constexpr double kMax = 10.0; // inclusive

  explicit PecletNumber(double value); // throws InvalidPeclet outside (kMin, kMax]
  double value() const noexcept { return value_; }

private:
  double value_;
};

// Roots mu_n of  mu*cos(mu) + (Pe/2)*sin(mu) = 0  with the normalization
// weights w_n = 1/2 + (Pe/4)*(sin(mu_n)/mu_n)^2 of the associated modes
// Phi_n(xi) = sin(mu_n*(1 - xi)) / sqrt(w_n) on xi in [0, 1].
struct EigenBasis {
  PecletNumber pe;
  std::vector<double> mu;          // strictly increasing, mu_n in ((n-1)pi, n*pi)
  std::vector<double> norm_weight; // w_n > 0

  std::size_t count() const noexcept { return mu.size(); }
};

// Open interval ((n-1)pi + d, n*pi - d), d = 1e-12, that brackets the nth
// root for every supported Pe. n is 1-based; throws IndexOutOfRange for n < 1.
std::pair<double, double> bracket_interval(int n);

// nth root by bisection to absolute tolerance tol. Pe = 0 is exact:
// mu_n = (n - 1/2)*pi. Throws ToleranceTooSmall when tol is below what the
// bracket can resolve (tol < 4*eps*(hi - lo)).
double solve_eigenvalue(int n, PecletNumber pe, double tol = 1e-12);

// First n_terms roots plus weights. n_terms >= 1.
EigenBasis build_basis(PecletNumber pe, int n_terms, double tol = 1e-12);

// Phi_n(xi) for 1-based n; throws IndexOutOfRange when n is not in
// [1, basis.count()], InvalidArgument when xi is outside [0, 1].
double eigenfunction_value(const EigenBasis& basis, int n, double xi);

} // namespace radpulse
