#pragma once

#include <complex>
#include <string>
#include <vector>

#include "latdiv/rational.hpp"

namespace latdiv {

// Monic integer polynomial, constant term first.
struct IntPolynomial {
  std::vector<long long> coeffs;

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<long long> c) : coeffs(std::move(c)) {}

  int degree() const { return int(coeffs.size()) - 1; }
  bool monic() const { return !coeffs.empty() && coeffs.back() == 1; }
  double eval(double x) const;
  std::complex<double> eval(std::complex<double> x) const;
  std::string to_string() const;
};

// All complex roots, sorted descending by real part then by imaginary part.
// Deterministic: closed forms for degree <= 3, derivative-bracketed bisection
// plus Newton refinement above that. Throws when it cannot isolate every
// root (e.g. a quartic with two complex pairs), naming the polynomial.
std::vector<std::complex<double>> poly_roots(const IntPolynomial& poly, double tol = 1e-10);

// True when the polynomial has a rational root (monic, so roots are integer
// divisors of the constant term). Degree <= 3 this decides reducibility.
bool has_rational_root(const IntPolynomial& poly);

// (a * b) mod min_poly with exact rational coefficients; min_poly is monic.
std::vector<Rat> poly_mul_mod(const std::vector<Rat>& a, const std::vector<Rat>& b,
                              const IntPolynomial& min_poly);

// One irreducible factor of the reduction mod p, with multiplicity.
// Coefficients are in [0, p), constant term first, monic.
struct ModPolyFactor {
  std::vector<int> coeffs;
  int multiplicity = 0;
  int degree() const { return int(coeffs.size()) - 1; }
};

// Full factorization of poly mod p into irreducibles. Linear factors are
// found by root search; residual factors of degree >= 2 by exhaustive
// smallest-degree divisor search (exact for the small p, small degree this
// library works with).
std::vector<ModPolyFactor> factor_mod_p(const IntPolynomial& poly, int p);

}  // namespace latdiv
