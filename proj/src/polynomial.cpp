#include "latdiv/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latdiv {

double IntPolynomial::eval(double x) const {
  double v = 0;
  for (int i = degree(); i >= 0; i--) v = v * x + double(coeffs[i]);
  return v;
}

std::complex<double> IntPolynomial::eval(std::complex<double> x) const {
  std::complex<double> v = 0;
  for (int i = degree(); i >= 0; i--) v = v * x + double(coeffs[i]);
  return v;
}

std::string IntPolynomial::to_string() const {
  std::string s;
  for (int i = degree(); i >= 0; i--) {
    long long c = coeffs[i];
    if (c == 0 && degree() > 0) continue;
    if (!s.empty()) s += c >= 0 ? " + " : " - ";
    else if (c < 0) s += "-";
    long long a = std::llabs(c);
    if (i == 0 || a != 1) s += std::to_string(a);
    if (i >= 1) s += "x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

namespace {

using cplx = std::complex<double>;

std::vector<double> to_doubles(const IntPolynomial& p) {
  std::vector<double> c(p.coeffs.size());
  for (size_t i = 0; i < c.size(); i++) c[i] = double(p.coeffs[i]);
  return c;
}

double eval_d(const std::vector<double>& c, double x) {
  double v = 0;
  for (int i = int(c.size()) - 1; i >= 0; i--) v = v * x + c[i];
  return v;
}

std::vector<double> derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (size_t i = 1; i < c.size(); i++) d.push_back(double(i) * c[i]);
  return d;
}

double cauchy_bound(const std::vector<double>& c) {
  double lead = std::fabs(c.back());
  double m = 0;
  for (size_t i = 0; i + 1 < c.size(); i++) m = std::max(m, std::fabs(c[i]));
  return 1.0 + m / lead;
}

double newton_polish(const std::vector<double>& c, const std::vector<double>& d, double x) {
  for (int it = 0; it < 64; it++) {
    double f = eval_d(c, x);
    double fp = eval_d(d, x);
    if (fp == 0) break;
    double step = f / fp;
    x -= step;
    if (std::fabs(step) < 1e-15 * (1.0 + std::fabs(x))) break;
  }
  return x;
}

// Real roots of a real-coefficient polynomial via recursion on the
// derivative: between consecutive critical points the function is monotone,
// so a sign change brackets exactly one root.
std::vector<double> real_roots(const std::vector<double>& c) {
  int deg = int(c.size()) - 1;
  while (deg > 0 && c[deg] == 0.0) deg--;
  if (deg <= 0) return {};
  if (deg == 1) return {-c[0] / c[1]};
  if (deg == 2) {
    double a = c[2], b = c[1], c0 = c[0];
    double disc = b * b - 4 * a * c0;
    if (disc < 0) return {};
    double sq = std::sqrt(disc);
    double q = -0.5 * (b + (b >= 0 ? sq : -sq));
    std::vector<double> r;
    r.push_back(q / a);
    if (q != 0)
      r.push_back(c0 / q);
    else
      r.push_back(0.0);
    std::sort(r.begin(), r.end());
    return r;
  }
  std::vector<double> crit = real_roots(derivative(c));
  std::sort(crit.begin(), crit.end());
  double bound = cauchy_bound(c);
  std::vector<double> pts;
  pts.push_back(-bound - 1.0);
  for (double t : crit)
    if (t > pts.back() + 1e-14) pts.push_back(t);
  pts.push_back(bound + 1.0);
  std::vector<double> roots;
  std::vector<double> d = derivative(c);
  for (size_t i = 0; i + 1 < pts.size(); i++) {
    double lo = pts[i], hi = pts[i + 1];
    double flo = eval_d(c, lo), fhi = eval_d(c, hi);
    if (flo == 0.0) roots.push_back(lo);
    if (flo * fhi >= 0.0) continue;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::fabs(lo)); it++) {
      double mid = 0.5 * (lo + hi);
      double fm = eval_d(c, mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm < 0) == (flo < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    roots.push_back(newton_polish(c, d, 0.5 * (lo + hi)));
  }
  // Dedupe (simple roots only in this library; minimal polynomials are
  // squarefree).
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [&](double a, double b) { return std::fabs(a - b) < 1e-9 * (1.0 + bound); }),
              roots.end());
  return roots;
}

// Deflate by a real root (synthetic division), in doubles.
std::vector<double> deflate(const std::vector<double>& c, double r) {
  int deg = int(c.size()) - 1;
  std::vector<double> q(deg);
  double carry = c[deg];
  for (int i = deg - 1; i >= 0; i--) {
    q[i] = carry;
    carry = c[i] + carry * r;
  }
  return q;
}

std::vector<cplx> cubic_roots(const std::vector<double>& c) {
  // Depressed form t^3 + p t + q with x = t - b/3.
  double b = c[2] / c[3], c1 = c[1] / c[3], d0 = c[0] / c[3];
  double p = c1 - b * b / 3.0;
  double q = 2.0 * b * b * b / 27.0 - b * c1 / 3.0 + d0;
  double shift = -b / 3.0;
  double disc = -4.0 * p * p * p - 27.0 * q * q;
  std::vector<cplx> out;
  if (disc >= 0) {
    // Three real roots (trigonometric form).
    double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; k++)
      out.emplace_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) + shift, 0.0);
  } else {
    double u = -q / 2.0 + std::sqrt(-disc / 108.0);
    double v = -q / 2.0 - std::sqrt(-disc / 108.0);
    double t = std::cbrt(u) + std::cbrt(v);
    out.emplace_back(t + shift, 0.0);
    // Remaining quadratic factor t^2 + t*t0 + (t0^2 + p).
    double re = -t / 2.0;
    double im = std::sqrt(std::max(0.0, 3.0 * t * t / 4.0 + p));
    out.emplace_back(re + shift, im);
    out.emplace_back(re + shift, -im);
  }
  return out;
}

}  // namespace

std::vector<std::complex<double>> poly_roots(const IntPolynomial& poly, double tol) {
  int deg = poly.degree();
  if (deg < 1 || deg > 8) throw std::invalid_argument("poly_roots: degree out of range [1,8]");
  if (tol <= 0) throw std::invalid_argument("poly_roots: tol must be positive");
  std::vector<double> c = to_doubles(poly);
  std::vector<cplx> roots;
  if (deg == 1) {
    roots.emplace_back(-c[0] / c[1], 0.0);
  } else if (deg == 2) {
    double a = c[2], b = c[1], c0 = c[0];
    double disc = b * b - 4 * a * c0;
    if (disc >= 0) {
      double sq = std::sqrt(disc);
      double q = -0.5 * (b + (b >= 0 ? sq : -sq));
      roots.emplace_back(q / a, 0.0);
      roots.emplace_back(q != 0 ? c0 / q : 0.0, 0.0);
    } else {
      double re = -b / (2 * a), im = std::sqrt(-disc) / (2 * a);
      roots.emplace_back(re, im);
      roots.emplace_back(re, -im);
    }
  } else if (deg == 3) {
    roots = cubic_roots(c);
  } else {
    std::vector<double> rr = real_roots(c);
    for (double r : rr) roots.emplace_back(r, 0.0);
    if (int(rr.size()) < deg) {
      std::vector<double> rest = c;
      for (double r : rr) rest = deflate(rest, r);
      if (int(rest.size()) - 1 == 2) {
        double a = rest[2], b = rest[1], c0 = rest[0];
        double disc = b * b - 4 * a * c0;
        if (disc < 0) {
          double re = -b / (2 * a), im = std::sqrt(-disc) / (2 * a);
          roots.emplace_back(re, im);
          roots.emplace_back(re, -im);
        }
      }
      if (int(roots.size()) != deg)
        throw std::runtime_error("poly_roots: could not isolate all roots of " + poly.to_string());
    }
  }
  double maxc = 0;
  for (long long v : poly.coeffs) maxc = std::max(maxc, double(std::llabs(v)));
  for (auto& r : roots) {
    if (std::fabs(r.imag()) < tol) r = cplx(r.real(), 0.0);
    if (std::abs(poly.eval(r)) >= tol * (1.0 + maxc))
      throw std::runtime_error("poly_roots: root refinement failed for " + poly.to_string());
  }
  std::sort(roots.begin(), roots.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return roots;
}

bool has_rational_root(const IntPolynomial& poly) {
  if (!poly.monic()) throw std::invalid_argument("has_rational_root: polynomial not monic");
  long long c0 = poly.coeffs[0];
  if (c0 == 0) return true;
  auto try_root = [&](long long r) {
    // Exact Horner in 128-bit.
    __int128 v = 0;
    for (int i = poly.degree(); i >= 0; i--) v = v * r + poly.coeffs[i];
    return v == 0;
  };
  long long a = std::llabs(c0);
  for (long long d = 1; d * d <= a; d++) {
    if (a % d != 0) continue;
    for (long long r : {d, -d, a / d, -(a / d)})
      if (try_root(r)) return true;
  }
  return false;
}

std::vector<Rat> poly_mul_mod(const std::vector<Rat>& a, const std::vector<Rat>& b,
                              const IntPolynomial& min_poly) {
  if (!min_poly.monic()) throw std::invalid_argument("poly_mul_mod: min_poly not monic");
  int n = min_poly.degree();
  std::vector<Rat> prod(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); i++) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); j++) prod[i + j] = prod[i + j] + a[i] * b[j];
  }
  for (int d = int(prod.size()) - 1; d >= n; d--) {
    Rat lead = prod[d];
    if (lead.is_zero()) continue;
    for (int i = 0; i <= n; i++)
      prod[d - n + i] = prod[d - n + i] - lead * Rat(min_poly.coeffs[i]);
  }
  prod.resize(n, Rat(0));
  return prod;
}

namespace {

int eval_mod_p(const std::vector<int>& c, int x, int p) {
  long long v = 0;
  for (int i = int(c.size()) - 1; i >= 0; i--) v = (v * x + c[i]) % p;
  return int(v);
}

// Divide monic a by monic b in F_p[x]; returns true and the quotient when the
// remainder is zero.
bool divide_mod_p(const std::vector<int>& a, const std::vector<int>& b, int p, std::vector<int>* quot) {
  std::vector<int> r = a;
  int db = int(b.size()) - 1;
  std::vector<int> q(a.size() - b.size() + 1, 0);
  for (int d = int(r.size()) - 1; d >= db; d--) {
    int f = r[d];
    if (f == 0) continue;
    q[d - db] = f;
    for (int i = 0; i <= db; i++) r[d - db + i] = ((r[d - db + i] - (long long)f * b[i]) % p + p) % p;
  }
  for (size_t i = 0; i + 1 < b.size(); i++)
    if (r[i] != 0) return false;
  if (quot) *quot = q;
  return true;
}

}  // namespace

std::vector<ModPolyFactor> factor_mod_p(const IntPolynomial& poly, int p) {
  if (p < 2 || p > 100) throw std::invalid_argument("factor_mod_p: p out of range");
  if (!poly.monic()) throw std::invalid_argument("factor_mod_p: polynomial not monic");
  std::vector<int> g(poly.coeffs.size());
  for (size_t i = 0; i < g.size(); i++) g[i] = int(((poly.coeffs[i] % p) + p) % p);
  std::vector<ModPolyFactor> factors;
  // Linear factors by root scan with deflation.
  for (int r = 0; r < p; r++) {
    int mult = 0;
    while (g.size() > 1 && eval_mod_p(g, r, p) == 0) {
      std::vector<int> lin = {(p - r) % p, 1};
      std::vector<int> q;
      divide_mod_p(g, lin, p, &q);
      g = q;
      mult++;
    }
    if (mult > 0) factors.push_back({{(p - r) % p, 1}, mult});
  }
  // Residual cofactor: exhaustive smallest-degree divisor search.
  while (int(g.size()) - 1 > 0) {
    int dg = int(g.size()) - 1;
    if (dg <= 3) {
      // No roots left, so degree 2 or 3 is irreducible.
      factors.push_back({g, 1});
      break;
    }
    bool split = false;
    for (int d = 2; d <= dg / 2 && !split; d++) {
      std::vector<int> cand(d + 1, 0);
      cand[d] = 1;
      long long total = 1;
      for (int i = 0; i < d; i++) total *= p;
      for (long long idx = 0; idx < total; idx++) {
        long long t = idx;
        for (int i = 0; i < d; i++) {
          cand[i] = int(t % p);
          t /= p;
        }
        std::vector<int> q;
        if (!divide_mod_p(g, cand, p, &q)) continue;
        int mult = 1;
        g = q;
        std::vector<int> q2;
        while (int(g.size()) > d && divide_mod_p(g, cand, p, &q2)) {
          g = q2;
          mult++;
        }
        factors.push_back({cand, mult});
        split = true;
        break;
      }
    }
    if (!split) {
      factors.push_back({g, 1});
      break;
    }
  }
  return factors;
}

}  // namespace latdiv
