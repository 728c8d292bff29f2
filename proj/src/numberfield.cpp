#include "latdiv/numberfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latdiv {

namespace {

constexpr double kImagTol = 1e-9;

bool square_free(long long m) {
  if (m <= 0) return false;
  for (long long d = 2; d * d <= m; d++) {
    if (m % (d * d) == 0) return false;
    while (m % d == 0) m /= d;
  }
  return true;
}

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; d++)
    if (p % d == 0) return false;
  return true;
}

// Expand embeddings into the n x n real matrix: one column per real root,
// (real, imag) column pairs for each conjugate pair, roots in sorted order.
Mat embedding_matrix(const RatMat& basis, const std::vector<std::complex<double>>& roots, int* r1_out,
                     int* r2_out) {
  int n = int(roots.size());
  // Conjugate pairs are adjacent after the (re desc, im desc) sort, with the
  // positive-imaginary member first.
  std::vector<int> col_root;      // which root feeds each column
  std::vector<int> col_kind;      // 0 real, 1 Re of a pair, 2 Im of a pair
  int r1 = 0, r2 = 0;
  for (int j = 0; j < n; j++) {
    if (std::fabs(roots[j].imag()) <= kImagTol * (1.0 + std::abs(roots[j]))) {
      col_root.push_back(j);
      col_kind.push_back(0);
      r1++;
    } else if (roots[j].imag() > 0) {
      col_root.push_back(j);
      col_kind.push_back(1);
      col_root.push_back(j);
      col_kind.push_back(2);
      r2++;
    }  // negative-imaginary member of the pair is skipped
  }
  if (int(col_root.size()) != n)
    throw std::runtime_error("embedding_matrix: unmatched conjugate pairs");
  Mat m(n, n);
  for (int i = 0; i < n; i++) {
    for (int c = 0; c < n; c++) {
      std::complex<double> root = roots[col_root[c]];
      std::complex<double> v = 0;
      std::complex<double> pw = 1;
      for (int k = 0; k < n; k++) {
        v += basis[i][k].to_double() * pw;
        pw *= root;
      }
      m(i, c) = (col_kind[c] == 2) ? v.imag() : v.real();
    }
  }
  *r1_out = r1;
  *r2_out = r2;
  return m;
}

void check_disc(const NumberField& f) {
  Lu lu(f.embedding);
  double det2 = std::exp(2.0 * lu.log_abs_det());
  double expected = std::fabs(double(f.disc)) * std::pow(2.0, -2.0 * f.r2);
  if (std::fabs(det2 - expected) > 1e-6 * expected)
    throw std::runtime_error("build_field: embedding determinant does not reproduce the discriminant of " +
                             f.tag);
}

NumberField assemble(std::string tag, IntPolynomial min_poly, RatMat basis, long long disc,
                     std::optional<std::vector<std::complex<double>>> exact_roots = std::nullopt) {
  NumberField f;
  f.tag = std::move(tag);
  f.min_poly = std::move(min_poly);
  f.degree = f.min_poly.degree();
  f.basis = std::move(basis);
  f.power_basis = rat_is_identity(f.basis);
  f.roots = exact_roots ? std::move(*exact_roots) : poly_roots(f.min_poly);
  f.embedding = embedding_matrix(f.basis, f.roots, &f.r1, &f.r2);
  if (f.r1 + 2 * f.r2 != f.degree) throw std::runtime_error("build_field: signature mismatch");
  f.disc = disc;
  check_disc(f);
  return f;
}

std::vector<std::complex<double>> cyclotomic_roots(int p) {
  std::vector<std::complex<double>> roots;
  for (int k = 1; k < p; k++) {
    double a = 2.0 * std::numbers::pi * k / p;
    roots.emplace_back(std::cos(a), std::sin(a));
  }
  std::sort(roots.begin(), roots.end(), [](auto& a, auto& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return roots;
}

NumberField build_quadratic(long long m) {
  if (m < 2 || !square_free(m))
    throw std::runtime_error("quadratic field requires a square-free integer m >= 2, got " +
                             std::to_string(m));
  std::string tag = "quadratic(" + std::to_string(m) + ")";
  if (((m % 4) + 4) % 4 == 1) {
    // O_K = Z[(1+sqrt m)/2], power basis of x^2 - x - (m-1)/4.
    IntPolynomial poly({-(m - 1) / 4, -1, 1});
    return assemble(tag, poly, rat_identity(2), m);
  }
  IntPolynomial poly({-m, 0, 1});
  return assemble(tag, poly, rat_identity(2), 4 * m);
}

NumberField build_cyclotomic(long long p) {
  if (!is_prime(p) || p < 3 || p > 7)
    throw std::runtime_error("cyclotomic(p) supports odd primes p <= 7, got " + std::to_string(p));
  int n = int(p) - 1;
  IntPolynomial poly(std::vector<long long>(n + 1, 1));
  long long disc = 1;
  for (int i = 0; i < n - 1; i++) disc *= p;
  if ((n / 2) % 2 == 1) disc = -disc;  // sign (-1)^{r2}
  return assemble("cyclotomic(" + std::to_string(p) + ")", poly, rat_identity(n), disc,
                  cyclotomic_roots(int(p)));
}

NumberField build_from_record(const FieldCatalog::Record& rec) {
  std::optional<std::vector<std::complex<double>>> roots;
  if (rec.tag.rfind("cyclotomic(", 0) == 0) {
    long long p = std::stoll(rec.tag.substr(11));
    roots = cyclotomic_roots(int(p));
  }
  NumberField f = assemble(rec.tag, rec.min_poly, rec.basis, rec.disc, std::move(roots));
  if (f.r1 != rec.r1 || f.r2 != rec.r2)
    throw std::runtime_error("catalog record " + rec.tag + " has inconsistent signature");
  return f;
}

}  // namespace

FieldSpec FieldSpec::parse(const std::string& text) {
  auto open = text.find('(');
  auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw std::runtime_error("cannot parse field spec '" + text + "'");
  std::string name = text.substr(0, open);
  long long param = std::stoll(text.substr(open + 1, close - open - 1));
  FieldSpec s;
  s.param = param;
  if (name == "quadratic")
    s.kind = Kind::quadratic;
  else if (name == "cubic-catalog")
    s.kind = Kind::cubic_catalog;
  else if (name == "quartic-catalog")
    s.kind = Kind::quartic_catalog;
  else if (name == "cyclotomic")
    s.kind = Kind::cyclotomic;
  else
    throw std::runtime_error("unknown field spec kind '" + name + "'");
  return s;
}

std::string FieldSpec::to_string() const {
  switch (kind) {
    case Kind::quadratic: return "quadratic(" + std::to_string(param) + ")";
    case Kind::cubic_catalog: return "cubic-catalog(" + std::to_string(param) + ")";
    case Kind::quartic_catalog: return "quartic-catalog(" + std::to_string(param) + ")";
    case Kind::cyclotomic: return "cyclotomic(" + std::to_string(param) + ")";
    case Kind::raw: return "raw";
  }
  return "?";
}

NumberField build_field(const FieldSpec& spec, const FieldCatalog& catalog) {
  switch (spec.kind) {
    case FieldSpec::Kind::quadratic:
      return build_quadratic(spec.param);
    case FieldSpec::Kind::cyclotomic: {
      if (const auto* rec = catalog.find(spec.to_string())) return build_from_record(*rec);
      return build_cyclotomic(spec.param);
    }
    case FieldSpec::Kind::cubic_catalog:
    case FieldSpec::Kind::quartic_catalog: {
      const auto* rec = catalog.find(spec.to_string());
      if (!rec) throw std::runtime_error("field " + spec.to_string() + " not in catalog");
      return build_from_record(*rec);
    }
    case FieldSpec::Kind::raw: {
      if (!spec.raw_min_poly.monic())
        throw std::runtime_error("raw field requires a monic minimal polynomial");
      if (spec.raw_min_poly.degree() <= 3 && has_rational_root(spec.raw_min_poly))
        throw std::runtime_error("raw field polynomial is reducible: " + spec.raw_min_poly.to_string());
      RatMat basis =
          spec.raw_basis.empty() ? rat_identity(spec.raw_min_poly.degree()) : spec.raw_basis;
      // Discriminant from the embedding determinant.
      NumberField probe;
      probe.tag = "raw(" + spec.raw_min_poly.to_string() + ")";
      probe.min_poly = spec.raw_min_poly;
      probe.degree = probe.min_poly.degree();
      probe.basis = basis;
      probe.power_basis = rat_is_identity(basis);
      probe.roots = poly_roots(probe.min_poly);
      probe.embedding = embedding_matrix(basis, probe.roots, &probe.r1, &probe.r2);
      Lu lu(probe.embedding);
      double det2 = std::exp(2.0 * lu.log_abs_det());
      double scaled = det2 * std::pow(2.0, 2.0 * probe.r2);
      probe.disc = llround(scaled) * ((probe.r2 % 2 == 1) ? -1 : 1);
      check_disc(probe);
      return probe;
    }
  }
  throw std::runtime_error("unreachable field spec kind");
}

NumberField build_field(const std::string& spec_text, const FieldCatalog& catalog) {
  return build_field(FieldSpec::parse(spec_text), catalog);
}

std::vector<long long> ok_multiply(const NumberField& field, std::span<const long long> a,
                                   std::span<const long long> b) {
  int n = field.degree;
  if (int(a.size()) != n || int(b.size()) != n)
    throw std::runtime_error("ok_multiply: coordinate length mismatch");
  if (field.power_basis) {
    // Integer convolution reduced by the monic minimal polynomial.
    std::vector<long long> prod(2 * n - 1, 0);
    for (int i = 0; i < n; i++) {
      if (a[i] == 0) continue;
      for (int j = 0; j < n; j++) prod[i + j] += a[i] * b[j];
    }
    for (int d = 2 * n - 2; d >= n; d--) {
      long long lead = prod[d];
      if (lead == 0) continue;
      for (int i = 0; i <= n; i++) prod[d - n + i] -= lead * field.min_poly.coeffs[i];
    }
    prod.resize(n);
    return prod;
  }
  // General basis: convert to the power basis, multiply, convert back.
  std::vector<Rat> ap(n, Rat(0)), bp(n, Rat(0));
  for (int k = 0; k < n; k++)
    for (int i = 0; i < n; i++) {
      ap[k] = ap[k] + Rat(a[i]) * field.basis[i][k];
      bp[k] = bp[k] + Rat(b[i]) * field.basis[i][k];
    }
  std::vector<Rat> prod = poly_mul_mod(ap, bp, field.min_poly);
  RatMat inv = rat_inverse(field.basis);
  std::vector<long long> out(n, 0);
  for (int j = 0; j < n; j++) {
    Rat v(0);
    for (int k = 0; k < n; k++) v = v + prod[k] * inv[k][j];
    if (!v.is_integer())
      throw std::runtime_error("ok_multiply: product left the integral basis (non-integral result)");
    out[j] = v.num();
  }
  return out;
}

std::vector<PrimeIdealAboveP> split_prime(const NumberField& field, int p) {
  if (!field.power_basis)
    throw std::runtime_error("split_prime: stored basis of " + field.tag +
                             " is not a power basis; splitting via the minimal polynomial would "
                             "be wrong when p divides the index");
  if (!is_prime(p) || p > 100) throw std::runtime_error("split_prime: p must be a prime <= 100");
  int n = field.degree;
  auto factors = factor_mod_p(field.min_poly, p);
  int ef_sum = 0;
  std::vector<PrimeIdealAboveP> ideals;
  for (const auto& fac : factors) {
    PrimeIdealAboveP ideal;
    ideal.p = p;
    ideal.e = fac.multiplicity;
    ideal.f = fac.degree();
    ideal.factor_poly = fac.coeffs;
    ideal.root_mod_p = (ideal.f == 1) ? (p - fac.coeffs[0]) % p : -1;
    ef_sum += ideal.e * ideal.f;
    // Z-basis: HNF of the stack {p * omega_j} U {P_i(alpha) * omega_j}.
    IMat stack(2 * n, n);
    for (int j = 0; j < n; j++) stack.at(j, j) = p;
    std::vector<long long> gen(n, 0);
    for (int i = 0; i <= fac.degree() && i < n; i++) gen[i] = fac.coeffs[i];
    // A degree-n factor means the ideal is (p) itself; generator reduces to 0.
    if (fac.degree() == n)
      gen.assign(n, 0);
    for (int j = 0; j < n; j++) {
      std::vector<long long> omega(n, 0);
      omega[j] = 1;
      auto prod = ok_multiply(field, gen, omega);
      for (int c = 0; c < n; c++) stack.at(n + j, c) = prod[c];
    }
    ideal.zbasis = hnf(stack);
    if (ideal.zbasis.rows != n) throw std::runtime_error("split_prime: ideal basis rank defect");
    long long det = std::llabs(int_det(ideal.zbasis));
    long long expected = 1;
    for (int i = 0; i < ideal.f; i++) expected *= p;
    if (det != expected) throw std::runtime_error("split_prime: ideal index is not p^f");
    ideals.push_back(std::move(ideal));
  }
  if (ef_sum != n) throw std::runtime_error("split_prime: sum of e*f does not equal the degree");
  std::sort(ideals.begin(), ideals.end(), [](const PrimeIdealAboveP& a, const PrimeIdealAboveP& b) {
    if (a.f != b.f) return a.f < b.f;
    return a.root_mod_p < b.root_mod_p;
  });
  return ideals;
}

Mat ideal_embedding(const NumberField& field, const PrimeIdealAboveP& ideal) {
  int n = field.degree;
  if (ideal.zbasis.rows != n || ideal.zbasis.cols != n)
    throw std::runtime_error("ideal_embedding: ideal does not belong to this field");
  Mat d(n, n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) d(i, j) = double(ideal.zbasis.at(i, j));
  return matmul(d, field.embedding);
}

int reduce_mod_ideal(const NumberField& field, const PrimeIdealAboveP& ideal,
                     std::span<const long long> coords) {
  if (ideal.f != 1) throw std::runtime_error("reduce_mod_ideal: residue degree must be 1");
  if (!field.power_basis) throw std::runtime_error("reduce_mod_ideal: requires a power basis");
  long long p = ideal.p, r = ideal.root_mod_p;
  long long v = 0, pw = 1;
  for (int i = 0; i < field.degree; i++) {
    v = (v + (coords[i] % p) * pw) % p;
    pw = (pw * r) % p;
  }
  return int((v % p + p) % p);
}

double trace_embedding_sum(const NumberField& field, std::span<const long long> coords) {
  std::vector<double> c(coords.size());
  for (size_t i = 0; i < c.size(); i++) c[i] = double(coords[i]);
  auto emb = row_times(c, field.embedding);
  double t = 0;
  for (int j = 0; j < field.r1; j++) t += emb[j];
  for (int k = 0; k < field.r2; k++) t += 2.0 * emb[field.r1 + 2 * k];
  return t;
}

long long field_norm_exact(const NumberField& field, std::span<const long long> coords) {
  int n = field.degree;
  IMat mult(n, n);
  std::vector<long long> x(coords.begin(), coords.end());
  for (int i = 0; i < n; i++) {
    std::vector<long long> omega(n, 0);
    omega[i] = 1;
    auto prod = ok_multiply(field, x, omega);
    for (int j = 0; j < n; j++) mult.at(i, j) = prod[j];
  }
  return int_det(mult);
}

}  // namespace latdiv
