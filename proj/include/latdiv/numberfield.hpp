#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latdiv/intmat.hpp"
#include "latdiv/linalg.hpp"
#include "latdiv/polynomial.hpp"
#include "latdiv/rational.hpp"

namespace latdiv {

// Degree-n number field with a fixed integral basis. `basis` expresses each
// basis element omega_i in the power basis {1, alpha, ..., alpha^{n-1}} of
// the stored minimal polynomial; all catalog fields are monogenic, so basis
// is the identity there. The embedding matrix has M[i][j] = sigma_j(omega_i)
// with complex conjugate pairs expanded to (real, imaginary) column pairs.
struct NumberField {
  IntPolynomial min_poly;
  int degree = 0;
  RatMat basis;
  bool power_basis = true;
  std::vector<std::complex<double>> roots;  // sorted desc by (re, im)
  int r1 = 0, r2 = 0;
  long long disc = 0;
  Mat embedding;
  std::string tag;

  bool totally_real() const { return r2 == 0; }
};

// A prime ideal over the rational prime p. zbasis rows are a Z-basis of the
// ideal in omega coordinates, in Hermite normal form; |det| = p^f.
struct PrimeIdealAboveP {
  int p = 0;
  int e = 0;  // ramification index
  int f = 0;  // residue degree
  int root_mod_p = -1;  // set iff f == 1
  IMat zbasis;
  std::vector<int> factor_poly;  // the irreducible factor mod p, constant first
};

struct FieldSpec {
  enum class Kind { quadratic, cubic_catalog, quartic_catalog, cyclotomic, raw };
  Kind kind = Kind::quadratic;
  long long param = 0;  // m, catalog id, or p
  // raw fields only:
  IntPolynomial raw_min_poly;
  RatMat raw_basis;

  static FieldSpec parse(const std::string& text);  // e.g. "quadratic(10)"
  std::string to_string() const;
};

// Catalog of shipped fields, parsed from the structured text format
// described in the README (also shipped as data/fields.cat).
class FieldCatalog {
 public:
  struct Record {
    std::string tag;
    IntPolynomial min_poly;
    RatMat basis;
    long long disc = 0;
    int r1 = 0, r2 = 0;
  };

  static const FieldCatalog& builtin();
  static FieldCatalog parse(const std::string& text);
  static FieldCatalog load(const std::string& path);

  const Record* find(const std::string& tag) const;
  const std::vector<Record>& records() const { return records_; }

 private:
  std::vector<Record> records_;
};

NumberField build_field(const FieldSpec& spec, const FieldCatalog& catalog = FieldCatalog::builtin());
NumberField build_field(const std::string& spec_text, const FieldCatalog& catalog = FieldCatalog::builtin());

// Exact product in O_K, both operands and result in omega coordinates.
std::vector<long long> ok_multiply(const NumberField& field, std::span<const long long> a,
                                   std::span<const long long> b);

// Factorization of (p) into prime ideals, via the minimal polynomial mod p.
// Requires the stored basis to be a power basis (all catalog fields).
std::vector<PrimeIdealAboveP> split_prime(const NumberField& field, int p);

// Embedded ideal basis D*M; rows generate sigma(ideal) in R^n.
Mat ideal_embedding(const NumberField& field, const PrimeIdealAboveP& ideal);

// Componentwise reduction O_K -> F_p modulo a residue-degree-one ideal.
int reduce_mod_ideal(const NumberField& field, const PrimeIdealAboveP& ideal,
                     std::span<const long long> coords);

// Trace over Q of the element with the given omega coordinates, computed
// from the embeddings (conjugate pairs weighted twice on the real part).
double trace_embedding_sum(const NumberField& field, std::span<const long long> coords);

// Field norm computed exactly as det of the multiplication-by-x matrix.
long long field_norm_exact(const NumberField& field, std::span<const long long> coords);

}  // namespace latdiv
