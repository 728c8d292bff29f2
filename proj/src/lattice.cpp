#include "latdiv/lattice.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace latdiv {

ConstructionALattice::ConstructionALattice(NumberField field, PrimeIdealAboveP ideal, LinearCode code)
    : field_(std::move(field)), ideal_(std::move(ideal)), code_(std::move(code)) {
  if (ideal_.f != 1)
    throw std::runtime_error(
        "build_lattice: residue degree of the ideal is not 1; this field cannot host a " +
        std::to_string(code_.p) + "-ary alphabet through it");
  if (code_.p != ideal_.p) throw std::runtime_error("build_lattice: code alphabet != ideal prime");
  int n = field_.degree, N = code_.N, k = code_.k;
  if (n > 6) throw std::runtime_error("build_lattice: field degree above 6");
  if (N > 2048) throw std::runtime_error("build_lattice: code length above 2048");
  dim_ = n * N;
  ideal_basis_ = ideal_embedding(field_, ideal_);

  gen_ = Mat(dim_, dim_);
  const Mat& m = field_.embedding;
  auto put_block = [&](int br, int bc, const Mat& blk, double scale) {
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) gen_(br * n + i, bc * n + j) = scale * blk(i, j);
  };
  for (int i = 0; i < k; i++) {
    put_block(i, i, m, 1.0);
    for (int j = 0; j < N - k; j++)
      if (int a = code_.a_at(i, j); a != 0) put_block(i, k + j, m, double(a));
  }
  for (int j = 0; j < N - k; j++) put_block(k + j, k + j, ideal_basis_, 1.0);

  log_volume_ = -field_.r2 * N * std::log(2.0) + 0.5 * N * std::log(std::fabs(double(field_.disc))) +
                (N - k) * std::log(double(code_.p));
  volume_ = std::exp(log_volume_);

  if (code_.p == 2) tanner_ = std::make_shared<const TannerGraph>(code_);
  gen_lu_ = std::make_shared<const Lu>(transpose(gen_));
  double log_det = gen_lu_->log_abs_det();
  if (std::fabs(log_det - log_volume_) > 1e-6 * std::max(1.0, std::fabs(log_volume_)))
    throw std::runtime_error("build_lattice: generator determinant disagrees with the volume formula");
}

ConstructionALattice build_lattice(NumberField field, PrimeIdealAboveP ideal, LinearCode code) {
  return ConstructionALattice(std::move(field), std::move(ideal), std::move(code));
}

const TannerGraph& ConstructionALattice::tanner() const {
  if (!tanner_) throw std::runtime_error("tanner: binary underlying codes only");
  return *tanner_;
}

std::vector<double> ConstructionALattice::coordinates_of(std::span<const double> x) const {
  if (int(x.size()) != dim_) throw std::runtime_error("coordinates_of: dimension mismatch");
  int n = field_.degree;
  // Channel order -> systematic order block permutation.
  std::vector<double> xs(dim_);
  for (int j = 0; j < code_.N; j++)
    for (int i = 0; i < n; i++) xs[size_t(j) * n + i] = x[size_t(code_.perm[j]) * n + i];
  return gen_lu_->solve(xs);
}

LatticePoint encode_point(const ConstructionALattice& lat, std::span<const int> codeword,
                          std::span<const long long> ideal_coords) {
  const auto& code = lat.code();
  int n = lat.field().degree;
  if (int(codeword.size()) != code.N) throw std::runtime_error("encode_point: codeword length");
  if (int(ideal_coords.size()) != lat.dim()) throw std::runtime_error("encode_point: coordinate length");
  for (int v : syndrome(code, codeword))
    if (v != 0) throw std::runtime_error("encode_point: word is not a codeword");
  LatticePoint pt;
  pt.codeword.assign(codeword.begin(), codeword.end());
  pt.ideal_coords.assign(ideal_coords.begin(), ideal_coords.end());
  pt.x.assign(lat.dim(), 0.0);
  const Mat& p = lat.ideal_basis();
  for (int b = 0; b < code.N; b++)
    for (int i = 0; i < n; i++) {
      double v = double(codeword[b]);
      for (int r = 0; r < n; r++) v += double(ideal_coords[size_t(b) * n + r]) * p(r, i);
      pt.x[size_t(b) * n + i] = v;
    }
  return pt;
}

bool check_membership(const ConstructionALattice& lat, std::span<const double> x, double tol) {
  auto u = lat.coordinates_of(x);
  for (double v : u)
    if (std::fabs(v - std::llround(v)) > tol) return false;
  return true;
}

ProductDistance min_product_distance(const NumberField& field, double enum_radius) {
  if (!field.totally_real())
    throw std::runtime_error("min_product_distance: field is not totally real");
  int n = field.degree;
  long long radius = llround(std::floor(enum_radius));
  if (radius < 1) throw std::runtime_error("min_product_distance: radius too small");
  ProductDistance out;
  out.d_pmin = std::numeric_limits<double>::infinity();
  std::vector<long long> a(n, 0);
  std::vector<double> coords(n);
  // Enumerate half the box (leading sign fixed); |norm| is sign-invariant.
  auto visit = [&](auto&& self, int level, bool leading_nonzero) -> void {
    if (level == n) {
      if (!leading_nonzero) return;
      for (int i = 0; i < n; i++) coords[i] = double(a[i]);
      auto emb = row_times(coords, field.embedding);
      double prod = 1;
      for (double v : emb) prod *= std::fabs(v);
      if (prod < out.d_pmin) {
        out.d_pmin = prod;
        out.argmin = a;
      }
      return;
    }
    long long lo = leading_nonzero ? -radius : 0;
    for (long long v = lo; v <= radius; v++) {
      a[level] = v;
      self(self, level + 1, leading_nonzero || v != 0);
    }
  };
  visit(visit, 0, false);
  out.nd_pmin = out.d_pmin / std::sqrt(double(field.disc));
  return out;
}

Mat cyclotomic_scaled_generator(const LinearCode& code) {
  int N = code.N, k = code.k;
  double s = 1.0 / std::sqrt(double(code.p));
  Mat g(N, N);
  for (int i = 0; i < k; i++) {
    g(i, i) = s;
    for (int j = 0; j < N - k; j++) g(i, k + j) = s * double(code.a_at(i, j));
  }
  for (int j = 0; j < N - k; j++) g(k + j, k + j) = s * double(code.p);
  return g;
}

}  // namespace latdiv
