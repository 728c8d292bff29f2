#pragma once

#include <memory>
#include <span>
#include <vector>

#include "latdiv/linalg.hpp"

namespace latdiv {

// Full-row-rank generator set: rows of `rows()` generate the lattice.
class LatticeBasis {
 public:
  explicit LatticeBasis(Mat generators);

  const Mat& rows() const { return b_; }
  const Mat& gram() const { return gram_; }
  int rank() const { return b_.rows(); }
  int ambient_dim() const { return b_.cols(); }

 private:
  Mat b_;
  Mat gram_;
};

struct CvpResult {
  std::vector<long long> z;
  std::vector<double> point;  // z * B
  double sq_dist = 0.0;
  long long nodes_visited = 0;
};

// Exact closest-point search, Schnorr-Euchner enumeration with the Babai
// point as initial radius. Ties in distance break to the lexicographically
// smallest coefficient vector. Columns of the fading-scaled basis that have
// collapsed below 1e-9 of the largest row norm are handled by exhaustive
// search over a +-64 box on those coordinates.
class SphereDecoder {
 public:
  explicit SphereDecoder(LatticeBasis basis);
  CvpResult solve(std::span<const double> y) const;

 private:
  LatticeBasis basis_;
  std::vector<int> healthy_, degenerate_;
  Mat q_, r_;  // thin QR of the healthy rows, transposed to column form
};

CvpResult sphere_decode(const LatticeBasis& basis, std::span<const double> y);

// Exhaustive argmin over the integer box |z_i| <= box; same tie rule.
CvpResult brute_force_cvp(const LatticeBasis& basis, std::span<const double> y, int box);

}  // namespace latdiv
