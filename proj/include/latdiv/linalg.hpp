#pragma once

#include <span>
#include <vector>

namespace latdiv {

// Dense row-major matrix. Sized for the small algebraic kernels (n <= 8)
// and for lattice generators up to a few thousand rows.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0.0) {}

  static Mat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  double operator()(int r, int c) const { return a_[size_t(r) * cols_ + c]; }
  std::span<const double> row(int r) const { return {a_.data() + size_t(r) * cols_, size_t(cols_)}; }
  std::span<double> row(int r) { return {a_.data() + size_t(r) * cols_, size_t(cols_)}; }
  const std::vector<double>& data() const { return a_; }

  double max_abs() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

Mat matmul(const Mat& a, const Mat& b);
Mat transpose(const Mat& a);
Mat kron(const Mat& a, const Mat& b);

// v * M for a row vector v.
std::vector<double> row_times(std::span<const double> v, const Mat& m);

double dot(std::span<const double> a, std::span<const double> b);
double sq_norm(std::span<const double> a);

// PA = LU with partial pivoting. Factor once, solve many.
class Lu {
 public:
  explicit Lu(Mat a);

  bool singular(double rel_tol = 1e-12) const;
  double log_abs_det() const;   // -inf when singular
  int det_sign() const;         // 0 when singular

  // Solves A x = b.
  std::vector<double> solve(std::span<const double> b) const;

 private:
  Mat lu_;
  std::vector<int> piv_;
  int sign_ = 1;
  double scale_ = 0.0;  // max |a_ij| of the input
};

// Thin Householder QR of an m x r matrix (m >= r) with R forced to a
// positive diagonal. q is m x r, r is r x r upper triangular.
struct Qr {
  Mat q;
  Mat r;
};
Qr qr_decompose(const Mat& a);

}  // namespace latdiv
