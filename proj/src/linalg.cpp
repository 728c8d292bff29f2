#include "latdiv/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace latdiv {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; i++) m(i, i) = 1.0;
  return m;
}

double Mat::max_abs() const {
  double m = 0;
  for (double v : a_) m = std::max(m, std::fabs(v));
  return m;
}

Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw std::runtime_error("matmul: dimension mismatch");
  Mat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); i++)
    for (int k = 0; k < a.cols(); k++) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); j++) c(i, j) += aik * b(k, j);
    }
  return c;
}

Mat transpose(const Mat& a) {
  Mat t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); i++)
    for (int j = 0; j < a.cols(); j++) t(j, i) = a(i, j);
  return t;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat c(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); i++)
    for (int j = 0; j < a.cols(); j++) {
      double aij = a(i, j);
      if (aij == 0.0) continue;
      for (int r = 0; r < b.rows(); r++)
        for (int s = 0; s < b.cols(); s++) c(i * b.rows() + r, j * b.cols() + s) = aij * b(r, s);
    }
  return c;
}

std::vector<double> row_times(std::span<const double> v, const Mat& m) {
  if (int(v.size()) != m.rows()) throw std::runtime_error("row_times: dimension mismatch");
  std::vector<double> out(m.cols(), 0.0);
  for (int i = 0; i < m.rows(); i++) {
    double vi = v[i];
    if (vi == 0.0) continue;
    for (int j = 0; j < m.cols(); j++) out[j] += vi * m(i, j);
  }
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); i++) s += a[i] * b[i];
  return s;
}

double sq_norm(std::span<const double> a) { return dot(a, a); }

Lu::Lu(Mat a) : lu_(std::move(a)) {
  if (lu_.rows() != lu_.cols()) throw std::runtime_error("Lu: matrix not square");
  int n = lu_.rows();
  piv_.resize(n);
  scale_ = lu_.max_abs();
  for (int col = 0; col < n; col++) {
    int best = col;
    for (int r = col + 1; r < n; r++)
      if (std::fabs(lu_(r, col)) > std::fabs(lu_(best, col))) best = r;
    piv_[col] = best;
    if (best != col) {
      for (int j = 0; j < n; j++) std::swap(lu_(col, j), lu_(best, j));
      sign_ = -sign_;
    }
    double p = lu_(col, col);
    if (p == 0.0) continue;
    for (int r = col + 1; r < n; r++) {
      double f = lu_(r, col) / p;
      lu_(r, col) = f;
      if (f == 0.0) continue;
      for (int j = col + 1; j < n; j++) lu_(r, j) -= f * lu_(col, j);
    }
  }
}

bool Lu::singular(double rel_tol) const {
  double thresh = rel_tol * (scale_ > 0 ? scale_ : 1.0);
  for (int i = 0; i < lu_.rows(); i++)
    if (std::fabs(lu_(i, i)) <= thresh) return true;
  return false;
}

double Lu::log_abs_det() const {
  double s = 0;
  for (int i = 0; i < lu_.rows(); i++) {
    double d = std::fabs(lu_(i, i));
    if (d == 0.0) return -std::numeric_limits<double>::infinity();
    s += std::log(d);
  }
  return s;
}

int Lu::det_sign() const {
  int s = sign_;
  for (int i = 0; i < lu_.rows(); i++) {
    double d = lu_(i, i);
    if (d == 0.0) return 0;
    if (d < 0.0) s = -s;
  }
  return s;
}

std::vector<double> Lu::solve(std::span<const double> b) const {
  int n = lu_.rows();
  if (int(b.size()) != n) throw std::runtime_error("Lu::solve: dimension mismatch");
  std::vector<double> x(b.begin(), b.end());
  for (int i = 0; i < n; i++)
    if (piv_[i] != i) std::swap(x[i], x[piv_[i]]);
  for (int i = 1; i < n; i++) {
    double s = x[i];
    for (int j = 0; j < i; j++) s -= lu_(i, j) * x[j];
    x[i] = s;
  }
  for (int i = n - 1; i >= 0; i--) {
    double s = x[i];
    for (int j = i + 1; j < n; j++) s -= lu_(i, j) * x[j];
    double d = lu_(i, i);
    if (d == 0.0) throw std::runtime_error("Lu::solve: singular matrix");
    x[i] = s / d;
  }
  return x;
}

Qr qr_decompose(const Mat& a) {
  int m = a.rows(), r = a.cols();
  if (m < r) throw std::runtime_error("qr_decompose: more columns than rows");
  Mat work = a;
  // Accumulate Householder vectors, then form thin Q explicitly.
  std::vector<std::vector<double>> vs;
  vs.reserve(r);
  for (int k = 0; k < r; k++) {
    std::vector<double> v(m - k, 0.0);
    double norm = 0;
    for (int i = k; i < m; i++) {
      v[i - k] = work(i, k);
      norm += v[i - k] * v[i - k];
    }
    norm = std::sqrt(norm);
    double alpha = (v[0] >= 0 ? -norm : norm);
    v[0] -= alpha;
    double vsq = sq_norm(v);
    if (vsq > 0) {
      for (int j = k; j < r; j++) {
        double s = 0;
        for (int i = k; i < m; i++) s += v[i - k] * work(i, j);
        double f = 2.0 * s / vsq;
        for (int i = k; i < m; i++) work(i, j) -= f * v[i - k];
      }
    }
    vs.push_back(std::move(v));
  }
  Qr out;
  out.r = Mat(r, r);
  for (int i = 0; i < r; i++)
    for (int j = i; j < r; j++) out.r(i, j) = work(i, j);
  // Apply the reflectors to the first r identity columns.
  out.q = Mat(m, r);
  for (int c = 0; c < r; c++) {
    std::vector<double> e(m, 0.0);
    e[c] = 1.0;
    for (int k = r - 1; k >= 0; k--) {
      const auto& v = vs[k];
      double vsq = sq_norm(v);
      if (vsq == 0) continue;
      double s = 0;
      for (int i = k; i < m; i++) s += v[i - k] * e[i];
      double f = 2.0 * s / vsq;
      for (int i = k; i < m; i++) e[i] -= f * v[i - k];
    }
    for (int i = 0; i < m; i++) out.q(i, c) = e[i];
  }
  // Normalize R to a positive diagonal.
  for (int i = 0; i < r; i++) {
    if (out.r(i, i) < 0) {
      for (int j = i; j < r; j++) out.r(i, j) = -out.r(i, j);
      for (int row = 0; row < m; row++) out.q(row, i) = -out.q(row, i);
    }
  }
  return out;
}

}  // namespace latdiv
