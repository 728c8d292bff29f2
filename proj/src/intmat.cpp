#include "latdiv/intmat.hpp"

#include <cstdlib>
#include <stdexcept>

namespace latdiv {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) q--;
  return q;
}

void row_axpy(IMat& m, int dst, int src, long long f) {
  if (f == 0) return;
  for (int j = 0; j < m.cols; j++) m.at(dst, j) -= f * m.at(src, j);
}

}  // namespace

IMat hnf(const IMat& in) {
  IMat m = in;
  int r = 0;
  for (int col = 0; col < m.cols && r < m.rows; col++) {
    // Euclidean reduction in this column among rows r..end.
    for (;;) {
      int best = -1;
      for (int i = r; i < m.rows; i++) {
        long long v = m.at(i, col);
        if (v == 0) continue;
        if (best < 0 || std::llabs(v) < std::llabs(m.at(best, col))) best = i;
      }
      if (best < 0) break;
      if (best != r)
        for (int j = 0; j < m.cols; j++) std::swap(m.at(r, j), m.at(best, j));
      bool clean = true;
      for (int i = r + 1; i < m.rows; i++) {
        long long v = m.at(i, col);
        if (v == 0) continue;
        row_axpy(m, i, r, v / m.at(r, col));
        if (m.at(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (m.at(r, col) == 0) continue;
    if (m.at(r, col) < 0)
      for (int j = 0; j < m.cols; j++) m.at(r, j) = -m.at(r, j);
    for (int i = 0; i < r; i++) row_axpy(m, i, r, floor_div(m.at(i, col), m.at(r, col)));
    r++;
  }
  IMat out(r, m.cols);
  for (int i = 0; i < r; i++)
    for (int j = 0; j < m.cols; j++) out.at(i, j) = m.at(i, j);
  return out;
}

bool hnf_contains(const IMat& h, std::span<const long long> v) {
  if (int(v.size()) != h.cols) throw std::runtime_error("hnf_contains: dimension mismatch");
  std::vector<long long> w(v.begin(), v.end());
  for (int i = 0; i < h.rows; i++) {
    int piv_col = 0;
    while (piv_col < h.cols && h.at(i, piv_col) == 0) piv_col++;
    if (piv_col == h.cols) continue;
    // Everything left of this pivot must already be cleared.
    for (int j = 0; j < piv_col; j++)
      if (w[j] != 0) return false;
    long long p = h.at(i, piv_col);
    if (w[piv_col] % p != 0) return false;
    long long q = w[piv_col] / p;
    for (int j = 0; j < h.cols; j++) w[j] -= q * h.at(i, j);
  }
  for (long long x : w)
    if (x != 0) return false;
  return true;
}

long long int_det(const IMat& in) {
  if (in.rows != in.cols) throw std::runtime_error("int_det: matrix not square");
  int n = in.rows;
  std::vector<__int128> a(size_t(n) * n);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) a[size_t(i) * n + j] = in.at(i, j);
  auto at = [&](int i, int j) -> __int128& { return a[size_t(i) * n + j]; };
  // Bareiss fraction-free elimination.
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; k++) {
    if (at(k, k) == 0) {
      int sw = -1;
      for (int i = k + 1; i < n; i++)
        if (at(i, k) != 0) {
          sw = i;
          break;
        }
      if (sw < 0) return 0;
      for (int j = 0; j < n; j++) std::swap(at(k, j), at(sw, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; i++)
      for (int j = k + 1; j < n; j++) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  __int128 d = at(n - 1, n - 1) * sign;
  if (d > __int128(INT64_MAX) || d < __int128(INT64_MIN)) throw std::overflow_error("int_det overflow");
  return (long long)d;
}

}  // namespace latdiv
