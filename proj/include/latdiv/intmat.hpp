#pragma once

#include <span>
#include <vector>

namespace latdiv {

// Small exact integer matrix, row-major.
struct IMat {
  int rows = 0, cols = 0;
  std::vector<long long> a;

  IMat() = default;
  IMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, 0) {}

  long long& at(int r, int c) { return a[size_t(r) * cols + c]; }
  long long at(int r, int c) const { return a[size_t(r) * cols + c]; }
  std::span<const long long> row(int r) const { return {a.data() + size_t(r) * cols, size_t(cols)}; }

  friend bool operator==(const IMat& x, const IMat& y) = default;
};

// Row-style Hermite normal form: echelon shape, positive pivots, entries
// above each pivot reduced into [0, pivot). Zero rows are dropped, so the
// result has rank many rows. Two integer row spans are equal iff their HNFs
// are equal.
IMat hnf(const IMat& m);

// Exact membership of v in the Z-row-span of an HNF matrix.
bool hnf_contains(const IMat& h, std::span<const long long> v);

// Exact determinant of a square integer matrix (fraction-free elimination).
long long int_det(const IMat& m);

}  // namespace latdiv
