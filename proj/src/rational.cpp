#include "latdiv/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace latdiv {

namespace {

long long checked_ll(__int128 v, const char* what) {
  if (v > __int128(INT64_MAX) || v < __int128(INT64_MIN))
    throw std::overflow_error(std::string("rational overflow in ") + what);
  return (long long)v;
}

}  // namespace

Rat Rat::make128(__int128 n, __int128 d, const char* what) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 a = n < 0 ? -n : n, b = d;
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  Rat r;
  r.num_ = checked_ll(n, what);
  r.den_ = checked_ll(d, what);
  return r;
}

Rat::Rat(long long n, long long d) {
  Rat r = make128(n, d, "ctor");
  num_ = r.num_;
  den_ = r.den_;
}

std::string Rat::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat operator+(const Rat& a, const Rat& b) {
  return Rat::make128(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_, __int128(a.den_) * b.den_, "+");
}
Rat operator-(const Rat& a, const Rat& b) {
  return Rat::make128(__int128(a.num_) * b.den_ - __int128(b.num_) * a.den_, __int128(a.den_) * b.den_, "-");
}
Rat operator*(const Rat& a, const Rat& b) {
  return Rat::make128(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_, "*");
}
Rat operator/(const Rat& a, const Rat& b) {
  if (b.is_zero()) throw std::domain_error("rational division by zero");
  return Rat::make128(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_, "/");
}

RatMat rat_identity(int n) {
  RatMat m(n, RatRow(n, Rat(0)));
  for (int i = 0; i < n; i++) m[i][i] = Rat(1);
  return m;
}

bool rat_is_identity(const RatMat& m) {
  for (size_t i = 0; i < m.size(); i++)
    for (size_t j = 0; j < m[i].size(); j++)
      if (!(m[i][j] == Rat(i == j ? 1 : 0))) return false;
  return true;
}

RatMat rat_inverse(const RatMat& m) {
  int n = int(m.size());
  RatMat a = m;
  RatMat inv = rat_identity(n);
  for (int col = 0; col < n; col++) {
    int piv = -1;
    for (int r = col; r < n; r++)
      if (!a[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::runtime_error("rat_inverse: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rat d = a[col][col];
    for (int j = 0; j < n; j++) {
      a[col][j] = a[col][j] / d;
      inv[col][j] = inv[col][j] / d;
    }
    for (int r = 0; r < n; r++) {
      if (r == col || a[r][col].is_zero()) continue;
      Rat f = a[r][col];
      for (int j = 0; j < n; j++) {
        a[r][j] = a[r][j] - f * a[col][j];
        inv[r][j] = inv[r][j] - f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace latdiv
