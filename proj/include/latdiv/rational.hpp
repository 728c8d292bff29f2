#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace latdiv {

// Exact rational arithmetic on 64-bit numerator/denominator. Everything this
// library stores as a rational (integral-basis coefficients, reduced
// products) stays tiny; 128-bit intermediates catch the rest.
class Rat {
 public:
  Rat() = default;
  Rat(long long n) : num_(n) {}
  Rat(long long n, long long d);

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const { return double(num_) / double(den_); }
  std::string to_string() const;

  Rat operator-() const { return Rat(-num_, den_); }
  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator/(const Rat& a, const Rat& b);
  friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  static Rat make128(__int128 n, __int128 d, const char* what);

  long long num_ = 0;
  long long den_ = 1;
};

using RatRow = std::vector<Rat>;
using RatMat = std::vector<RatRow>;

RatMat rat_identity(int n);
bool rat_is_identity(const RatMat& m);
RatMat rat_inverse(const RatMat& m);  // Gauss-Jordan; throws on singular

}  // namespace latdiv
