#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace tess {

// Exact rational on 64-bit terms with 128-bit intermediates.  Residuals of
// the mean-value identities on integer-count fixtures reduce to arithmetic in
// this type, so they are exactly zero rather than zero up to rounding.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n) : num(n), den(1) {}
  Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static Rat from_i128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) {
      throw std::overflow_error("rational overflow");
    }
    return Rat{static_cast<std::int64_t>(n), static_cast<std::int64_t>(d),
               /*already_normal=*/true};
  }

  friend Rat operator+(Rat a, Rat b) {
    return from_i128(static_cast<__int128>(a.num) * b.den +
                         static_cast<__int128>(b.num) * a.den,
                     static_cast<__int128>(a.den) * b.den);
  }
  friend Rat operator-(Rat a, Rat b) {
    return from_i128(static_cast<__int128>(a.num) * b.den -
                         static_cast<__int128>(b.num) * a.den,
                     static_cast<__int128>(a.den) * b.den);
  }
  friend Rat operator*(Rat a, Rat b) {
    return from_i128(static_cast<__int128>(a.num) * b.num,
                     static_cast<__int128>(a.den) * b.den);
  }
  friend Rat operator/(Rat a, Rat b) {
    if (b.num == 0) throw std::domain_error("rational division by zero");
    return from_i128(static_cast<__int128>(a.num) * b.den,
                     static_cast<__int128>(a.den) * b.num);
  }
  friend Rat operator-(Rat a) { return Rat{-a.num, a.den, true}; }

  friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(Rat a, Rat b) { return !(a == b); }

  bool is_zero() const { return num == 0; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

 private:
  Rat(std::int64_t n, std::int64_t d, bool) : num(n), den(d) {}
};

}  // namespace tess
