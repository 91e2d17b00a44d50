#pragma once

// Exact rational arithmetic for torus coordinates. Intermediates go through
// 128-bit integers; results that no longer fit in 64 bits throw.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace glasner {

namespace detail {

inline unsigned __int128 abs128(__int128 v) {
  return v < 0 ? static_cast<unsigned __int128>(-(v + 1)) + 1
               : static_cast<unsigned __int128>(v);
}

inline unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
  while (b != 0) {
    const unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline int bit_width128(unsigned __int128 v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  if (hi != 0) return 64 + std::bit_width(hi);
  return std::bit_width(static_cast<std::uint64_t>(v));
}

}  // namespace detail

/// Reduced fraction num/den with den >= 1 and gcd(|num|, den) = 1.
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n, long long d = 1) { *this = make(n, d); }

  static Rat make(__int128 n, __int128 d) {
    if (d == 0) throw std::invalid_argument("Rat: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const unsigned __int128 g = detail::gcd128(detail::abs128(n), static_cast<unsigned __int128>(d));
    if (g > 1) {
      n /= static_cast<__int128>(g);
      d /= static_cast<__int128>(g);
    }
    constexpr __int128 max64 = std::numeric_limits<long long>::max();
    if (n > max64 || n < -max64 || d > max64) {
      throw std::overflow_error("Rat: value does not fit in 64 bits");
    }
    Rat r;
    r.num = static_cast<long long>(n);
    r.den = static_cast<long long>(d);
    return r;
  }

  Rat operator+(const Rat& o) const {
    return make(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den,
                static_cast<__int128>(den) * o.den);
  }
  Rat operator-(const Rat& o) const {
    return make(static_cast<__int128>(num) * o.den - static_cast<__int128>(o.num) * den,
                static_cast<__int128>(den) * o.den);
  }
  Rat operator*(const Rat& o) const {
    return make(static_cast<__int128>(num) * o.num, static_cast<__int128>(den) * o.den);
  }
  Rat operator-() const {
    Rat r;
    r.num = -num;
    r.den = den;
    return r;
  }

  /// Representative in [0, 1).
  Rat mod1() const {
    long long r = num % den;
    if (r < 0) r += den;
    Rat out;
    out.num = r;
    out.den = den;
    return out;
  }

  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
  }
  bool operator<=(const Rat& o) const { return !(o < *this); }
  bool operator>(const Rat& o) const { return o < *this; }
  bool operator>=(const Rat& o) const { return !(*this < o); }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// Exact three-way comparison of a rational with a double: -1, 0 or +1 as
/// num/den is below, equal to, or above x.
inline int compare(const Rat& r, double x) {
  if (std::isnan(x)) throw std::invalid_argument("Rat comparison with NaN");
  const int rs = (r.num > 0) - (r.num < 0);
  const int xs = (x > 0.0) - (x < 0.0);
  if (rs != xs) return rs < xs ? -1 : 1;
  if (rs == 0) return 0;
  if (std::isinf(x)) return xs > 0 ? -1 : 1;

  // |x| = m * 2^k with integer m < 2^53; compare |num| * 2^a vs m * den * 2^b.
  int exp = 0;
  const double mant = std::frexp(std::abs(x), &exp);
  const auto m = static_cast<std::uint64_t>(std::ldexp(mant, 53));
  const int k = exp - 53;
  const int a = k < 0 ? -k : 0;
  const int b = k > 0 ? k : 0;

  const unsigned __int128 lhs_base = detail::abs128(static_cast<__int128>(r.num));
  const unsigned __int128 rhs_base =
      static_cast<unsigned __int128>(m) * static_cast<std::uint64_t>(r.den);

  const int lhs_bits = detail::bit_width128(lhs_base) + a;
  const int rhs_bits = detail::bit_width128(rhs_base) + b;
  int mag;  // sign of |r| - |x|
  if (lhs_bits > rhs_bits) {
    mag = 1;
  } else if (rhs_bits > lhs_bits) {
    mag = -1;
  } else {
    // Equal widths: both shifted values are below 2^118 and fit in 128 bits.
    const unsigned __int128 lhs = lhs_base << a;
    const unsigned __int128 rhs = rhs_base << b;
    mag = lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }
  return rs > 0 ? mag : -mag;
}

}  // namespace glasner
