#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tpn {

// Exact rational with int64 numerator/denominator, always normalized
// (gcd 1, den > 0). Bound arithmetic must never round: timing endpoints are
// small (days, simple fractions), but the closure adds bounds millions of
// times, so intermediates go through __int128 and narrowing is checked.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rat() = default;
  constexpr Rat(std::int64_t n) : num(n), den(1) {}
  Rat(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    normalize();
  }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num == 0) {
      den = 1;
      return;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num /= g;
    den /= g;
  }

  bool is_integer() const { return den == 1; }
  bool is_negative() const { return num < 0; }

  friend Rat operator-(const Rat& a) { return make_checked(-static_cast<__int128>(a.num), a.den); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    if (a.den == 1 && b.den == 1)
      return make_checked(static_cast<__int128>(a.num) + b.num, 1);
    __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
    __int128 d = static_cast<__int128>(a.den) * b.den;
    return make_checked(n, d);
  }

  friend Rat operator-(const Rat& a, const Rat& b) {
    if (a.den == 1 && b.den == 1)
      return make_checked(static_cast<__int128>(a.num) - b.num, 1);
    __int128 n = static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den;
    __int128 d = static_cast<__int128>(a.den) * b.den;
    return make_checked(n, d);
  }

  friend Rat operator*(const Rat& a, const Rat& b) {
    return make_checked(static_cast<__int128>(a.num) * b.num,
                        static_cast<__int128>(a.den) * b.den);
  }

  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

 private:
  // Normalizes an __int128 fraction and narrows, rejecting true overflow.
  static Rat make_checked(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) d = 1;
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi)
      throw std::overflow_error("rational arithmetic overflow");
    Rat r;
    r.num = static_cast<std::int64_t>(n);
    r.den = static_cast<std::int64_t>(d);
    return r;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }
};

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

inline std::size_t hash_value(const Rat& r) {
  return hash_combine(std::hash<std::int64_t>{}(r.num), std::hash<std::int64_t>{}(r.den));
}

}  // namespace tpn
