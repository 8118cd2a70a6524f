#pragma once

#include <stdexcept>
#include <string>

#include "tpn/rational.hpp"

namespace tpn {

struct IntervalError : std::runtime_error {
  enum class Kind { Empty, Negative, BadInfinity };
  Kind kind;
  IntervalError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// One difference bound: x_i - x_j <= value (or < value when strict), or no
// bound at all (+infinity). Addition and the tightness order below are the two
// operations the shortest-path closure needs; strictness propagates through
// addition and breaks ties in comparisons (a strict bound is tighter than a
// non-strict one with the same value).
struct Bound {
  Rat value{};
  bool strict = false;
  bool inf = false;

  static Bound infinity() { return Bound{Rat{}, false, true}; }
  static Bound le(Rat v) { return Bound{v, false, false}; }
  static Bound lt(Rat v) { return Bound{v, true, false}; }
  static Bound zero() { return le(Rat{0}); }

  // Violated by x - x = 0, i.e. the bound says "< 0", "<= -1", or "< 0" via
  // a zero value with strictness. Canonical emptiness test on the diagonal.
  bool excludes_zero() const {
    if (inf) return false;
    if (value.is_negative()) return true;
    return value.num == 0 && strict;
  }

  friend Bound operator+(const Bound& a, const Bound& b) {
    if (a.inf || b.inf) return infinity();
    return Bound{a.value + b.value, a.strict || b.strict, false};
  }

  friend bool operator==(const Bound& a, const Bound& b) {
    if (a.inf != b.inf) return false;
    if (a.inf) return true;
    return a.strict == b.strict && a.value == b.value;
  }
  friend bool operator!=(const Bound& a, const Bound& b) { return !(a == b); }
};

// True when a admits strictly fewer valuations than b.
inline bool tighter(const Bound& a, const Bound& b) {
  if (b.inf) return !a.inf;
  if (a.inf) return false;
  if (a.value != b.value) return a.value < b.value;
  return a.strict && !b.strict;
}

inline const Bound& min_bound(const Bound& a, const Bound& b) { return tighter(b, a) ? b : a; }

inline std::string to_string(const Bound& b) {
  if (b.inf) return "inf";
  return (b.strict ? "<" : "<=") + b.value.str();
}

// Static firing interval. The lower endpoint is always finite and >= 0; the
// upper endpoint may be infinite, in which case it is open. Default: [0, inf).
struct TimeInterval {
  Rat lower{};
  bool lower_open = false;
  Rat upper{};
  bool upper_open = true;
  bool upper_inf = true;

  TimeInterval() = default;

  static TimeInterval make(Rat lo, bool lo_open, Rat hi, bool hi_open) {
    check_lower(lo);
    if (hi < lo || (lo == hi && (lo_open || hi_open)))
      throw IntervalError(IntervalError::Kind::Empty,
                          "empty interval: " + lo.str() + " .. " + hi.str());
    TimeInterval iv;
    iv.lower = lo;
    iv.lower_open = lo_open;
    iv.upper = hi;
    iv.upper_open = hi_open;
    iv.upper_inf = false;
    return iv;
  }

  static TimeInterval closed(Rat lo, Rat hi) { return make(lo, false, hi, false); }

  static TimeInterval unbounded(Rat lo, bool lo_open) {
    check_lower(lo);
    TimeInterval iv;
    iv.lower = lo;
    iv.lower_open = lo_open;
    return iv;
  }

  bool is_default() const { return upper_inf && !lower_open && lower == Rat{0}; }

  // Bounds in DBM form for a freshly enabled transition t:
  // upper_bound() caps x_t - x_0 and lower_bound() caps x_0 - x_t.
  Bound upper_bound() const {
    if (upper_inf) return Bound::infinity();
    return upper_open ? Bound::lt(upper) : Bound::le(upper);
  }
  Bound lower_bound() const {
    return lower_open ? Bound::lt(-lower) : Bound::le(-lower);
  }

  friend bool operator==(const TimeInterval& a, const TimeInterval& b) {
    if (a.upper_inf != b.upper_inf) return false;
    if (a.lower != b.lower || a.lower_open != b.lower_open) return false;
    if (a.upper_inf) return true;
    return a.upper == b.upper && a.upper_open == b.upper_open;
  }
  friend bool operator!=(const TimeInterval& a, const TimeInterval& b) { return !(a == b); }

 private:
  static void check_lower(const Rat& lo) {
    if (lo.is_negative())
      throw IntervalError(IntervalError::Kind::Negative,
                          "negative interval bound: " + lo.str());
  }
};

inline std::string to_string(const TimeInterval& iv) {
  std::string s = iv.lower_open ? "]" : "[";
  s += iv.lower.str();
  s += ",";
  if (iv.upper_inf) {
    s += "w[";
  } else {
    s += iv.upper.str();
    s += iv.upper_open ? "[" : "]";
  }
  return s;
}

}  // namespace tpn
