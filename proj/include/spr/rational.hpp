#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "spr/extended.hpp"

namespace spr {

// Exact non-negative-denominator rational over int64 with a +infinity
// sentinel. Used for the short-edge threshold and for stretch ratios.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);  // NOLINT implicit from integer

  static Rational infinity();
  // a / b where either side may be infinite; b must be finite and positive.
  static Rational ratio(ExtLength a, Length b);
  // Parses "p", "p/q" or "inf".
  static Rational parse(std::string_view text);

  bool is_infinite() const { return den_ == 0; }
  bool is_finite() const { return den_ != 0; }
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  // Largest integer <= value. Throws on infinity.
  std::int64_t floor() const;
  double to_double() const;

  // "p/q" (or "p" when q == 1, "inf" for infinity).
  std::string to_string() const;
  // Fixed six-digit decimal rendering, "inf" for infinity.
  std::string to_decimal(int digits = 6) const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace spr
