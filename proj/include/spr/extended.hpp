#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace spr {

// Integer extended with a distinguished +infinity. Infinity compares greater
// than every finite value and absorbs addition.
template <typename T>
class Extended {
 public:
  constexpr Extended(T value) : value_(value), finite_(true) {}  // NOLINT implicit

  static constexpr Extended infinity() {
    Extended e{T{}};
    e.finite_ = false;
    return e;
  }

  constexpr bool is_finite() const { return finite_; }
  constexpr bool is_infinite() const { return !finite_; }

  constexpr T value() const {
    if (!finite_) throw std::logic_error("value() on infinite quantity");
    return value_;
  }

  constexpr T value_or(T fallback) const { return finite_ ? value_ : fallback; }

  friend constexpr bool operator==(const Extended& a, const Extended& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }

  friend constexpr std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
    if (!a.finite_ || !b.finite_) {
      if (a.finite_ == b.finite_) return std::strong_ordering::equal;
      return a.finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.value_ <=> b.value_;
  }

  friend constexpr Extended operator+(const Extended& a, const Extended& b) {
    if (!a.finite_ || !b.finite_) return infinity();
    return Extended(a.value_ + b.value_);
  }

  std::string to_string() const { return finite_ ? std::to_string(value_) : std::string("inf"); }

  friend std::ostream& operator<<(std::ostream& os, const Extended& e) { return os << e.to_string(); }

 private:
  T value_;
  bool finite_;
};

using Length = std::int64_t;
using ExtLength = Extended<Length>;

inline constexpr ExtLength kInfinity = ExtLength::infinity();

}  // namespace spr
