#include "spr/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace spr {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("malformed rational component: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr auto lo = std::numeric_limits<std::int64_t>::min();
  constexpr auto hi = std::numeric_limits<std::int64_t>::max();
  if (num < lo || num > hi || den > hi) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::infinity() {
  Rational r;
  r.num_ = 1;
  r.den_ = 0;
  return r;
}

Rational Rational::ratio(ExtLength a, Length b) {
  if (b <= 0) throw std::invalid_argument("ratio denominator must be positive");
  if (a.is_infinite()) return infinity();
  return Rational(a.value(), b);
}

Rational Rational::parse(std::string_view text) {
  if (text == "inf") return infinity();
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::int64_t Rational::floor() const {
  if (is_infinite()) throw std::logic_error("floor of infinity");
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

double Rational::to_double() const {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (is_infinite()) return "inf";
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::to_decimal(int digits) const {
  if (is_infinite()) return "inf";
  // Round half away from zero on the exact value.
  __int128 scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  __int128 n = num_;
  bool negative = n < 0;
  if (negative) n = -n;
  __int128 scaled = (n * scale * 2 + den_) / (2 * static_cast<__int128>(den_));
  auto whole = static_cast<std::int64_t>(scaled / scale);
  auto frac = static_cast<std::int64_t>(scaled % scale);
  std::string frac_text = std::to_string(frac);
  std::string out = (negative && scaled != 0 ? "-" : "") + std::to_string(whole);
  if (digits > 0) out += "." + std::string(digits - frac_text.size(), '0') + frac_text;
  return out;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.is_infinite() || b.is_infinite()) {
    if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
    return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.is_infinite() || b.is_infinite()) return Rational::infinity();
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                             static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  if (a.is_infinite() || b.is_infinite()) {
    if ((a.is_finite() && a.num_ == 0) || (b.is_finite() && b.num_ == 0)) {
      throw std::domain_error("0 * infinity");
    }
    return Rational::infinity();
  }
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_infinite()) throw std::domain_error("division by infinity");
  if (b.num_ == 0) throw std::domain_error("division by zero");
  if (a.is_infinite()) return Rational::infinity();
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

}  // namespace spr
