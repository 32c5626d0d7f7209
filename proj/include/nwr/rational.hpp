#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace nwr {

// Exact rational number with 64-bit numerator and denominator.
//
// Always kept in canonical form: den > 0 and gcd(|num|, den) == 1.
// Intermediate products use 128-bit integers; any result that does not fit
// back into 64 bits throws nwr::Overflow instead of wrapping or rounding.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit by design of the arithmetic API
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  // Smallest integer >= this value.
  std::int64_t ceil() const;
  // Largest integer <= this value.
  std::int64_t floor() const;

  // "num/den"; integers are still printed with "/1".
  std::string to_string() const;

  // Accepts "num/den" or a bare integer "num". Throws nwr::InvalidInput.
  static Rational parse(std::string_view text);

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// ceil(r * n) for non-negative n, computed exactly.
std::int64_t ceil_mul(const Rational& r, std::int64_t n);

}  // namespace nwr
