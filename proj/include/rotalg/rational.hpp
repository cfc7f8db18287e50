#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rotalg {

/// Exact rational p/q over int64 with q > 0 and gcd(p, q) = 1.
///
/// Every operation is overflow-checked through 128-bit intermediates and
/// throws std::overflow_error instead of wrapping. Magnitudes in this library
/// stay far below the int64 range; the check turns a silent wrong answer
/// into a loud one.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit from integer
  Rational(std::int64_t n, std::int64_t d);

  [[nodiscard]] constexpr std::int64_t num() const { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const { return den_; }
  [[nodiscard]] constexpr bool is_zero() const { return num_ == 0; }
  [[nodiscard]] constexpr bool is_integer() const { return den_ == 1; }
  [[nodiscard]] constexpr int sign() const { return (num_ > 0) - (num_ < 0); }

  /// Integer value; throws std::domain_error when not an integer.
  [[nodiscard]] std::int64_t to_integer() const;
  [[nodiscard]] double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// floor(p/q) as an integer.
  [[nodiscard]] std::int64_t floor() const;

  /// "p" or "p/q".
  [[nodiscard]] std::string str() const;

  /// Parses "p", "-p", "p/q"; throws std::invalid_argument.
  static Rational parse(std::string_view text);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a);

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend constexpr bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  static Rational from_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Narrowing from 128-bit with overflow detection.
std::int64_t checked_narrow(__int128 v);

/// Gaussian rational re + i*im.
struct GaussRational {
  Rational re;
  Rational im;

  constexpr GaussRational() = default;
  constexpr GaussRational(Rational r) : re(r) {}  // NOLINT: implicit real embedding
  constexpr GaussRational(std::int64_t r) : re(r) {}  // NOLINT
  constexpr GaussRational(Rational r, Rational i) : re(r), im(i) {}

  [[nodiscard]] bool is_zero() const { return re.is_zero() && im.is_zero(); }
  [[nodiscard]] GaussRational conj() const { return {re, -im}; }

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussRational& operator+=(const GaussRational& o) { return *this = *this + o; }
  GaussRational& operator-=(const GaussRational& o) { return *this = *this - o; }
  GaussRational& operator*=(const GaussRational& o) { return *this = *this * o; }

  friend bool operator==(const GaussRational&, const GaussRational&) = default;

  /// Renders as "(re+imi)", e.g. "(1/2-3i)".
  [[nodiscard]] std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const GaussRational& g);

inline const GaussRational kImagUnit{Rational(0), Rational(1)};

}  // namespace rotalg
