#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rotalg/rational.hpp"

namespace rotalg {

using Real = boost::multiprecision::cpp_bin_float_50;

/// Raised when a continued-fraction prefix is too short to decide a question.
class InsufficientCfData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Convergent p/q of a continued fraction.
struct Convergent {
  std::int64_t p = 0;
  std::int64_t q = 1;

  [[nodiscard]] Rational value() const { return Rational(p, q); }
  friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// An irrational rotation parameter in (0,1).
///
/// Carries a finite prefix [0; a1, a2, ...] of the continued-fraction
/// expansion and a 50-digit decimal value. All exact sign decisions on
/// a + b*theta go through the prefix: consecutive convergents bracket theta
/// strictly, so no floating-point comparison is ever trusted for them.
class ThetaParam {
 public:
  /// (sqrt(5) - 1) / 2 = [0; 1, 1, 1, ...].
  static ThetaParam golden();
  /// sqrt(2) - 1 = [0; 2, 2, 2, ...].
  static ThetaParam sqrt2();
  /// From continued-fraction terms; terms[0] must be 0 and the rest positive.
  static ThetaParam from_cf(std::vector<std::int64_t> terms, std::string name = {});
  /// From a decimal literal; only cf terms certified by the literal's precision are kept.
  static ThetaParam from_decimal(std::string_view literal);
  /// Preset name, "[0;a1,a2,...]" or a decimal literal.
  static ThetaParam parse(std::string_view theta_text);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::vector<std::int64_t>& cf_terms() const { return cf_; }
  [[nodiscard]] const Real& numeric() const { return value_; }
  [[nodiscard]] double value() const { return static_cast<double>(value_); }

  /// 1 - theta, with its continued fraction.
  [[nodiscard]] ThetaParam reflected() const;

  /// Convergents c_0 .. c_{n-1}; throws InsufficientCfData if the prefix is shorter.
  [[nodiscard]] std::vector<Convergent> convergents(std::size_t n) const;
  /// Number of convergents available from the prefix without int64 overflow.
  [[nodiscard]] std::size_t available_convergents() const { return conv_.size(); }

  /// Exact sign of a + b*theta. Zero only when a = b = 0.
  [[nodiscard]] int sign_of(const Rational& a, const Rational& b) const;
  /// Exact floor of a + b*theta (a, b integers, b != 0 or a integer).
  [[nodiscard]] std::int64_t floor_of(std::int64_t a, std::int64_t b) const;
  /// a + b*theta in double precision (for display and tolerances only).
  [[nodiscard]] double eval(const Rational& a, const Rational& b) const;

 private:
  ThetaParam(std::vector<std::int64_t> cf, Real value, std::string name);

  std::vector<std::int64_t> cf_;
  std::vector<Convergent> conv_;
  Real value_;
  std::string name_;
};

}  // namespace rotalg
