#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>

#include "rotalg/rational.hpp"
#include "rotalg/theta.hpp"

namespace rotalg {

/// Laurent polynomial sum_k c_k L^k in the formal phase L = e(theta/4) with
/// Gaussian-rational coefficients.
///
/// L is treated as transcendental, so two scalars are equal iff their
/// coefficient maps are equal. Zero coefficients are never stored.
class PhaseScalar {
 public:
  using Terms = std::map<std::int64_t, GaussRational>;

  PhaseScalar() = default;
  PhaseScalar(GaussRational c);  // NOLINT: implicit constant embedding
  PhaseScalar(Rational c) : PhaseScalar(GaussRational(c)) {}  // NOLINT
  PhaseScalar(std::int64_t c) : PhaseScalar(GaussRational(c)) {}  // NOLINT
  PhaseScalar(int c) : PhaseScalar(GaussRational(std::int64_t{c})) {}  // NOLINT

  /// c * L^k.
  static PhaseScalar lambda_pow(std::int64_t k, GaussRational c = GaussRational(1));

  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  /// Coefficient of L^k (zero when absent).
  [[nodiscard]] GaussRational coeff(std::int64_t k) const;

  /// Conjugation: L^k -> L^-k, coefficients conjugated.
  [[nodiscard]] PhaseScalar conj() const;

  friend PhaseScalar operator+(const PhaseScalar& a, const PhaseScalar& b);
  friend PhaseScalar operator-(const PhaseScalar& a, const PhaseScalar& b);
  friend PhaseScalar operator-(const PhaseScalar& a);
  friend PhaseScalar operator*(const PhaseScalar& a, const PhaseScalar& b);
  PhaseScalar& operator+=(const PhaseScalar& o);
  PhaseScalar& operator-=(const PhaseScalar& o);
  PhaseScalar& operator*=(const PhaseScalar& o) { return *this = *this * o; }

  friend bool operator==(const PhaseScalar&, const PhaseScalar&) = default;

  /// "(re+imi)L^k + ..." in increasing k; "0" for zero.
  [[nodiscard]] std::string str() const;

 private:
  void add_term(std::int64_t k, const GaussRational& c);

  Terms terms_;
};

/// Substitutes L = exp(i*pi*theta/2). The phase k*theta/4 is reduced mod 1 in
/// 50-digit arithmetic before the double-precision exponential, so the
/// relative error stays near machine epsilon for any |k| up to 1e4.
std::complex<double> numeric_eval(const PhaseScalar& s, const ThetaParam& theta);

}  // namespace rotalg
