#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "rotalg/phase_scalar.hpp"

namespace rotalg {

/// U^m V^n in normal order (U-power left of V-power).
struct Monomial {
  std::int64_t m = 0;
  std::int64_t n = 0;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// (U^a V^b)(U^c V^d) = L^{4bc} U^{a+c} V^{b+d}, from V^b U^c = e(theta*b*c) U^c V^b.
std::pair<PhaseScalar, Monomial> normalize_product(const Monomial& a, const Monomial& b);

/// Finite Laurent polynomial sum c_{mn} U^m V^n in the rotation algebra.
class Element {
 public:
  using Terms = std::map<Monomial, PhaseScalar>;

  Element() = default;
  Element(PhaseScalar scalar);  // NOLINT: scalar multiple of the identity
  Element(std::int64_t c) : Element(PhaseScalar(c)) {}  // NOLINT
  Element(int c) : Element(PhaseScalar(c)) {}  // NOLINT

  static Element monomial(std::int64_t m, std::int64_t n, PhaseScalar coeff = PhaseScalar(1));
  static Element U(std::int64_t power = 1) { return monomial(power, 0); }
  static Element V(std::int64_t power = 1) { return monomial(0, power); }

  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] PhaseScalar coeff(const Monomial& mono) const;

  friend Element operator+(const Element& x, const Element& y);
  friend Element operator-(const Element& x, const Element& y);
  friend Element operator-(const Element& x);
  friend Element operator*(const Element& x, const Element& y);
  friend Element operator*(const PhaseScalar& s, const Element& x);
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);

  friend bool operator==(const Element&, const Element&) = default;

  /// Terms as "(re+imi)L^k U^m V^n" joined by " + "; "0" for zero.
  [[nodiscard]] std::string str() const;

 private:
  void add_term(const Monomial& mono, const PhaseScalar& c);

  Terms terms_;
};

Element mul(const Element& x, const Element& y);
Element add(const Element& x, const Element& y);
Element sub(const Element& x, const Element& y);
Element scale(const PhaseScalar& s, const Element& x);

/// Adjoint: (c U^m V^n)* = conj(c) L^{4mn} U^-m V^-n.
Element star(const Element& x);

enum class Automorphism {
  sigma,  ///< U -> V^-1, V -> U (order 4)
  flip,   ///< U -> U^-1, V -> V^-1 (sigma squared)
  gamma,  ///< U -> -U, V -> -V
};

/// On monomials: sigma(U^m V^n) = L^{-4mn} U^n V^-m; flip(U^m V^n) = U^-m V^-n;
/// gamma(U^m V^n) = (-1)^{m+n} U^m V^n.
Element apply_automorphism(Automorphism which, const Element& x);

/// g + sigma(g) + sigma^2(g) + sigma^3(g).
Element sigma_average(const Element& g);

/// Coefficient of the identity monomial.
PhaseScalar canonical_trace(const Element& x);

}  // namespace rotalg
