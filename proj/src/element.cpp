#include "rotalg/element.hpp"

namespace rotalg {

std::pair<PhaseScalar, Monomial> normalize_product(const Monomial& a, const Monomial& b) {
  return {PhaseScalar::lambda_pow(4 * a.n * b.m), Monomial{a.m + b.m, a.n + b.n}};
}

Element::Element(PhaseScalar scalar) {
  if (!scalar.is_zero()) terms_.emplace(Monomial{0, 0}, std::move(scalar));
}

Element Element::monomial(std::int64_t m, std::int64_t n, PhaseScalar coeff) {
  Element e;
  if (!coeff.is_zero()) e.terms_.emplace(Monomial{m, n}, std::move(coeff));
  return e;
}

PhaseScalar Element::coeff(const Monomial& mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? PhaseScalar() : it->second;
}

void Element::add_term(const Monomial& mono, const PhaseScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [mono, c] : o.terms_) add_term(mono, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
  return *this;
}

Element operator+(const Element& x, const Element& y) {
  Element r = x;
  r += y;
  return r;
}

Element operator-(const Element& x, const Element& y) {
  Element r = x;
  r -= y;
  return r;
}

Element operator-(const Element& x) {
  Element r;
  for (const auto& [mono, c] : x.terms_) r.terms_.emplace(mono, -c);
  return r;
}

Element operator*(const Element& x, const Element& y) {
  Element r;
  for (const auto& [ma, ca] : x.terms_) {
    for (const auto& [mb, cb] : y.terms_) {
      auto [phase, mono] = normalize_product(ma, mb);
      r.add_term(mono, phase * ca * cb);
    }
  }
  return r;
}

Element operator*(const PhaseScalar& s, const Element& x) {
  Element r;
  for (const auto& [mono, c] : x.terms_) r.add_term(mono, s * c);
  return r;
}

std::string Element::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [mono, c] : terms_) {
    for (const auto& [k, g] : c.terms()) {
      if (!s.empty()) s += " + ";
      s += g.str() + "L^" + std::to_string(k) + " U^" + std::to_string(mono.m) + " V^" + std::to_string(mono.n);
    }
  }
  return s;
}

Element mul(const Element& x, const Element& y) { return x * y; }
Element add(const Element& x, const Element& y) { return x + y; }
Element sub(const Element& x, const Element& y) { return x - y; }
Element scale(const PhaseScalar& s, const Element& x) { return s * x; }

Element star(const Element& x) {
  Element r;
  for (const auto& [mono, c] : x.terms()) {
    r += Element::monomial(-mono.m, -mono.n, PhaseScalar::lambda_pow(4 * mono.m * mono.n) * c.conj());
  }
  return r;
}

Element apply_automorphism(Automorphism which, const Element& x) {
  Element r;
  for (const auto& [mono, c] : x.terms()) {
    switch (which) {
      case Automorphism::sigma:
        // sigma(U^m V^n) = V^-m U^n = e(-theta*m*n) U^n V^-m
        r += Element::monomial(mono.n, -mono.m, PhaseScalar::lambda_pow(-4 * mono.m * mono.n) * c);
        break;
      case Automorphism::flip:
        r += Element::monomial(-mono.m, -mono.n, c);
        break;
      case Automorphism::gamma:
        r += Element::monomial(mono.m, mono.n, ((mono.m + mono.n) % 2 == 0) ? c : -c);
        break;
    }
  }
  return r;
}

Element sigma_average(const Element& g) {
  Element total = g;
  Element orbit = g;
  for (int k = 1; k < 4; ++k) {
    orbit = apply_automorphism(Automorphism::sigma, orbit);
    total += orbit;
  }
  return total;
}

PhaseScalar canonical_trace(const Element& x) { return x.coeff(Monomial{0, 0}); }

}  // namespace rotalg
