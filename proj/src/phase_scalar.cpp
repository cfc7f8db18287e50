#include "rotalg/phase_scalar.hpp"

#include <numbers>

namespace rotalg {

PhaseScalar::PhaseScalar(GaussRational c) {
  if (!c.is_zero()) terms_.emplace(0, c);
}

PhaseScalar PhaseScalar::lambda_pow(std::int64_t k, GaussRational c) {
  PhaseScalar s;
  if (!c.is_zero()) s.terms_.emplace(k, c);
  return s;
}

GaussRational PhaseScalar::coeff(std::int64_t k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? GaussRational() : it->second;
}

void PhaseScalar::add_term(std::int64_t k, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PhaseScalar PhaseScalar::conj() const {
  PhaseScalar r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(-k, c.conj());
  return r;
}

PhaseScalar& PhaseScalar::operator+=(const PhaseScalar& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

PhaseScalar& PhaseScalar::operator-=(const PhaseScalar& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

PhaseScalar operator+(const PhaseScalar& a, const PhaseScalar& b) {
  PhaseScalar r = a;
  r += b;
  return r;
}

PhaseScalar operator-(const PhaseScalar& a, const PhaseScalar& b) {
  PhaseScalar r = a;
  r -= b;
  return r;
}

PhaseScalar operator-(const PhaseScalar& a) {
  PhaseScalar r;
  for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, -c);
  return r;
}

PhaseScalar operator*(const PhaseScalar& a, const PhaseScalar& b) {
  PhaseScalar r;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
  }
  return r;
}

std::string PhaseScalar::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += c.str() + "L^" + std::to_string(k);
  }
  return s;
}

std::complex<double> numeric_eval(const PhaseScalar& s, const ThetaParam& theta) {
  std::complex<double> total = 0.0;
  for (const auto& [k, c] : s.terms()) {
    Real turns = Real(k) * theta.numeric() / 4;
    turns -= boost::multiprecision::floor(turns);
    double angle = 2.0 * std::numbers::pi * static_cast<double>(turns);
    total += std::complex<double>(c.re.to_double(), c.im.to_double()) * std::polar(1.0, angle);
  }
  return total;
}

}  // namespace rotalg
