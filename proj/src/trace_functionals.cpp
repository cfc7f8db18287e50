#include "rotalg/trace_functionals.hpp"

#include <functional>

namespace rotalg {

namespace {

bool even(std::int64_t k) { return k % 2 == 0; }

// Per-monomial value with unit coefficient.
PhaseScalar phi_monomial(PhiIndex ij, const Monomial& mono) {
  const int i = (ij == PhiIndex::i10 || ij == PhiIndex::i11) ? 1 : 0;
  const int j = (ij == PhiIndex::i01 || ij == PhiIndex::i11) ? 1 : 0;
  if (!even(mono.m - i) || !even(mono.n - j)) return {};
  return PhaseScalar::lambda_pow(-2 * mono.m * mono.n);
}

PhaseScalar psi_monomial(PsiIndex jk, const Monomial& mono) {
  const std::int64_t m = mono.m, n = mono.n;
  switch (jk) {
    case PsiIndex::i10:
      return even(m - n) ? PhaseScalar::lambda_pow(-(m + n) * (m + n)) : PhaseScalar();
    case PsiIndex::i11:
      return even(m - n - 1) ? PhaseScalar::lambda_pow(-(m + n) * (m + n)) : PhaseScalar();
    case PsiIndex::i20:
      return even(m) && even(n) ? PhaseScalar::lambda_pow(-2 * m * n) : PhaseScalar();
    case PsiIndex::i21:
      return even(m - 1) && even(n - 1) ? PhaseScalar::lambda_pow(-2 * m * n) : PhaseScalar();
    case PsiIndex::i22:
      return even(m - n - 1) ? PhaseScalar::lambda_pow(-2 * m * n) : PhaseScalar();
  }
  return {};
}

template <typename MonoFn>
PhaseScalar linear_extension(const Element& x, MonoFn&& fn) {
  PhaseScalar total;
  for (const auto& [mono, c] : x.terms()) {
    PhaseScalar v = fn(mono);
    if (!v.is_zero()) total += v * c;
  }
  return total;
}

Element twist_apply(Twist t, const Element& y) {
  switch (t) {
    case Twist::id:
      return y;
    case Twist::sigma:
      return apply_automorphism(Automorphism::sigma, y);
    case Twist::flip:
      return apply_automorphism(Automorphism::flip, y);
    case Twist::sigma3:
      return apply_automorphism(Automorphism::sigma,
                                apply_automorphism(Automorphism::flip, y));
  }
  return y;
}

}  // namespace

std::string_view name_of(PhiIndex ij) {
  switch (ij) {
    case PhiIndex::i00:
      return "phi00";
    case PhiIndex::i01:
      return "phi01";
    case PhiIndex::i10:
      return "phi10";
    case PhiIndex::i11:
      return "phi11";
  }
  return "?";
}

std::string_view name_of(PsiIndex jk) {
  switch (jk) {
    case PsiIndex::i10:
      return "psi10";
    case PsiIndex::i11:
      return "psi11";
    case PsiIndex::i20:
      return "psi20";
    case PsiIndex::i21:
      return "psi21";
    case PsiIndex::i22:
      return "psi22";
  }
  return "?";
}

PhaseScalar phi_eval(PhiIndex ij, const Element& x) {
  return linear_extension(x, [ij](const Monomial& mono) { return phi_monomial(ij, mono); });
}

PhaseScalar psi_eval(PsiIndex jk, const Element& x) {
  return linear_extension(x, [jk](const Monomial& mono) { return psi_monomial(jk, mono); });
}

T2Vector chern_T2(const Element& x) {
  return {canonical_trace(x), phi_eval(PhiIndex::i00, x), phi_eval(PhiIndex::i01, x), phi_eval(PhiIndex::i10, x),
          phi_eval(PhiIndex::i11, x)};
}

T4Vector chern_T4(const Element& x) {
  return {canonical_trace(x),         psi_eval(PsiIndex::i10, x), psi_eval(PsiIndex::i11, x),
          psi_eval(PsiIndex::i20, x), psi_eval(PsiIndex::i21, x), psi_eval(PsiIndex::i22, x)};
}

std::optional<RelationFailure> relation_check(const Element& x) {
  struct Identity {
    const char* name;
    std::function<bool(const Element&)> holds;
  };
  auto phi = [](PhiIndex ij) { return [ij](const Element& e) { return phi_eval(ij, e); }; };
  auto psi = [](PsiIndex jk) { return [jk](const Element& e) { return psi_eval(jk, e); }; };
  auto gamma_law = [](std::function<PhaseScalar(const Element&)> f, bool odd) {
    return [f, odd](const Element& e) {
      PhaseScalar lhs = f(apply_automorphism(Automorphism::gamma, e));
      return lhs == (odd ? -f(e) : f(e));
    };
  };
  const Identity identities[] = {
      {"psi20 = phi00", [](const Element& e) { return psi_eval(PsiIndex::i20, e) == phi_eval(PhiIndex::i00, e); }},
      {"psi21 = phi11", [](const Element& e) { return psi_eval(PsiIndex::i21, e) == phi_eval(PhiIndex::i11, e); }},
      {"psi22 = phi01 + phi10",
       [](const Element& e) {
         return psi_eval(PsiIndex::i22, e) == phi_eval(PhiIndex::i01, e) + phi_eval(PhiIndex::i10, e);
       }},
      {"phi00 gamma = phi00", gamma_law(phi(PhiIndex::i00), false)},
      {"phi11 gamma = phi11", gamma_law(phi(PhiIndex::i11), false)},
      {"phi01 gamma = -phi01", gamma_law(phi(PhiIndex::i01), true)},
      {"phi10 gamma = -phi10", gamma_law(phi(PhiIndex::i10), true)},
      {"psi11 gamma = -psi11", gamma_law(psi(PsiIndex::i11), true)},
      {"psi22 gamma = -psi22", gamma_law(psi(PsiIndex::i22), true)},
      {"psi10 gamma = psi10", gamma_law(psi(PsiIndex::i10), false)},
      {"psi20 gamma = psi20", gamma_law(psi(PsiIndex::i20), false)},
      {"psi21 gamma = psi21", gamma_law(psi(PsiIndex::i21), false)},
  };
  for (const auto& [mono, c] : x.terms()) {
    const Element term = Element::monomial(mono.m, mono.n, c);
    for (const auto& id : identities) {
      if (!id.holds(term)) return RelationFailure{id.name, mono};
    }
  }
  for (const auto& id : identities) {
    if (!id.holds(x)) return RelationFailure{id.name, Monomial{0, 0}};
  }
  return std::nullopt;
}

std::string_view name_of(FunctionalId f) {
  switch (f) {
    case FunctionalId::tau:
      return "tau";
    case FunctionalId::phi00:
      return "phi00";
    case FunctionalId::phi01:
      return "phi01";
    case FunctionalId::phi10:
      return "phi10";
    case FunctionalId::phi11:
      return "phi11";
    case FunctionalId::psi10:
      return "psi10";
    case FunctionalId::psi11:
      return "psi11";
    case FunctionalId::psi20:
      return "psi20";
    case FunctionalId::psi21:
      return "psi21";
    case FunctionalId::psi22:
      return "psi22";
  }
  return "?";
}

PhaseScalar evaluate(FunctionalId f, const Element& x) {
  switch (f) {
    case FunctionalId::tau:
      return canonical_trace(x);
    case FunctionalId::phi00:
      return phi_eval(PhiIndex::i00, x);
    case FunctionalId::phi01:
      return phi_eval(PhiIndex::i01, x);
    case FunctionalId::phi10:
      return phi_eval(PhiIndex::i10, x);
    case FunctionalId::phi11:
      return phi_eval(PhiIndex::i11, x);
    case FunctionalId::psi10:
      return psi_eval(PsiIndex::i10, x);
    case FunctionalId::psi11:
      return psi_eval(PsiIndex::i11, x);
    case FunctionalId::psi20:
      return psi_eval(PsiIndex::i20, x);
    case FunctionalId::psi21:
      return psi_eval(PsiIndex::i21, x);
    case FunctionalId::psi22:
      return psi_eval(PsiIndex::i22, x);
  }
  return {};
}

std::string_view name_of(Twist t) {
  switch (t) {
    case Twist::id:
      return "id";
    case Twist::sigma:
      return "sigma";
    case Twist::flip:
      return "flip";
    case Twist::sigma3:
      return "sigma3";
  }
  return "?";
}

TwistDescriptor twist_discovery(FunctionalId f, int bound) {
  TwistDescriptor desc{f, {}, std::nullopt, 0};
  std::vector<Element> monos;
  for (int m = -bound; m <= bound; ++m) {
    for (int n = -bound; n <= bound; ++n) monos.push_back(Element::monomial(m, n));
  }
  for (Twist t : {Twist::id, Twist::flip, Twist::sigma, Twist::sigma3}) {
    bool ok = true;
    std::size_t checked = 0;
    for (const auto& x : monos) {
      for (const auto& y : monos) {
        ++checked;
        if (!(evaluate(f, x * y) == evaluate(f, twist_apply(t, y) * x))) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    desc.pairs_checked += checked;
    if (ok) {
      desc.holding.push_back(t);
      if (!desc.strongest) desc.strongest = t;
    }
  }
  return desc;
}

}  // namespace rotalg
