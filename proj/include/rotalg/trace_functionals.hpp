#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rotalg/element.hpp"

namespace rotalg {

enum class PhiIndex { i00, i01, i10, i11 };
enum class PsiIndex { i10, i11, i20, i21, i22 };

inline constexpr PhiIndex kAllPhi[] = {PhiIndex::i00, PhiIndex::i01, PhiIndex::i10, PhiIndex::i11};
inline constexpr PsiIndex kAllPsi[] = {PsiIndex::i10, PsiIndex::i11, PsiIndex::i20, PsiIndex::i21, PsiIndex::i22};

std::string_view name_of(PhiIndex ij);
std::string_view name_of(PsiIndex jk);

/// phi_ij(U^m V^n) = e(-theta m n / 2) [m = i mod 2] [n = j mod 2], extended linearly.
PhaseScalar phi_eval(PhiIndex ij, const Element& x);

/// psi10, psi11 carry e(-theta (m+n)^2 / 4) with parity of m - n resp. m - n - 1;
/// psi20, psi21, psi22 carry e(-theta m n / 2) with parities (m, n even), (m, n odd),
/// (m - n odd).
PhaseScalar psi_eval(PsiIndex jk, const Element& x);

/// (tau; phi00, phi01, phi10, phi11).
struct T2Vector {
  PhaseScalar tau, phi00, phi01, phi10, phi11;
  [[nodiscard]] std::vector<PhaseScalar> slots() const { return {tau, phi00, phi01, phi10, phi11}; }
  friend bool operator==(const T2Vector&, const T2Vector&) = default;
};

/// (tau; psi10, psi11; psi20, psi21, psi22).
struct T4Vector {
  PhaseScalar tau, psi10, psi11, psi20, psi21, psi22;
  [[nodiscard]] std::vector<PhaseScalar> slots() const { return {tau, psi10, psi11, psi20, psi21, psi22}; }
  friend bool operator==(const T4Vector&, const T4Vector&) = default;
};

/// Slotwise evaluation. The result is a K-theory invariant only for
/// flip-invariant (T2) resp. sigma-invariant (T4) projections; evaluation
/// itself accepts any element.
T2Vector chern_T2(const Element& x);
T4Vector chern_T4(const Element& x);

struct RelationFailure {
  std::string identity;
  Monomial witness;
};

/// Checks psi20 = phi00, psi21 = phi11, psi22 = phi01 + phi10 and the gamma sign laws
/// (phi00, phi11, psi10, psi20, psi21 even; phi01, phi10, psi11, psi22 odd) on x and on
/// each of its monomials. Returns the first failure, or nullopt when all hold.
std::optional<RelationFailure> relation_check(const Element& x);

/// Linear functional identifiers for twist discovery.
enum class FunctionalId { tau, phi00, phi01, phi10, phi11, psi10, psi11, psi20, psi21, psi22 };

inline constexpr FunctionalId kAllFunctionals[] = {
    FunctionalId::tau,   FunctionalId::phi00, FunctionalId::phi01, FunctionalId::phi10, FunctionalId::phi11,
    FunctionalId::psi10, FunctionalId::psi11, FunctionalId::psi20, FunctionalId::psi21, FunctionalId::psi22};

std::string_view name_of(FunctionalId f);
PhaseScalar evaluate(FunctionalId f, const Element& x);

/// Candidate twists alpha in f(xy) = f(alpha(y) x).
enum class Twist { id, sigma, flip, sigma3 };
std::string_view name_of(Twist t);

struct TwistDescriptor {
  FunctionalId functional;
  std::vector<Twist> holding;   ///< every candidate that holds on the scanned grid
  std::optional<Twist> strongest;  ///< first of id, flip, sigma, sigma3 that holds
  std::size_t pairs_checked = 0;
};

/// Scans all monomial pairs with exponents in [-bound, bound].
TwistDescriptor twist_discovery(FunctionalId f, int bound = 4);

}  // namespace rotalg
