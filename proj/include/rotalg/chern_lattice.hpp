#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rotalg/rational.hpp"
#include "rotalg/theta.hpp"

namespace rotalg {

/// (a + b theta) + i (c + d theta) with rational a, b, c, d.
struct KScalar {
  Rational a;  ///< real constant
  Rational b;  ///< real theta coefficient
  Rational c;  ///< imaginary constant
  Rational d;  ///< imaginary theta coefficient

  static KScalar real(Rational a, Rational b = Rational(0)) { return {a, b, Rational(0), Rational(0)}; }

  [[nodiscard]] bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }
  [[nodiscard]] bool is_real() const { return c.is_zero() && d.is_zero(); }
  [[nodiscard]] bool is_theta_free() const { return b.is_zero() && d.is_zero(); }
  [[nodiscard]] std::complex<double> numeric(const ThetaParam& theta) const;

  friend KScalar operator+(const KScalar& x, const KScalar& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend KScalar operator-(const KScalar& x, const KScalar& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend KScalar operator-(const KScalar& x) { return {-x.a, -x.b, -x.c, -x.d}; }
  friend KScalar operator*(const Rational& s, const KScalar& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
  KScalar& operator+=(const KScalar& o) { return *this = *this + o; }
  KScalar& operator-=(const KScalar& o) { return *this = *this - o; }
  friend bool operator==(const KScalar&, const KScalar&) = default;

  /// Canonical text, e.g. "4+2t", "1/2-1/2i", "-t", "0".
  [[nodiscard]] std::string str() const;
};

/// T4 target (tau; psi10, psi11; psi20, psi21, psi22).
struct ChernVector {
  KScalar tau;
  KScalar psi10;
  KScalar psi11;
  KScalar psi20;
  KScalar psi21;
  KScalar psi22;

  [[nodiscard]] std::array<KScalar, 6> slots() const { return {tau, psi10, psi11, psi20, psi21, psi22}; }
  static ChernVector from_slots(const std::array<KScalar, 6>& s) { return {s[0], s[1], s[2], s[3], s[4], s[5]}; }

  friend ChernVector operator+(const ChernVector& x, const ChernVector& y);
  friend ChernVector operator-(const ChernVector& x, const ChernVector& y);
  friend ChernVector operator*(const Rational& s, const ChernVector& x);
  friend bool operator==(const ChernVector&, const ChernVector&) = default;

  [[nodiscard]] std::string str() const;
};

/// Integer coordinates N1..N9 over the basis vectors V1..V9 (index 0 holds N1).
using K0Coordinates = std::array<std::int64_t, 9>;

/// (psi20, psi21, psi22) of a class. Lattice classes only ever produce real
/// rational values here, so the triple is stored as rationals.
struct Genus {
  Rational g20;
  Rational g21;
  Rational g22;
  friend bool operator==(const Genus&, const Genus&) = default;
  [[nodiscard]] std::string str() const;
};

/// V1..V9 spanning the range of T4.
const std::array<ChernVector, 9>& basis_vectors();

/// sum_j N_j V_j.
ChernVector recompose(const K0Coordinates& coords);

/// 24 rational coordinates: per slot (a, b, c, d).
std::array<Rational, 24> flatten(const ChernVector& v);

/// Exact rank of the 24 x 9 basis matrix.
std::size_t basis_rank();

enum class DecomposeStatus { ok, inconsistent, non_integer };

struct DecomposeResult {
  DecomposeStatus status = DecomposeStatus::inconsistent;
  std::optional<K0Coordinates> coordinates;      ///< set when status == ok
  std::optional<std::array<Rational, 9>> solution;  ///< rational solution when the system is consistent
};

/// Solves sum_j N_j V_j = v exactly over Q and reports whether N is integral.
DecomposeResult decompose(const ChernVector& v);

/// sum_j N_j tau(V_j) as a + b theta.
KScalar trace_of(const K0Coordinates& coords);

/// Full coordinates of the class with free parameters (N1, N2, N3, N4, N9)
/// under psi10 = psi11 = 0: N6 = N3, N5 = N2, N7 = N9 - N3, N8 = 2 N2 + N3.
K0Coordinates semiflat_coordinates(std::int64_t n1, std::int64_t n2, std::int64_t n3, std::int64_t n4,
                                   std::int64_t n9);

/// Genus from coordinates: (2N1 - N2 + N9, 2N4 - N2 + N9, 2N9 - 2N2 - 2N3).
Genus semiflat_genus(const K0Coordinates& coords);

enum class RejectReason { none, not_in_lattice, psi10_nonzero, psi11_nonzero, nonpositive_trace };

std::string_view reason_code(RejectReason r);

/// One semiflat generator of a basic genus, possibly negated.
struct RecipeGenerator {
  int basis_index = 0;   ///< 1, 2, 3, 4 or 9: which coefficient of the semiflat decomposition
  std::int64_t count = 0;  ///< number of copies, |N_index|
  bool negated = false;  ///< built through genus negation
  Genus genus;           ///< genus of one copy
  std::int64_t trace_a = 0;  ///< trace of one copy: trace_a + trace_b theta
  std::int64_t trace_b = 0;
};

/// Class-level synthesis of a semiflat cone member.
struct SynthesisRecipe {
  std::vector<RecipeGenerator> generators;
  std::int64_t flat_a = 0;  ///< flat remainder trace flat_a + flat_b theta, in 4Z + 4Z theta
  std::int64_t flat_b = 0;
};

/// T4 sum of a recipe: generators contribute (t; 0,0; genus), the flat part (4a'; 0,0; 0,0,0).
ChernVector recipe_sum(const SynthesisRecipe& recipe);

struct MembershipDecision {
  bool member = false;
  RejectReason reason = RejectReason::none;
  std::optional<K0Coordinates> coordinates;
  std::optional<Genus> genus;
  bool relations_hold = false;  ///< derived coordinate relations hold (only meaningful for psi10 = psi11 = 0)
  std::optional<SynthesisRecipe> recipe;
};

/// Membership of v in the semiflat positive cone: integral decomposition,
/// psi10 = psi11 = 0 and tau > 0 (decided exactly). Members carry a recipe.
MembershipDecision semiflat_membership(const ChernVector& v, const ThetaParam& theta);

struct QuantizationReport {
  bool pass = true;
  std::array<bool, 5> slot_ok{true, true, true, true, true};  ///< psi10, psi11, psi20, psi21, psi22
  std::string detail;
};

/// psi10, psi11 in Z + Z(1-i)/2; psi20, psi21 in Z/2; psi22 in Z.
QuantizationReport quantization_check(const ChernVector& v);

/// Integer (c1, c2, c3) with c1 (2,0,0) + c2 (1,1,2) + c3 (0,0,2) = g, or nullopt.
/// Solvable iff g20 = g21 (mod 2) and g22 is even.
std::optional<std::array<std::int64_t, 3>> genus_basis_decompose(const Genus& g);

/// Raised by synthesis_recipe on non-members or on a violated internal invariant.
class SynthesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SynthesisRecipe synthesis_recipe(const ChernVector& v, const ThetaParam& theta);

}  // namespace rotalg
