#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rotalg/element.hpp"
#include "rotalg/theta.hpp"

namespace rotalg {

/// a + b theta with integer a, b.
struct TraceValue {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator==(const TraceValue&, const TraceValue&) = default;
  [[nodiscard]] std::string str() const;
};

/// Standard continued-fraction convergents c_0 .. c_{depth-1}.
std::vector<Convergent> convergents(const ThetaParam& theta, std::size_t depth);

/// m = m1^2 + m2^2 + m3^2 + m4^2 with m1 >= m2 >= m3 >= m4 >= 0.
struct FourSquares {
  std::int64_t m1 = 0, m2 = 0, m3 = 0, m4 = 0;
  friend bool operator==(const FourSquares&, const FourSquares&) = default;
};

/// Lexicographically largest descending decomposition (greedy with backtracking).
FourSquares four_squares(std::int64_t m);

enum class RealizeErrorCode {
  out_of_range,
  wrong_subgroup,
  no_bracketing_convergents,
  insufficient_cf_data,
  internal_assertion,
};

std::string_view error_code_name(RealizeErrorCode c);

class RealizeError : public std::runtime_error {
 public:
  RealizeError(RealizeErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] RealizeErrorCode code() const { return code_; }

 private:
  RealizeErrorCode code_;
};

/// t = 4k(n theta - m) = 4a(q theta - p) + 4b(p' - q' theta) with m/n < p/q < theta < p'/q'.
struct FlatDecomposition {
  std::int64_t a = 0, b = 0;
  Convergent lower;  ///< p/q below theta
  Convergent upper;  ///< p'/q' above theta, p'q - pq' = 1
  std::int64_t k = 0, n = 0, m = 0;
};

inline constexpr std::size_t kDefaultCfDepth = 64;

/// Requires t in (0,1) and in 4Z + 4Z theta with a positive theta coefficient.
/// Picks the first consecutive convergent pair whose lower member exceeds m/n.
FlatDecomposition flat_decompose(const TraceValue& t, const ThetaParam& theta, std::size_t depth = kDefaultCfDepth);

/// U~ = e(mn theta/2) V^-n U^m and V~ = e(mn theta/2) U^n V^m, normal-ordered, generating
/// a copy of the rotation algebra at theta' = (m^2 + n^2) theta mod 1.
struct SubalgebraGenerators {
  Element u;
  Element v;
  TraceValue theta_prime;  ///< (m^2 + n^2) theta - floor((m^2 + n^2) theta)
};

SubalgebraGenerators subalgebra_generators(std::int64_t m, std::int64_t n, const ThetaParam& theta);

/// Exact checks V~U~ = L^{4(m^2+n^2)} U~V~, sigma(U~) = V~^-1, sigma(V~) = U~.
bool subalgebra_relations_hold(std::int64_t m, std::int64_t n, const SubalgebraGenerators& gens);

enum class RealizeKind { cyclic, semicyclic, flat, semiflat, fourier_invariant };

std::string_view kind_name(RealizeKind k);
RealizeKind parse_kind(std::string_view name);

// Certificate nodes. Each node proves that its target trace is attained by a
// projection of the named kind, given its children.

/// Cyclic projection of trace k|q theta - p| for a rational approximant with 0 < q|q theta - p| < 1.
struct CyclicLeaf {
  std::int64_t k = 0;
  Convergent approximant;
};

/// Flat trace as an orthogonal sum of two flats from cyclic leaves.
struct FlatNode {
  FlatDecomposition decomposition;
};

/// Cyclic trace t from a flat certificate of trace 4t.
struct CyclicNode {};

/// Semicyclic trace t under a semicyclic g + sigma^2(g) of trace `doubled` in 2Z + 2Z theta.
struct SemicyclicNode {
  TraceValue doubled;
};

/// Semiflat h + sigma(h) from a semicyclic h of half the trace.
struct SemiflatNode {};

/// One sum-of-squares embedding: Fourier-invariant projection of trace weight*theta - floor_n.
struct EmbeddingLeg {
  std::int64_t root1 = 0, root2 = 0;
  std::int64_t weight = 0;   ///< root1^2 + root2^2
  std::int64_t floor_n = 0;  ///< floor(weight * theta)
};

/// Fourier-invariant trace t = m theta - n from two embedding legs; k = n - n1 - n2.
struct FourierInvariantNode {
  std::int64_t m = 0, n = 0;
  FourSquares squares;
  EmbeddingLeg leg1, leg2;
  std::int64_t k = 0;
};

/// Child realized at 1 - theta; target (a, b) maps to (a + b, -b).
struct ReflectedNode {};

using CertificateNode =
    std::variant<CyclicLeaf, FlatNode, CyclicNode, SemicyclicNode, SemiflatNode, FourierInvariantNode, ReflectedNode>;

struct Certificate {
  TraceValue target;
  double value = 0.0;  ///< numeric target, informational; checked against tol
  CertificateNode node;
  std::vector<Certificate> children;
};

/// Stable tag naming the construction step a node records.
std::string_view lemma_tag(const Certificate& c);

Certificate realize(RealizeKind kind, const TraceValue& t, const ThetaParam& theta);

struct VerifyReport {
  bool pass = true;
  std::string failing_node;  ///< path such as "root/children[0]"
  std::string message;
  std::size_t nodes_checked = 0;
};

/// Replays every arithmetic claim in the tree exactly; `tol` bounds only the
/// informational numeric value stored at each node.
VerifyReport verify_certificate(const Certificate& c, const ThetaParam& theta, double tol = 1e-9);

}  // namespace rotalg
