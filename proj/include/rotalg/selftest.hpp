#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rotalg/element.hpp"

namespace rotalg {

struct RandomElementShape {
  int max_terms = 4;
  int max_exponent = 3;       ///< |m|, |n| bound for U^m V^n
  int max_lambda_power = 6;   ///< |k| bound for L^k in coefficients
  int max_coefficient = 3;    ///< numerator bound for real and imaginary parts
};

/// Random finite element with small Gaussian-integer coefficients times powers of L.
Element random_element(std::mt19937_64& rng, const RandomElementShape& shape = {});

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::size_t cases = 0;
  std::string detail;  ///< first counterexample when failing
};

/// Ring, star and automorphism laws plus trace cyclicity on `cases` random triples.
std::vector<SuiteResult> algebra_law_suites(std::uint64_t seed, std::size_t cases);

/// phi_ij(xy) = phi_ij(flip(y) x) for all monomials with exponents in [-bound, bound].
SuiteResult twisted_trace_suite(int bound);

/// The psi/phi relations and gamma sign laws on every monomial of the grid and on random sums.
SuiteResult relation_suite(int bound, std::uint64_t seed);

/// T4(1), T2(1), rank of the basis and decompose(T4(1)).
SuiteResult unit_value_suite();

/// Everything above at the sizes used by the CLI self-test.
std::vector<SuiteResult> run_selftest(std::uint64_t seed = 20240601);

}  // namespace rotalg
