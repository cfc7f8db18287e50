#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rotalg/element.hpp"

namespace rotalg {

struct KScalar;
struct ChernVector;

/// Syntax error with a 1-based line/column position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  [[nodiscard]] const std::string& message() const { return message_; }
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

// Grammar shared by all parsers below:
//
//   expr    := [+|-] term {(+|-) term}
//   term    := power {[*] power}          juxtaposition multiplies
//   power   := primary [^ exponent]       exponent: [-]int or ([-]int)
//   primary := rational | symbol | ( expr )
//
// Products are taken in the order written, so "V U" normal-orders to L^4 U V.

/// Element expression over the symbols U, V, L (the phase e(theta/4)) and i.
Element parse_element(std::string_view text);

/// Phase scalar over L and i.
PhaseScalar parse_phase_scalar(std::string_view text);

/// Value (a + b t) + i (c + d t) over t (theta) and i; degree in t at most one.
KScalar parse_kscalar(std::string_view text);

/// "(tau; psi10, psi11; psi20, psi21, psi22)"; semicolons and commas are interchangeable.
ChernVector parse_chern(std::string_view text);

}  // namespace rotalg
