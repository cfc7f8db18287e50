#include "rotalg/text_format.hpp"

#include <cctype>
#include <functional>
#include <optional>

#include "rotalg/chern_lattice.hpp"

namespace rotalg {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
      message_(what),
      line_(line),
      column_(column) {}

namespace {

// Recursive-descent parser over any ring-like Value. Symbols are single
// letters; `symbol(letter, exponent)` builds letter^exponent or rejects it.
template <typename Value>
class ExprParser {
 public:
  using SymbolFn = std::function<std::optional<Value>(char, std::int64_t)>;

  ExprParser(std::string_view text, SymbolFn symbol, std::string allowed)
      : text_(text), symbol_(std::move(symbol)), allowed_(std::move(allowed)) {}

  Value parse_all() {
    Value v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }

  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < at && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool starts_factor(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || allowed_.find(c) != std::string::npos;
  }

  Value expr() {
    Value acc{};
    bool first = true;
    while (true) {
      char c = peek();
      int sign = 1;
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      Value t = term();
      acc = sign > 0 ? acc + t : acc - t;
      first = false;
      char n = peek();
      if (n != '+' && n != '-') break;
    }
    return acc;
  }

  Value term() {
    Value acc = power();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * power();
      } else if (c != '\0' && starts_factor(c)) {
        acc = acc * power();
      } else {
        break;
      }
    }
    return acc;
  }

  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    skip_ws();
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (digits == pos_) fail_at("expected integer exponent", start);
    std::int64_t v = Rational::parse(text_.substr(digits, pos_ - digits)).to_integer();
    return neg ? -v : v;
  }

  std::int64_t exponent() {
    if (peek() == '(') {
      ++pos_;
      std::int64_t e = integer();
      if (peek() != ')') fail("expected ')' after exponent");
      ++pos_;
      return e;
    }
    return integer();
  }

  Value power() {
    char c = peek();
    std::size_t at = pos_;
    if (c != '\0' && std::isalpha(static_cast<unsigned char>(c))) {
      ++pos_;
      std::int64_t e = 1;
      if (peek() == '^') {
        ++pos_;
        e = exponent();
      }
      auto v = symbol_(c, e);
      if (!v) fail_at("symbol '" + std::string(1, c) + "' with exponent " + std::to_string(e) + " not allowed here", at);
      return *v;
    }
    Value base = primary();
    if (peek() == '^') {
      ++pos_;
      std::size_t eat = pos_;
      std::int64_t e = exponent();
      if (e < 0) fail_at("negative exponent on a compound factor", eat);
      Value r = Value(1);
      for (std::int64_t k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }

  Value primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::size_t den = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (den == pos_) fail("expected denominator");
      }
      try {
        return Value(GaussRational(Rational::parse(text_.substr(start, pos_ - start))));
      } catch (const std::exception& e) {
        fail_at(e.what(), start);
      }
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  SymbolFn symbol_;
  std::string allowed_;
  std::size_t pos_ = 0;
};

std::optional<Element> element_symbol(char c, std::int64_t e) {
  switch (c) {
    case 'U':
      return Element::U(e);
    case 'V':
      return Element::V(e);
    case 'L':
      return Element(PhaseScalar::lambda_pow(e));
    case 'i': {
      if (e < 0) return std::nullopt;
      static const GaussRational powers[] = {GaussRational(1), kImagUnit, GaussRational(-1), -kImagUnit};
      return Element(PhaseScalar(powers[e % 4]));
    }
    default:
      return std::nullopt;
  }
}

// Polynomials in t reuse the Laurent machinery of PhaseScalar with t in place of L.
std::optional<PhaseScalar> theta_symbol(char c, std::int64_t e) {
  if (c == 't' && e >= 0) return PhaseScalar::lambda_pow(e);
  if (c == 'i' && e >= 0) {
    static const GaussRational powers[] = {GaussRational(1), kImagUnit, GaussRational(-1), -kImagUnit};
    return PhaseScalar(powers[e % 4]);
  }
  return std::nullopt;
}

std::optional<PhaseScalar> phase_symbol(char c, std::int64_t e) {
  if (c == 'L') return PhaseScalar::lambda_pow(e);
  if (c == 'i') return theta_symbol(c, e);
  return std::nullopt;
}

KScalar to_kscalar(const PhaseScalar& poly, std::string_view text) {
  for (const auto& [k, c] : poly.terms()) {
    if (k < 0 || k > 1) throw ParseError("degree in t must be at most one in '" + std::string(text) + "'", 1, 1);
  }
  GaussRational c0 = poly.coeff(0), c1 = poly.coeff(1);
  return {c0.re, c1.re, c0.im, c1.im};
}

}  // namespace

Element parse_element(std::string_view text) {
  return ExprParser<Element>(text, element_symbol, "UVLi").parse_all();
}

PhaseScalar parse_phase_scalar(std::string_view text) {
  return ExprParser<PhaseScalar>(text, phase_symbol, "Li").parse_all();
}

KScalar parse_kscalar(std::string_view text) {
  return to_kscalar(ExprParser<PhaseScalar>(text, theta_symbol, "ti").parse_all(), text);
}

ChernVector parse_chern(std::string_view text) {
  std::size_t open = text.find('(');
  std::size_t close = text.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw ParseError("Chern vector must be enclosed in parentheses", 1, 1);
  }
  for (std::size_t k = 0; k < open; ++k) {
    if (!std::isspace(static_cast<unsigned char>(text[k]))) throw ParseError("unexpected text before '('", 1, k + 1);
  }
  for (std::size_t k = close + 1; k < text.size(); ++k) {
    if (!std::isspace(static_cast<unsigned char>(text[k]))) throw ParseError("unexpected text after ')'", 1, k + 1);
  }
  std::array<KScalar, 6> slots;
  std::size_t slot = 0;
  std::size_t start = open + 1;
  for (std::size_t k = open + 1; k <= close; ++k) {
    if (k == close || text[k] == ';' || text[k] == ',') {
      if (slot == 6) throw ParseError("Chern vector has more than six slots", 1, k + 1);
      std::string_view piece = text.substr(start, k - start);
      try {
        slots[slot++] = parse_kscalar(piece);
      } catch (const ParseError& e) {
        throw ParseError("slot " + std::to_string(slot) + ": " + e.message(), 1, start + e.column());
      }
      start = k + 1;
    }
  }
  if (slot != 6) throw ParseError("Chern vector needs six slots, got " + std::to_string(slot), 1, close + 1);
  return ChernVector::from_slots(slots);
}

}  // namespace rotalg
