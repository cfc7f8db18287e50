#include "rotalg/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rotalg {

namespace {

constexpr std::size_t kPresetTerms = 200;

std::vector<std::int64_t> cf_of_real(Real x, std::size_t max_terms) {
  std::vector<std::int64_t> terms;
  for (std::size_t k = 0; k < max_terms; ++k) {
    Real a = boost::multiprecision::floor(x);
    if (a > Real(std::numeric_limits<std::int64_t>::max() / 2)) break;
    terms.push_back(static_cast<std::int64_t>(a));
    Real frac = x - a;
    if (frac == 0) break;
    x = 1 / frac;
  }
  return terms;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

ThetaParam::ThetaParam(std::vector<std::int64_t> cf, Real value, std::string name)
    : cf_(std::move(cf)), value_(std::move(value)), name_(std::move(name)) {
  if (cf_.empty() || cf_.front() != 0) throw std::invalid_argument("theta must lie in (0,1): cf must start with 0");
  if (std::any_of(cf_.begin() + 1, cf_.end(), [](std::int64_t a) { return a <= 0; })) {
    throw std::invalid_argument("continued-fraction terms after the first must be positive");
  }
  if (value_ <= 0 || value_ >= 1) throw std::invalid_argument("theta must lie in (0,1)");
  __int128 p_prev = 1, q_prev = 0, p = cf_[0], q = 1;
  conv_.push_back({static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)});
  for (std::size_t k = 1; k < cf_.size(); ++k) {
    __int128 pn = cf_[k] * p + p_prev;
    __int128 qn = cf_[k] * q + q_prev;
    if (pn > std::numeric_limits<std::int64_t>::max() / 4 || qn > std::numeric_limits<std::int64_t>::max() / 4) break;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
    conv_.push_back({static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)});
  }
}

ThetaParam ThetaParam::golden() {
  Real v = (boost::multiprecision::sqrt(Real(5)) - 1) / 2;
  std::vector<std::int64_t> cf(kPresetTerms, 1);
  cf[0] = 0;
  return ThetaParam(std::move(cf), v, "golden");
}

ThetaParam ThetaParam::sqrt2() {
  Real v = boost::multiprecision::sqrt(Real(2)) - 1;
  std::vector<std::int64_t> cf(kPresetTerms, 2);
  cf[0] = 0;
  return ThetaParam(std::move(cf), v, "sqrt2");
}

ThetaParam ThetaParam::from_cf(std::vector<std::int64_t> terms, std::string name) {
  if (terms.size() < 2) throw std::invalid_argument("continued fraction needs at least [0; a1]");
  // Evaluate from the tail; the prefix value is accurate to 1/q_n^2.
  Real v = Real(terms.back());
  for (std::size_t k = terms.size() - 1; k-- > 0;) v = Real(terms[k]) + 1 / v;
  if (name.empty()) {
    std::ostringstream os;
    os << "[0;";
    for (std::size_t k = 1; k < terms.size(); ++k) os << (k > 1 ? "," : "") << terms[k];
    os << "]";
    name = os.str();
  }
  return ThetaParam(std::move(terms), v, std::move(name));
}

ThetaParam ThetaParam::from_decimal(std::string_view literal) {
  std::string lit = trim(literal);
  auto dot = lit.find('.');
  if (dot == std::string::npos || lit.find_first_not_of("0123456789.") != std::string::npos) {
    throw std::invalid_argument("invalid decimal theta '" + lit + "'");
  }
  std::size_t digits = lit.size() - dot - 1;
  Real x(lit);
  Real half_ulp = boost::multiprecision::pow(Real(10), -static_cast<int>(digits)) / 2;
  auto lo = cf_of_real(x - half_ulp, 400);
  auto hi = cf_of_real(x + half_ulp, 400);
  std::vector<std::int64_t> common;
  for (std::size_t k = 0; k < std::min(lo.size(), hi.size()) && lo[k] == hi[k]; ++k) common.push_back(lo[k]);
  if (common.size() < 2) throw std::invalid_argument("decimal theta '" + lit + "' has too few significant digits");
  return ThetaParam(std::move(common), x, lit);
}

ThetaParam ThetaParam::parse(std::string_view theta_text) {
  std::string s = trim(theta_text);
  if (s == "golden") return golden();
  if (s == "sqrt2") return sqrt2();
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw std::invalid_argument("unterminated continued fraction '" + s + "'");
    std::string body = s.substr(1, s.size() - 2);
    std::replace(body.begin(), body.end(), ';', ',');
    std::vector<std::int64_t> terms;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) terms.push_back(Rational::parse(trim(item)).to_integer());
    return from_cf(std::move(terms));
  }
  return from_decimal(s);
}

ThetaParam ThetaParam::reflected() const {
  std::vector<std::int64_t> cf;
  cf.push_back(0);
  if (cf_.size() >= 3 && cf_[1] == 1) {
    cf.push_back(cf_[2] + 1);
    cf.insert(cf.end(), cf_.begin() + 3, cf_.end());
  } else if (cf_.size() >= 2 && cf_[1] > 1) {
    cf.push_back(1);
    cf.push_back(cf_[1] - 1);
    cf.insert(cf.end(), cf_.begin() + 2, cf_.end());
  } else {
    throw InsufficientCfData("continued fraction too short to reflect");
  }
  std::string nm = name_.rfind("1-", 0) == 0 ? name_.substr(2) : "1-" + name_;
  return ThetaParam(std::move(cf), 1 - value_, std::move(nm));
}

std::vector<Convergent> ThetaParam::convergents(std::size_t n) const {
  if (n > conv_.size()) {
    throw InsufficientCfData("requested " + std::to_string(n) + " convergents but only " +
                             std::to_string(conv_.size()) + " are available");
  }
  return {conv_.begin(), conv_.begin() + static_cast<std::ptrdiff_t>(n)};
}

int ThetaParam::sign_of(const Rational& a, const Rational& b) const {
  if (b.is_zero()) return a.sign();
  // a + b*theta > 0  <=>  theta > r (b > 0)  or  theta < r (b < 0), with r = -a/b.
  const Rational r = -a / b;
  const int side = b.sign();
  // theta lies strictly between c_k and c_{k+1}; even-index convergents are below theta.
  for (std::size_t k = 0; k + 1 < conv_.size(); ++k) {
    Rational lo = conv_[k].value();
    Rational hi = conv_[k + 1].value();
    if (k % 2 == 1) std::swap(lo, hi);
    if (r <= lo) return side;   // theta > lo >= r
    if (r >= hi) return -side;  // theta < hi <= r
  }
  throw InsufficientCfData("continued-fraction prefix of " + name_ + " cannot resolve sign of " + a.str() + " + " +
                           b.str() + "*theta");
}

std::int64_t ThetaParam::floor_of(std::int64_t a, std::int64_t b) const {
  if (b == 0) return a;
  auto c = static_cast<std::int64_t>(std::floor(eval(a, b)));
  while (sign_of(Rational(a) - c, b) < 0) --c;
  while (sign_of(Rational(a) - (c + 1), b) >= 0) ++c;
  return c;
}

double ThetaParam::eval(const Rational& a, const Rational& b) const {
  Real v = Real(a.num()) / Real(a.den()) + Real(b.num()) / Real(b.den()) * value_;
  return static_cast<double>(v);
}

}  // namespace rotalg
