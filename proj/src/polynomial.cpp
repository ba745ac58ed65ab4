#include "ptdomain/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "ptdomain/errors.hpp"

namespace ptdomain {

Rational exact_rational(double value) {
  if (!std::isfinite(value)) {
    throw InvalidInput("non-finite value cannot be converted to a rational");
  }
  return Rational(value);
}

namespace {

Rational pow10(long exponent) {
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  if (exponent >= 0) return Rational(power);
  Rational r(mpz_class(1), power);
  r.canonicalize();
  return r;
}

Rational parse_decimal(const std::string& text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw InvalidInput("malformed number '" + text + "'");
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    const std::string rest = text.substr(pos);
    std::size_t used = 0;
    try {
      exponent = std::stol(rest, &used);
    } catch (const std::exception&) {
      throw InvalidInput("malformed exponent in '" + text + "'");
    }
    pos += used;
  }
  if (pos != text.size()) throw InvalidInput("malformed number '" + text + "'");
  Rational value(mpz_class(digits, 10));
  value *= pow10(exponent - scale);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char ch : raw) {
    if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
  }
  if (text.empty()) throw InvalidInput("empty rational literal");
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_decimal(text);
  const Rational num = parse_decimal(text.substr(0, slash));
  const Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw InvalidInput("zero denominator in '" + raw + "'");
  Rational out = num / den;
  out.canonicalize();
  return out;
}

long double to_long_double(const Rational& value) {
  const double hi = value.get_d();
  const Rational rest = value - Rational(hi);
  return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

int sign(const Rational& value) { return sgn(value); }

RationalPoly::RationalPoly(std::vector<Rational> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

RationalPoly::RationalPoly(std::initializer_list<Rational> coefficients)
    : coeffs_(coefficients) {
  trim();
}

RationalPoly RationalPoly::monomial(const Rational& coefficient, int degree) {
  std::vector<Rational> c(static_cast<std::size_t>(degree) + 1, Rational(0));
  c.back() = coefficient;
  return RationalPoly(std::move(c));
}

void RationalPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPoly::coefficient(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

const Rational& RationalPoly::leading() const {
  if (coeffs_.empty()) throw InvalidInput("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

Rational RationalPoly::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

long double RationalPoly::evaluate(long double x) const {
  long double acc = 0.0L;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + to_long_double(*it);
  }
  return acc;
}

RationalPoly RationalPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    d[k - 1] = coeffs_[k] * static_cast<long>(k);
  }
  return RationalPoly(std::move(d));
}

RationalPoly RationalPoly::monic() const {
  if (coeffs_.empty()) return {};
  const Rational lead = coeffs_.back();
  RationalPoly out(*this);
  for (auto& c : out.coeffs_) c /= lead;
  return out;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

RationalPoly operator*(const RationalPoly& lhs, const RationalPoly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<Rational> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    if (lhs.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
    }
  }
  return RationalPoly(std::move(out));
}

std::pair<RationalPoly, RationalPoly> RationalPoly::divmod(const RationalPoly& divisor) const {
  if (divisor.is_zero()) throw InvalidInput("polynomial division by zero");
  if (degree() < divisor.degree()) return {RationalPoly{}, *this};
  std::vector<Rational> rem = coeffs_;
  const int dd = divisor.degree();
  std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd) + 1, Rational(0));
  const Rational& lead = divisor.leading();
  for (int k = degree(); k >= dd; --k) {
    const Rational factor = rem[static_cast<std::size_t>(k)] / lead;
    quot[static_cast<std::size_t>(k - dd)] = factor;
    if (factor == 0) continue;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(k - dd + j)] -= factor * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

std::string RationalPoly::to_string(const std::string& variable) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    const bool unit = mag == 1 && k > 0;
    if (!unit) out << mag.get_str();
    if (k > 0) {
      if (!unit) out << "*";
      out << variable;
      if (k > 1) out << "^" << k;
    }
    first = false;
  }
  return out.str();
}

RationalPoly gcd(RationalPoly a, RationalPoly b) {
  while (!b.is_zero()) {
    auto [q, r] = a.divmod(b);
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

RationalPoly from_roots(const std::vector<Rational>& roots) {
  RationalPoly out{Rational(1)};
  for (const auto& r : roots) out = out * RationalPoly{Rational(-r), Rational(1)};
  return out;
}

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace ptdomain
