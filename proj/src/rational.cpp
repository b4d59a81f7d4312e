#include "circlering/rational.hpp"

#include <cctype>

#include "circlering/error.hpp"

namespace circlering {

namespace {

mpz_class parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  if (i == text.size()) throw Error(ErrorCode::ParseError, "expected an integer in '" + std::string(whole) + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
      throw Error(ErrorCode::ParseError, "invalid digit in '" + std::string(whole) + "'");
    }
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return mpz_class(digits, 10);
}

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw Error(ErrorCode::ParseError, "sign not allowed in denominator of '" + std::string(text) + "'");
  }
  return Rational(parse_integer(text.substr(0, slash), text), parse_integer(den_text, text));
}

bool Rational::is_square() const {
  if (sgn(q_) < 0) return false;
  return mpz_perfect_square_p(q_.get_num_mpz_t()) != 0 && mpz_perfect_square_p(q_.get_den_mpz_t()) != 0;
}

Rational Rational::sqrt() const {
  if (!is_square()) throw Error(ErrorCode::NotASquare, to_string() + " is not a rational square");
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q_.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q_.get_den_mpz_t());
  return Rational(mpq_class(n, d));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), q_.get_mpq_t());
  return Rational(std::move(r));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

std::string Rational::to_string() const { return q_.get_str(10); }

}  // namespace circlering
