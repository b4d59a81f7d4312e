#include "parse_util.hpp"

#include <cctype>

#include "circlering/error.hpp"

namespace circlering::parse {

namespace {

[[noreturn]] void fail(std::string_view what, std::string_view context) {
  throw Error(ErrorCode::ParseError, std::string(what) + " in '" + std::string(context) + "'");
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

u64 parse_u64(std::string_view text, std::string_view context) {
  if (text.empty() || text.size() > 19) fail("expected an unsigned integer", context);
  u64 value = 0;
  for (char c : text) {
    if (!is_digit(c)) fail("expected an unsigned integer", context);
    value = value * 10 + static_cast<u64>(c - '0');
  }
  return value;
}

std::vector<mpz_class> parse_polynomial(std::string_view text, char var, unsigned max_degree) {
  std::vector<mpz_class> coeffs(max_degree + 1, 0);
  if (text.empty()) fail("empty expression", text);
  std::size_t i = 0;
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail("expected '+' or '-'", text);
    }
    first = false;
    const std::size_t digits_begin = i;
    while (i < text.size() && is_digit(text[i])) ++i;
    mpz_class coeff = 1;
    const bool has_digits = i > digits_begin;
    if (has_digits) coeff = mpz_class(std::string(text.substr(digits_begin, i - digits_begin)), 10);
    unsigned degree = 0;
    if (i < text.size() && text[i] == '*') {
      if (!has_digits) fail("dangling '*'", text);
      ++i;
      if (i >= text.size() || text[i] != var) fail("expected variable after '*'", text);
    }
    if (i < text.size() && text[i] == var) {
      ++i;
      degree = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        const std::size_t exp_begin = i;
        while (i < text.size() && is_digit(text[i])) ++i;
        if (i == exp_begin) fail("expected exponent", text);
        degree = static_cast<unsigned>(parse_u64(text.substr(exp_begin, i - exp_begin), text));
      }
    } else if (!has_digits) {
      fail("expected a term", text);
    }
    if (degree > max_degree) fail("degree too large", text);
    coeffs[degree] += sign * coeff;
  }
  return coeffs;
}

std::pair<std::string, std::string> split_pair(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
    fail("expected 'x,y'", text);
  }
  return {std::string(text.substr(0, comma)), std::string(text.substr(comma + 1))};
}

}  // namespace circlering::parse
