#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "circlering/numtheory.hpp"

namespace circlering::parse {

std::string strip_spaces(std::string_view text);

/// Unsigned decimal integer; `context` is quoted in error messages.
u64 parse_u64(std::string_view text, std::string_view context);

/// Sum of signed terms `c`, `c*v`, `cv`, `v`, `v^k` in the variable `var` with degree
/// at most `max_degree`. Returns integer coefficients indexed by degree (size max_degree + 1).
std::vector<mpz_class> parse_polynomial(std::string_view text, char var, unsigned max_degree);

/// Splits "x,y" at the single top-level comma.
std::pair<std::string, std::string> split_pair(std::string_view text);

}  // namespace circlering::parse
