#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "circlering/rational.hpp"

namespace circlering {

using u64 = std::uint64_t;

/// Moduli are limited to p < 2^63 so sums of two residues never overflow.
inline constexpr u64 kMaxModulus = u64{1} << 63;

inline u64 add_mod(u64 a, u64 b, u64 m) {
  const u64 s = a + b;
  return s >= m ? s - m : s;
}
inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }
inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}
u64 pow_mod(u64 base, u64 exp, u64 m);
/// Inverse of a nonzero residue modulo a prime, by the extended Euclidean algorithm.
u64 inv_mod(u64 a, u64 m);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(u64 n);

/// Prime factorization by trial division, as (prime, exponent) pairs in increasing order.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

/// Odd primes p with lo <= p <= hi, in increasing order.
std::vector<u64> odd_primes(u64 lo, u64 hi);

inline constexpr u64 kDefaultFactorBound = 1'000'000;

/// Representative (-1)^k p1 p2 ... pn of q in Q*/(Q*)^2. A cofactor that is a perfect square
/// or a (probable) prime is resolved directly; Error(FactorBoundExceeded) is thrown when any
/// other cofactor survives trial division below `bound`, and
/// Error(DivisionByZero) for q = 0.
mpz_class squarefree_part(const Rational& q, u64 bound = kDefaultFactorBound);

/// The Calkin-Wilf enumeration of the positive rationals: 1, 1/2, 2, 1/3, 3/2, ...
class CalkinWilf {
 public:
  Rational next();

 private:
  Rational current_{0};
};

/// Smallest n >= 1 with (x + iy)^n a real number, searching up to `bound`; 0 if none.
unsigned long first_real_gaussian_power(const mpz_class& x, const mpz_class& y,
                                        unsigned long bound);

}  // namespace circlering
