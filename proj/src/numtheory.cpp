#include "circlering/numtheory.hpp"

#include "circlering/error.hpp"

namespace circlering {

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 inv_mod(u64 a, u64 m) {
  if (a % m == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero residue");
  // Signed coefficients fit in __int128 because |s| <= m < 2^63.
  __int128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    const __int128 tr = old_r - q * r;
    old_r = r;
    r = tr;
    const __int128 ts = old_s - q * s;
    old_s = s;
    s = ts;
  }
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<u64>(inv);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a deterministic witness set for n < 3.3 * 10^24.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<std::pair<u64, unsigned>> factors;
  if (n < 2) return factors;
  auto strip = [&](u64 d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e != 0) factors.emplace_back(d, e);
  };
  strip(2);
  for (u64 d = 3; d <= n / d; d += 2) strip(d);
  if (n > 1) factors.emplace_back(n, 1);
  return factors;
}

std::vector<u64> odd_primes(u64 lo, u64 hi) {
  std::vector<u64> primes;
  for (u64 n = lo < 3 ? 3 : lo; n <= hi; ++n) {
    if (is_prime(n)) primes.push_back(n);
  }
  return primes;
}

namespace {

// Multiplies `acc` by the squarefree part of |n|.
void accumulate_squarefree(mpz_class n, u64 bound, mpz_class& acc) {
  // Squares and primes finish at once; otherwise trial division shrinks n until they do.
  auto settled = [&] {
    if (mpz_perfect_square_p(n.get_mpz_t()) != 0) return true;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) != 0) {
      acc *= n;
      return true;
    }
    return false;
  };
  if (settled()) return;
  for (u64 d = 2; n > 1; d += (d == 2 ? 1 : 2)) {
    if (mpz_class(d) * d > n) {
      acc *= n;  // remaining cofactor is prime
      return;
    }
    if (d >= bound) {
      throw Error(ErrorCode::FactorBoundExceeded,
                  "cofactor " + n.get_str() + " not resolved below trial-division bound " +
                      std::to_string(bound));
    }
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), d) != 0) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
      ++e;
    }
    if (e % 2 == 1) acc *= d;
    if (e != 0 && settled()) return;
  }
}

}  // namespace

mpz_class squarefree_part(const Rational& q, u64 bound) {
  if (q.is_zero()) throw Error(ErrorCode::DivisionByZero, "squarefree part of zero");
  mpz_class acc = 1;
  accumulate_squarefree(abs(q.numerator()), bound, acc);
  accumulate_squarefree(q.denominator(), bound, acc);
  return q.sign() < 0 ? mpz_class(-acc) : acc;
}

Rational CalkinWilf::next() {
  // x -> 1 / (2 floor(x) - x + 1)
  if (current_.is_zero()) {
    current_ = Rational(1);
    return current_;
  }
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), current_.numerator().get_mpz_t(), current_.denominator().get_mpz_t());
  current_ = (Rational(mpz_class(2 * fl)) - current_ + Rational(1)).inverse();
  return current_;
}

unsigned long first_real_gaussian_power(const mpz_class& x, const mpz_class& y, unsigned long bound) {
  mpz_class re = x, im = y;
  for (unsigned long n = 1; n <= bound; ++n) {
    if (im == 0) return n;
    const mpz_class next_re = re * x - im * y;
    im = re * y + im * x;
    re = next_re;
  }
  return 0;
}

}  // namespace circlering
