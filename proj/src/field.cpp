#include "circlering/field.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "parse_util.hpp"

namespace circlering {

namespace detail {

struct FieldData {
  FieldKind kind;
  u64 p = 0;
  // Quadratic modulus x^2 + c1 x + c0.
  u64 c0 = 0;
  u64 c1 = 0;
  // |F| for finite fields, 0 for Q.
  u64 order = 0;
};

}  // namespace detail

namespace {

using Key = std::tuple<int, u64, u64, u64>;

struct Registry {
  std::mutex mutex;
  std::map<Key, std::unique_ptr<detail::FieldData>> fields;
};

Registry& registry() {
  static Registry r;
  return r;
}

const detail::FieldData* intern(FieldKind kind, u64 p, u64 c0, u64 c1) {
  Registry& r = registry();
  std::lock_guard lock(r.mutex);
  const Key key{static_cast<int>(kind), p, c0, c1};
  auto it = r.fields.find(key);
  if (it == r.fields.end()) {
    auto data = std::make_unique<detail::FieldData>();
    data->kind = kind;
    data->p = p;
    data->c0 = c0;
    data->c1 = c1;
    data->order = kind == FieldKind::Prime ? p : (kind == FieldKind::Quadratic ? p * p : 0);
    it = r.fields.emplace(key, std::move(data)).first;
  }
  return it->second.get();
}

bool has_root_mod(u64 p, u64 c0, u64 c1) {
  for (u64 x = 0; x < p; ++x) {
    const u64 v = add_mod(add_mod(mul_mod(x, x, p), mul_mod(c1, x, p), p), c0, p);
    if (v == 0) return true;
  }
  return false;
}

u64 reduce(const mpz_class& value, u64 p) {
  static_assert(sizeof(unsigned long) == sizeof(u64));
  return mpz_fdiv_ui(value.get_mpz_t(), p);
}

std::string term_string(u64 coeff, std::string_view var) {
  if (coeff == 1) return std::string(var);
  return std::to_string(coeff) + std::string(var);
}

}  // namespace

// ---------------------------------------------------------------------------
// Field

Field Field::prime(u64 p) {
  if (p >= kMaxModulus || !is_prime(p)) {
    throw Error(ErrorCode::InvalidDescriptor, std::to_string(p) + " is not a prime below 2^63");
  }
  return Field(intern(FieldKind::Prime, p, 0, 0));
}

Field Field::quadratic(u64 p, u64 c0, u64 c1) {
  if (p >= (u64{1} << 32) || !is_prime(p)) {
    throw Error(ErrorCode::InvalidDescriptor,
                std::to_string(p) + " is not a prime below 2^32 (quadratic extensions)");
  }
  c0 %= p;
  c1 %= p;
  if (has_root_mod(p, c0, c1)) {
    throw Error(ErrorCode::InvalidDescriptor, "modulus polynomial is reducible over F_" + std::to_string(p));
  }
  return Field(intern(FieldKind::Quadratic, p, c0, c1));
}

Field Field::quadratic(u64 p) {
  if (p == 2) return quadratic(2, 1, 1);
  if (!is_prime(p)) throw Error(ErrorCode::InvalidDescriptor, std::to_string(p) + " is not prime");
  for (u64 c = 1; c < p; ++c) {
    if (!has_root_mod(p, c, 0)) return quadratic(p, c, 0);
  }
  throw Error(ErrorCode::InvalidDescriptor, "no irreducible x^2 + c over F_" + std::to_string(p));
}

Field Field::rationals() { return Field(intern(FieldKind::Rationals, 0, 0, 0)); }

Field Field::parse(std::string_view text) {
  const std::string s = parse::strip_spaces(text);
  if (s == "Q") return rationals();
  if (s.rfind("Fp:", 0) == 0) return prime(parse::parse_u64(s.substr(3), s));
  if (s.rfind("Fp2:", 0) == 0) {
    const auto comma = s.find(',', 4);
    if (comma == std::string::npos) {
      throw Error(ErrorCode::ParseError, "expected 'Fp2:<p>,<monic quadratic>' in '" + s + "'");
    }
    const u64 p = parse::parse_u64(s.substr(4, comma - 4), s);
    if (p == 0) throw Error(ErrorCode::InvalidDescriptor, "characteristic must be prime");
    const auto coeffs = parse::parse_polynomial(s.substr(comma + 1), 'x', 2);
    if (coeffs.size() != 3 || reduce(coeffs[2], p) != 1) {
      throw Error(ErrorCode::InvalidDescriptor, "modulus must be a monic quadratic in '" + s + "'");
    }
    return quadratic(p, reduce(coeffs[0], p), reduce(coeffs[1], p));
  }
  throw Error(ErrorCode::ParseError, "unknown field descriptor '" + s + "'");
}

FieldKind Field::kind() const { return data_->kind; }

u64 Field::characteristic() const { return data_->p; }

u64 Field::size() const {
  if (!is_finite()) throw Error(ErrorCode::InfiniteField, "Q has no finite size");
  return data_->order;
}

std::pair<u64, u64> Field::modulus_polynomial() const {
  if (kind() != FieldKind::Quadratic) throw Error(ErrorCode::WrongFieldKind, "not a quadratic extension");
  return {data_->c0, data_->c1};
}

Field Field::prime_subfield() const {
  switch (kind()) {
    case FieldKind::Prime:
    case FieldKind::Rationals:
      return *this;
    case FieldKind::Quadratic:
      return prime(data_->p);
  }
  return *this;
}

std::string Field::to_string() const {
  switch (kind()) {
    case FieldKind::Prime:
      return "Fp:" + std::to_string(data_->p);
    case FieldKind::Quadratic: {
      std::string poly = "x^2";
      if (data_->c1 != 0) poly += "+" + term_string(data_->c1, "x");
      if (data_->c0 != 0) poly += "+" + std::to_string(data_->c0);
      return "Fp2:" + std::to_string(data_->p) + "," + poly;
    }
    case FieldKind::Rationals:
      return "Q";
  }
  return "?";
}

Element Field::zero() const { return element(0L); }

Element Field::one() const { return element(1L); }

Element Field::element(long value) const {
  if (!is_finite()) return Element(*this, Rational(value));
  const u64 p = data_->p;
  const u64 mag = value < 0 ? static_cast<u64>(-(value + 1)) + 1 : static_cast<u64>(value);
  const u64 r = mag % p;
  return Element(*this, Element::Residues{value < 0 ? (r == 0 ? 0 : p - r) : r, 0});
}

Element Field::element(const Rational& value) const {
  if (!is_finite()) return Element(*this, value);
  const u64 p = data_->p;
  const u64 num = reduce(value.numerator(), p);
  const u64 den = reduce(value.denominator(), p);
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "denominator vanishes modulo " + std::to_string(p));
  return Element(*this, Element::Residues{mul_mod(num, inv_mod(den, p), p), 0});
}

Element Field::element(u64 c0, u64 c1) const {
  if (!is_finite()) throw Error(ErrorCode::WrongFieldKind, "residue pair given for Q");
  const u64 p = data_->p;
  if (kind() == FieldKind::Prime && c1 % p != 0) {
    throw Error(ErrorCode::WrongFieldKind, "prime field element with extension coordinate");
  }
  return Element(*this, Element::Residues{c0 % p, c1 % p});
}

Element Field::embed(const Element& prime_element) const {
  if (!(prime_element.field() == prime_subfield())) {
    throw Error(ErrorCode::DescriptorMismatch, "element is not from the prime subfield of " + to_string());
  }
  if (!is_finite()) return prime_element;
  return element(prime_element.c0(), 0);
}

Element Field::parse_element(std::string_view text) const {
  const std::string s = parse::strip_spaces(text);
  if (!is_finite()) return Element(*this, Rational::parse(s));
  const u64 p = data_->p;
  if (kind() == FieldKind::Prime && s.find('/') != std::string::npos) {
    return element(Rational::parse(s));
  }
  const auto coeffs = parse::parse_polynomial(s, 'a', kind() == FieldKind::Quadratic ? 1 : 0);
  const u64 c0 = reduce(coeffs[0], p);
  const u64 c1 = coeffs.size() > 1 ? reduce(coeffs[1], p) : 0;
  return element(c0, c1);
}

std::vector<Element> Field::elements() const {
  const u64 n = size();
  std::vector<Element> out;
  out.reserve(n);
  const u64 p = data_->p;
  if (kind() == FieldKind::Prime) {
    for (u64 c0 = 0; c0 < p; ++c0) out.push_back(Element(*this, Element::Residues{c0, 0}));
  } else {
    for (u64 c0 = 0; c0 < p; ++c0) {
      for (u64 c1 = 0; c1 < p; ++c1) out.push_back(Element(*this, Element::Residues{c0, c1}));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Element

void Element::require_same_field(const Element& o) const {
  if (!(field_ == o.field_)) {
    throw Error(ErrorCode::DescriptorMismatch,
                "elements of " + field_.to_string() + " and " + o.field_.to_string() + " mixed");
  }
}

bool Element::is_zero() const {
  if (const auto* r = std::get_if<Residues>(&value_)) return r->c0 == 0 && r->c1 == 0;
  return std::get<Rational>(value_).is_zero();
}

bool Element::is_one() const {
  if (const auto* r = std::get_if<Residues>(&value_)) return r->c0 == 1 % field_.data_->p && r->c1 == 0;
  return std::get<Rational>(value_) == Rational(1);
}

u64 Element::c0() const {
  if (!field_.is_finite()) throw Error(ErrorCode::WrongFieldKind, "residues requested for Q");
  return residues().c0;
}

u64 Element::c1() const {
  if (!field_.is_finite()) throw Error(ErrorCode::WrongFieldKind, "residues requested for Q");
  return residues().c1;
}

const Rational& Element::rational() const {
  if (field_.is_finite()) throw Error(ErrorCode::WrongFieldKind, "rational requested for finite field");
  return std::get<Rational>(value_);
}

Element Element::operator+(const Element& o) const {
  require_same_field(o);
  if (!field_.is_finite()) return Element(field_, std::get<Rational>(value_) + std::get<Rational>(o.value_));
  const u64 p = field_.data_->p;
  const Residues& a = residues();
  const Residues& b = o.residues();
  return Element(field_, Residues{add_mod(a.c0, b.c0, p), add_mod(a.c1, b.c1, p)});
}

Element Element::operator-(const Element& o) const {
  require_same_field(o);
  if (!field_.is_finite()) return Element(field_, std::get<Rational>(value_) - std::get<Rational>(o.value_));
  const u64 p = field_.data_->p;
  const Residues& a = residues();
  const Residues& b = o.residues();
  return Element(field_, Residues{sub_mod(a.c0, b.c0, p), sub_mod(a.c1, b.c1, p)});
}

Element Element::operator*(const Element& o) const {
  require_same_field(o);
  const detail::FieldData& f = *field_.data_;
  switch (f.kind) {
    case FieldKind::Rationals:
      return Element(field_, std::get<Rational>(value_) * std::get<Rational>(o.value_));
    case FieldKind::Prime:
      return Element(field_, Residues{mul_mod(residues().c0, o.residues().c0, f.p), 0});
    case FieldKind::Quadratic: {
      // (a0 + a1 x)(b0 + b1 x) with x^2 = -c1 x - c0; p < 2^32 keeps products in 64 bits.
      const u64 p = f.p;
      const Residues& a = residues();
      const Residues& b = o.residues();
      const u64 lo = a.c0 * b.c0 % p;
      const u64 mid = (a.c0 * b.c1 % p + a.c1 * b.c0 % p) % p;
      const u64 hi = a.c1 * b.c1 % p;
      return Element(field_, Residues{sub_mod(lo, hi * f.c0 % p, p), sub_mod(mid, hi * f.c1 % p, p)});
    }
  }
  return *this;
}

Element Element::operator/(const Element& o) const { return *this * o.inverse(); }

Element Element::operator-() const {
  if (!field_.is_finite()) return Element(field_, -std::get<Rational>(value_));
  const u64 p = field_.data_->p;
  const Residues& a = residues();
  return Element(field_, Residues{sub_mod(0, a.c0, p), sub_mod(0, a.c1, p)});
}

Element Element::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + field_.to_string());
  const detail::FieldData& f = *field_.data_;
  switch (f.kind) {
    case FieldKind::Rationals:
      return Element(field_, std::get<Rational>(value_).inverse());
    case FieldKind::Prime:
      return Element(field_, Residues{inv_mod(residues().c0, f.p), 0});
    case FieldKind::Quadratic: {
      // For z = a0 + a1 x with conjugate root x' = -c1 - x:
      // z * (a0 + a1 x') = a0^2 - c1 a0 a1 + c0 a1^2 =: N(z) in F_p.
      const u64 p = f.p;
      const Residues& a = residues();
      const u64 norm = sub_mod(add_mod(a.c0 * a.c0 % p, f.c0 * (a.c1 * a.c1 % p) % p, p),
                               f.c1 * (a.c0 * a.c1 % p) % p, p);
      const u64 ninv = inv_mod(norm, p);
      // conjugate = (a0 - c1 a1) - a1 x
      const u64 conj0 = sub_mod(a.c0, f.c1 * a.c1 % p, p);
      const u64 conj1 = sub_mod(0, a.c1, p);
      return Element(field_, Residues{conj0 * ninv % p, conj1 * ninv % p});
    }
  }
  return *this;
}

Element Element::pow(u64 exponent) const {
  Element result = field_.one();
  Element base = *this;
  while (exponent != 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent != 0) base = base * base;
  }
  return result;
}

bool Element::is_square() const {
  if (!field_.is_finite()) return std::get<Rational>(value_).is_square();
  if (is_zero() || field_.characteristic() == 2) return true;
  // Euler's criterion in the multiplicative group of order |F| - 1.
  return pow((field_.data_->order - 1) / 2).is_one();
}

namespace {

// Tonelli-Shanks in the cyclic group F*, |F| odd.
Element tonelli_shanks(const Element& a) {
  const Field& field = a.field();
  const u64 group_order = field.size() - 1;
  u64 q = group_order;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  // Least non-square in canonical order.
  const u64 p = field.characteristic();
  const bool prime = field.kind() == FieldKind::Prime;
  std::optional<Element> z;
  for (u64 i = 2; !z; ++i) {
    Element candidate = prime ? field.element(i, 0) : field.element(i / p, i % p);
    if (!candidate.is_square()) z = candidate;
  }
  Element c = z->pow(q);
  Element x = a.pow((q + 1) / 2);
  Element t = a.pow(q);
  unsigned m = s;
  while (!t.is_one()) {
    unsigned i = 0;
    Element t2 = t;
    while (!t2.is_one()) {
      t2 = t2 * t2;
      ++i;
    }
    Element b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b;
    x = x * b;
    c = b * b;
    t = t * c;
    m = i;
  }
  return x;
}

}  // namespace

Element Element::sqrt() const {
  if (!is_square()) throw Error(ErrorCode::NotASquare, to_string() + " is not a square in " + field_.to_string());
  if (!field_.is_finite()) return Element(field_, std::get<Rational>(value_).sqrt());
  if (is_zero()) return *this;
  if (field_.characteristic() == 2) {
    // Frobenius is bijective: sqrt(a) = a^(|F|/2).
    return pow(field_.size() / 2);
  }
  Element root = [&] {
    if (field_.kind() == FieldKind::Prime && field_.characteristic() % 4 == 3) {
      return pow((field_.characteristic() + 1) / 4);
    }
    return tonelli_shanks(*this);
  }();
  Element other = -root;
  return other < root ? other : root;
}

bool Element::in_prime_subfield() const {
  if (const auto* r = std::get_if<Residues>(&value_)) return r->c1 == 0;
  return true;
}

bool Element::is_prime_square() const {
  if (!in_prime_subfield()) return false;
  if (field_.kind() != FieldKind::Quadratic) return is_square();
  return field_.prime_subfield().element(residues().c0, 0).is_square();
}

std::string Element::to_string() const {
  if (!field_.is_finite()) return std::get<Rational>(value_).to_string();
  const Residues& r = residues();
  if (r.c1 == 0) return std::to_string(r.c0);
  if (r.c0 == 0) return term_string(r.c1, "a");
  return std::to_string(r.c0) + "+" + term_string(r.c1, "a");
}

bool operator==(const Element& a, const Element& b) {
  return a.field_ == b.field_ && a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Element& a, const Element& b) {
  a.require_same_field(b);
  if (!a.field_.is_finite()) return std::get<Rational>(a.value_) <=> std::get<Rational>(b.value_);
  return a.residues() <=> b.residues();
}

bool contains_sqrt_minus_one(const Field& field) {
  if (!field.is_finite()) return false;
  return (-field.one()).is_square();
}

u64 circle_size(const Field& field) {
  const u64 q = field.size();
  if (field.characteristic() == 2) return q;
  return contains_sqrt_minus_one(field) ? q - 1 : q + 1;
}

}  // namespace circlering
