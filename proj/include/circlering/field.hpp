#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "circlering/error.hpp"
#include "circlering/numtheory.hpp"
#include "circlering/rational.hpp"

namespace circlering {

enum class FieldKind { Prime, Quadratic, Rationals };

class Element;

namespace detail {
struct FieldData;
}

/// Descriptor of one of the supported fields: F_p, F_p[x]/(x^2 + c1 x + c0), or Q.
///
/// Descriptors are interned: every distinct field is created once and lives for the
/// rest of the process, so a Field is a cheap, trivially copyable handle and two
/// handles compare equal iff they describe the same field.
///
/// Text syntax: `Fp:7`, `Fp2:7,x^2+1`, `Q`.
class Field {
 public:
  /// Throws Error(InvalidDescriptor) unless p is a prime below 2^63.
  static Field prime(u64 p);
  /// F_p[x]/(x^2 + c1 x + c0). Requires p < 2^32 and the polynomial to have no root in F_p.
  static Field quadratic(u64 p, u64 c0, u64 c1);
  /// F_{p^2} with a fixed modulus: x^2 + x + 1 for p = 2, otherwise x^2 + c for the least c
  /// making it irreducible.
  static Field quadratic(u64 p);
  static Field rationals();
  static Field parse(std::string_view text);

  FieldKind kind() const;
  /// p for finite fields, 0 for Q.
  u64 characteristic() const;
  bool is_finite() const { return kind() != FieldKind::Rationals; }
  /// Number of elements; throws Error(InfiniteField) for Q.
  u64 size() const;
  /// Coefficients (c0, c1) of the modulus x^2 + c1 x + c0; only for Quadratic.
  std::pair<u64, u64> modulus_polynomial() const;
  /// F_p for finite fields, Q for Q.
  Field prime_subfield() const;

  std::string to_string() const;

  Element zero() const;
  Element one() const;
  Element element(long value) const;
  Element element(const Rational& value) const;
  /// c0 + c1 a; residues are reduced modulo p. Only for finite fields (c1 must be 0 for F_p).
  Element element(u64 c0, u64 c1) const;
  /// Image of an element of the prime subfield.
  Element embed(const Element& prime_element) const;
  /// Element text syntax: `5`, `3+2a`, `a+4`, `-14/25`.
  Element parse_element(std::string_view text) const;

  /// All elements of a finite field in canonical order; throws Error(InfiniteField) for Q.
  std::vector<Element> elements() const;

  friend bool operator==(const Field& a, const Field& b) { return a.data_ == b.data_; }

 private:
  explicit Field(const detail::FieldData* data) : data_(data) {}

  const detail::FieldData* data_;

  friend class Element;
};

/// Exact field element in canonical form.
///
/// Finite-field elements are residue pairs (c0, c1) meaning c0 + c1 a (c1 = 0 for F_p);
/// elements of Q are reduced fractions. Elements are ordered by canonical representation:
/// lexicographically on (c0, c1) for finite fields, numerically for Q.
class Element {
 public:
  const Field& field() const { return field_; }

  bool is_zero() const;
  bool is_one() const;

  /// Residue coordinates; throw Error(WrongFieldKind) for Q.
  u64 c0() const;
  u64 c1() const;
  /// Throws Error(WrongFieldKind) for finite fields.
  const Rational& rational() const;

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  /// Throws Error(DivisionByZero).
  Element operator/(const Element& o) const;
  Element operator-() const;
  Element inverse() const;
  Element pow(u64 exponent) const;
  Element square() const { return *this * *this; }

  /// Membership in the squares of this element's own field.
  bool is_square() const;
  /// Canonical square root: the smaller of the two roots in the element order (the
  /// nonnegative one over Q). Throws Error(NotASquare).
  Element sqrt() const;
  /// True iff the element lies in the prime subfield.
  bool in_prime_subfield() const;
  /// True iff the element is the square of an element of the prime subfield.
  bool is_prime_square() const;

  std::string to_string() const;

  friend bool operator==(const Element& a, const Element& b);
  friend std::strong_ordering operator<=>(const Element& a, const Element& b);

 private:
  struct Residues {
    u64 c0 = 0;
    u64 c1 = 0;
    friend bool operator==(const Residues&, const Residues&) = default;
    friend auto operator<=>(const Residues&, const Residues&) = default;
  };

  Element(Field field, Residues r) : field_(field), value_(r) {}
  Element(Field field, Rational q) : field_(field), value_(std::move(q)) {}

  const Residues& residues() const { return std::get<Residues>(value_); }
  void require_same_field(const Element& o) const;

  Field field_;
  std::variant<Residues, Rational> value_;

  friend class Field;
};

/// True iff -1 is a square. Q has no square root of -1.
bool contains_sqrt_minus_one(const Field& field);

/// Number of points on any circle of nonzero radius over a finite field:
/// |F| in characteristic 2, |F| - 1 when -1 is a square, |F| + 1 otherwise.
u64 circle_size(const Field& field);

}  // namespace circlering
