#pragma once

#include <optional>
#include <string>

#include "circlering/plane.hpp"

namespace circlering {

/// A point of C((0,0), r) as an element of the rotation group with identity (r, 0) and
/// product (a1,a2) * (b1,b2) = ((a1 b1 - a2 b2)/r, (a1 b2 + a2 b1)/r).
class RotationElement {
 public:
  /// Throws Error(InvalidArgument) unless the circle is centered at the origin, and
  /// Error(PointNotOnCircle) unless the point lies on it.
  RotationElement(Circle circle, Point point);
  RotationElement(const Element& radius, const Element& x, const Element& y);

  static RotationElement identity(const Circle& circle);

  const Circle& circle() const { return circle_; }
  const Point& point() const { return point_; }
  const Element& x() const { return point_.x; }
  const Element& y() const { return point_.y; }
  const Element& radius() const { return circle_.radius(); }
  const Field& field() const { return circle_.field(); }

  bool is_identity() const;
  std::string to_string() const { return point_.to_string(); }

  friend bool operator==(const RotationElement&, const RotationElement&) = default;

 private:
  Circle circle_;
  Point point_;
};

/// Throws Error(CircleMismatch) for elements of different circles.
RotationElement rot_mul(const RotationElement& a, const RotationElement& b);
RotationElement rot_inverse(const RotationElement& a);
/// Square-and-multiply; a^0 is the identity.
RotationElement rot_pow(const RotationElement& a, u64 n);

/// D^2(A, (r, 0)).
Element induced_squared_distance(const RotationElement& a);

/// A square root B (B * B = A) when one exists. The field must be F_p or Q; F_2, F_3 and
/// F_5 are refused with Error(WrongFieldKind) unless `unchecked` is set.
///
/// The identity returns itself and (-r, 0) returns (0, sqrt(r^2)). Otherwise
/// b2 = sqrt(d/4) with d the induced squared distance and b1 = r a2 / (2 b2).
std::optional<RotationElement> rot_sqrt(const RotationElement& a, bool unchecked = false);

struct CyclicityReport {
  enum class Verdict { Cyclic, Acyclic, UndecidedUpTo };
  Verdict verdict = Verdict::Cyclic;
  /// The order for Cyclic, the sweep bound for UndecidedUpTo.
  u64 value = 0;
  /// Over Q: no power up to the bound is real (so in particular none is the identity).
  bool sweep_clean = true;

  std::string to_string() const;
};

/// Finite fields: the exact order, found from the factorization of the group order.
/// Q: the four axis points have orders 1, 2, 4, 4 and every other point is acyclic; the
/// powers 1..bound are additionally checked to stay off the real axis.
CyclicityReport classify_cyclicity(const RotationElement& a, u64 bound = 10'000);

/// Whether x^2 + y^2 is a perfect square greater than 1. Throws Error(NotCoprime) unless
/// gcd(x, y) = 1.
bool gaussian_norm_square_check(const mpz_class& x, const mpz_class& y);

}  // namespace circlering
