#pragma once

#include <compare>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "circlering/field.hpp"

namespace circlering {

/// A point of the affine plane over a field.
struct Point {
  Element x;
  Element y;

  /// Throws Error(DescriptorMismatch) when the coordinates live in different fields.
  Point(Element x_, Element y_);

  const Field& field() const { return x.field(); }
  std::string to_string() const { return "(" + x.to_string() + "," + y.to_string() + ")"; }

  friend bool operator==(const Point&, const Point&) = default;
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }
};

/// Parses "x,y" with element syntax of `field`.
Point parse_point(const Field& field, std::string_view text);

Point origin(const Field& field);

/// Circle (x - m1)^2 + (y - m2)^2 = r^2 with r != 0.
class Circle {
 public:
  /// Throws Error(ZeroRadius) for r = 0 and Error(DescriptorMismatch) on mixed fields.
  Circle(Point center, Element radius);

  const Point& center() const { return center_; }
  const Element& radius() const { return radius_; }
  const Field& field() const { return center_.field(); }

  bool contains(const Point& p) const;
  /// Throws Error(PointNotOnCircle).
  void require_on_circle(const Point& p) const;

  friend bool operator==(const Circle&, const Circle&) = default;

 private:
  Point center_;
  Element radius_;
};

/// Parameters (a, b) of a rotation, a^2 + b^2 = 1.
class RotationParams {
 public:
  /// Throws Error(InvalidRotationParams) unless a^2 + b^2 = 1.
  RotationParams(Element a, Element b);

  const Element& a() const { return a_; }
  const Element& b() const { return b_; }

  friend bool operator==(const RotationParams&, const RotationParams&) = default;

 private:
  Element a_;
  Element b_;
};

/// D^2(P, Q) = (p1 - q1)^2 + (p2 - q2)^2.
Element squared_distance(const Point& p, const Point& q);

/// P + Q.
Point translate(const Point& p, const Point& by);

/// Applies [[a, b], [-b, a]] to P about the point `around`.
Point rotate(const Point& p, const RotationParams& params, const Point& around);

/// Rotation about the circle's center taking P to Q (both on the circle).
/// Throws Error(PointNotOnCircle).
RotationParams rotation_between(const Point& p, const Point& q, const Circle& circle);

/// Parameter value standing for the point (m1, m2 + r) that the secant family misses.
struct PointAtInfinity {
  friend bool operator==(PointAtInfinity, PointAtInfinity) { return true; }
};

using CircleParameter = std::variant<Element, PointAtInfinity>;

/// Rational parametrization of the circle.
///   char != 2: t -> (m1 + 2tr/(t^2+1), m2 + r(t^2-1)/(t^2+1)); the marker gives (m1, m2 + r).
///   char == 2: t -> (m1 + t, m2 + t + r); the marker still gives (m1, m2 + r).
/// Throws Error(ParameterSquaresToMinusOne) when t^2 = -1 in odd characteristic.
Point point_from_parameter(const Circle& circle, const CircleParameter& t);

/// All points of a circle over a finite field, sorted lexicographically.
/// Throws Error(InfiniteField) for Q.
std::vector<Point> enumerate_circle(const Circle& circle);

/// Lazily generated rational points of a circle over Q.
class RationalPointStream {
 public:
  enum class Strategy {
    /// t = (n - 1/n)/2 for n = 1, 2, 3, ...; every t^2 + 1 is a rational square.
    PythagoreanFamily,
    /// The marker, then t = 0, then +q and -q for q over the Calkin-Wilf sequence.
    FullSweep,
  };

  /// Throws Error(WrongFieldKind) unless the circle lives over Q.
  explicit RationalPointStream(Circle circle, Strategy strategy = Strategy::PythagoreanFamily);

  /// Parameter of the next point (without advancing).
  CircleParameter peek_parameter() const;
  Point next();

 private:
  Circle circle_;
  Strategy strategy_;
  unsigned long n_ = 1;
  CalkinWilf sweep_;
  // FullSweep state: 0 = marker, 1 = t = 0, then alternating +q / -q.
  unsigned long step_ = 0;
  Rational pending_{0};
};

/// True iff two distinct circle points have squared distance 0 (finite fields only).
/// In characteristic 2 every distance vanishes, so this is true whenever the circle has
/// two points; see all_distances_vanish.
bool has_vanishing_distance_pair(const Circle& circle);

/// Characteristic-2 flag: every pairwise squared distance on the circle is 0.
bool all_distances_vanish(const Circle& circle);

}  // namespace circlering
