#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "circlering/plane.hpp"

namespace circlering {

namespace detail {
// Marks constructions whose correctness is already proven by the algorithm that built the
// points, skipping the quadratic pairwise check.
struct TrustedConstruction {};
}  // namespace detail

enum class MaximalityStatus { Unclassified, EMaximal, CMaximal };

std::string_view to_string(MaximalityStatus status);

/// Points of a circle with pairwise rational squared distances.
class CircularPointSet {
 public:
  /// Sorts and deduplicates `points`. Throws Error(PointNotOnCircle) or
  /// Error(NotCircularPointSet) when the defining property fails.
  CircularPointSet(Circle circle, std::vector<Point> points,
                   MaximalityStatus status = MaximalityStatus::Unclassified);
  CircularPointSet(detail::TrustedConstruction, Circle circle, std::vector<Point> points,
                   MaximalityStatus status);

  const Circle& circle() const { return circle_; }
  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  MaximalityStatus status() const { return status_; }
  bool contains(const Point& p) const;

 private:
  Circle circle_;
  std::vector<Point> points_;
  MaximalityStatus status_;
};

/// Tunables shared by the constructions below. The CLI config file sets these.
struct MaximalOptions {
  /// Points materialized when a maximal set over Q is grown.
  std::size_t rational_prefix = 64;
  /// Positive parameters t tried when listing perfect distances over Q.
  std::size_t rational_parameters = 64;
  /// Largest circle the clique and uniformity searches accept.
  std::size_t clique_cap = 4096;
  u64 factor_bound = kDefaultFactorBound;
};

/// True iff D^2(P, Q) is a square of the prime field. Throws Error(PointNotOnCircle).
bool is_rational_distance(const Circle& circle, const Point& p, const Point& q);

/// The two classes {P_t : t^2 + 1 a nonzero square} + {(m1, m2 + r)} and its complement.
/// Only for F_p with p odd; throws Error(WrongFieldKind) otherwise.
std::pair<CircularPointSet, CircularPointSet> partition_prime_field_circle(const Circle& circle);

/// Groups sampled points of a circle over Q by the squarefree part of t^2 + 1; the point
/// (m1, m2 + r) belongs to class 1.
std::map<mpz_class, CircularPointSet> partition_rational_circle_points(
    const Circle& circle, const std::vector<CircleParameter>& sample,
    u64 factor_bound = kDefaultFactorBound);

/// q and 1 - q/(4r^2) both squares of the prime field.
bool check_acp(const Circle& circle, const Element& q);

/// (4 t r^2 / (t^2 + r^2))^2; throws Error(InvalidArgument) when t^2 = -r^2.
Element q_r(const Element& r, const Element& t);

struct PerfectDistanceReport {
  Element q;
  bool is_rational = false;
  bool satisfies_acp = false;
  bool is_perfect = false;
  /// Three distinct circle points with pairwise rational distances, the first two at
  /// squared distance q.
  std::optional<std::array<Point, 3>> witness;
};

/// Classifies an arbitrary squared distance q on the circle.
PerfectDistanceReport classify_distance(const Circle& circle, const Element& q);

/// All perfect distances of the circle in increasing order, each with a witness triangle.
/// Empty when r^2 is outside the prime field. Over Q the list covers q_r(t) for the first
/// `rational_parameters` positive rationals t plus 4r^2. Throws Error(WrongFieldKind) in
/// characteristic 2.
std::vector<PerfectDistanceReport> perfect_distances(const Circle& circle,
                                                     const MaximalOptions& options = {});

/// The circle points at squared distance q from `base`: two points, or the antipode alone
/// when q = 4r^2. Throws Error(NotPerfect) unless q is perfect.
std::vector<Point> points_at_distance(const Circle& circle, const Point& base, const Element& q);

/// Lazily lists the c-maximal set through a seed on a circle over Q.
class RationalMaximalStream {
 public:
  RationalMaximalStream(const Circle& circle, const Point& seed);
  /// The seed first, then further members, never repeating.
  Point next();

 private:
  Circle circle_;
  RotationParams to_seed_;
  CalkinWilf sweep_;
  bool seed_done_ = false;
};

struct MaximalSetGrowth {
  CircularPointSet set;
  bool radius_squared_in_prime_field = true;
  /// Over Q: the whole (infinite) set; `set` holds its first members.
  std::optional<RationalMaximalStream> stream;
};

/// The c-maximal circular point set through `seed`. With perfect distances available it is
/// the seed together with all points at perfect distance from it; otherwise the best pair
/// an exhaustive scan finds. Characteristic 2 gives the whole circle.
MaximalSetGrowth grow_maximal_set(const Circle& circle, const Point& seed,
                                  const MaximalOptions& options = {});

/// All inclusion-maximal circular point sets through `seed` on a finite circle, largest
/// first; the largest ones are marked CMaximal. Throws Error(CircleTooLarge).
std::vector<CircularPointSet> enumerate_emaximal_sets(const Circle& circle, const Point& seed,
                                                      const MaximalOptions& options = {});

/// Which column of the cardinality table a radius falls into.
enum class RadiusClass { InPrimeField, SquareInPrimeField, SquareOutsidePrimeField };

RadiusClass classify_radius(const Element& r);
std::string_view to_string(RadiusClass c);

struct CardinalityAnswer {
  enum class Kind { Finite, CountablyInfinite, AtMostTwo };
  Kind kind = Kind::Finite;
  u64 value = 0;  // only for Finite
  /// For AtMostTwo: a pair with rational distance on the circle C((0,0), r), if one exists.
  std::optional<std::pair<Point, Point>> witness;

  std::string to_string() const;
};

/// Size of the c-maximal circular point sets on circles of radius r over r's field.
CardinalityAnswer cmaximal_cardinality(const Element& r);

/// True iff a grown set of `size` points agrees with the table answer.
bool matches_cardinality(const CardinalityAnswer& answer, std::size_t size);

/// For every point and every distance value, the number of curve points at that distance
/// is independent of the point. Throws Error(CircleTooLarge) beyond `cap` points.
bool check_uniformity(const std::vector<Point>& curve, std::size_t cap = 4096);
bool check_uniformity(const Circle& circle, std::size_t cap = 4096);

// ---- theorem sweeps -------------------------------------------------------

struct PrimeTheoremRecord {
  u64 p = 0;
  u64 expected_class_size = 0;
  /// Distinct class sizes seen over all radii (a single value when the theorem holds).
  std::vector<u64> class_sizes;
  u64 radii_checked = 0;
  /// Whether the exhaustive rationality graph was compared as well.
  bool graph_checked = false;
  bool match = true;
  std::string counterexample;
};

/// Class sizes on every circle C((0,0), r) over F_p, for one odd prime p.
PrimeTheoremRecord verify_prime_theorem(u64 p, bool check_graph);

struct TableRecord {
  Field field;
  Element radius;
  RadiusClass column;
  CardinalityAnswer expected;
  std::size_t grown_size = 0;
  bool match = false;
};

/// Grows a maximal set on C((0,0), r) and compares its size with the table answer.
TableRecord verify_table_instance(const Element& r);

/// Radii covering every finite cell of the table: characteristics 3, 5, 7, 13 with
/// prime fields and quadratic extensions.
std::vector<Element> table_instances();

struct Mod4Record {
  u64 p = 0;
  unsigned degree = 0;
  u64 size = 0;
  /// Admissible t (t != 0, t^2 != -1) and their orbits under t -> -t, t -> 1/t.
  u64 admissible = 0;
  u64 orbits_of_two = 0;
  u64 orbits_of_four = 0;
  /// What the orbit count implies about a square root of -1.
  bool predicted_sqrt_minus_one = false;
  /// Decided by exhaustive squaring.
  bool sqrt_minus_one = false;
  bool match = false;
};

/// Runs the orbit-counting argument in F_{p^degree}. Degrees above 2 use a private
/// polynomial-basis arithmetic since Field only models degrees 1 and 2.
Mod4Record verify_mod4_instance(u64 p, unsigned degree);

/// All (p, degree) with p odd and p^degree <= q_max, ordered by p^degree.
std::vector<std::pair<u64, unsigned>> odd_prime_powers(u64 q_max);

}  // namespace circlering
