#include "circlering/maximal.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>

namespace circlering {

std::string_view to_string(MaximalityStatus status) {
  switch (status) {
    case MaximalityStatus::Unclassified: return "Unclassified";
    case MaximalityStatus::EMaximal: return "EMaximal";
    case MaximalityStatus::CMaximal: return "CMaximal";
  }
  return "?";
}

namespace {

void sort_unique(std::vector<Point>& points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
}

bool rational(const Point& a, const Point& b) { return squared_distance(a, b).is_prime_square(); }

}  // namespace

CircularPointSet::CircularPointSet(Circle circle, std::vector<Point> points,
                                   MaximalityStatus status)
    : circle_(std::move(circle)), points_(std::move(points)), status_(status) {
  sort_unique(points_);
  for (const Point& p : points_) circle_.require_on_circle(p);
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      if (!rational(points_[i], points_[j]))
        throw Error(ErrorCode::NotCircularPointSet,
                    "squared distance between " + points_[i].to_string() + " and " +
                        points_[j].to_string() + " is not rational");
}

CircularPointSet::CircularPointSet(detail::TrustedConstruction, Circle circle,
                                   std::vector<Point> points, MaximalityStatus status)
    : circle_(std::move(circle)), points_(std::move(points)), status_(status) {
  sort_unique(points_);
}

bool CircularPointSet::contains(const Point& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

bool is_rational_distance(const Circle& circle, const Point& p, const Point& q) {
  circle.require_on_circle(p);
  circle.require_on_circle(q);
  return rational(p, q);
}

std::pair<CircularPointSet, CircularPointSet> partition_prime_field_circle(const Circle& circle) {
  const Field& f = circle.field();
  if (f.kind() != FieldKind::Prime || f.characteristic() == 2)
    throw Error(ErrorCode::WrongFieldKind, "partition needs a prime field of odd characteristic");
  std::vector<Point> c1, c2;
  c2.push_back(point_from_parameter(circle, PointAtInfinity{}));
  const u64 p = f.characteristic();
  for (u64 i = 0; i < p; ++i) {
    const Element t = f.element(i, 0);
    const Element n = t.square() + f.one();
    if (n.is_zero()) continue;
    (n.is_square() ? c2 : c1).push_back(point_from_parameter(circle, t));
  }
  const detail::TrustedConstruction trusted;
  return {CircularPointSet(trusted, circle, std::move(c1), MaximalityStatus::CMaximal),
          CircularPointSet(trusted, circle, std::move(c2), MaximalityStatus::CMaximal)};
}

std::map<mpz_class, CircularPointSet> partition_rational_circle_points(
    const Circle& circle, const std::vector<CircleParameter>& sample, u64 factor_bound) {
  if (circle.field().kind() != FieldKind::Rationals)
    throw Error(ErrorCode::WrongFieldKind, "rational partition needs a circle over Q");
  std::map<mpz_class, std::vector<Point>> groups;
  for (const CircleParameter& t : sample) {
    mpz_class key = 1;
    if (const auto* e = std::get_if<Element>(&t))
      key = squarefree_part(e->rational() * e->rational() + Rational(1), factor_bound);
    groups[key].push_back(point_from_parameter(circle, t));
  }
  std::map<mpz_class, CircularPointSet> out;
  for (auto& [key, points] : groups)
    out.emplace(key, CircularPointSet(circle, std::move(points)));
  return out;
}

bool check_acp(const Circle& circle, const Element& q) {
  const Element four_r2 = circle.field().element(4) * circle.radius().square();
  return q.is_prime_square() && (circle.field().one() - q / four_r2).is_prime_square();
}

Element q_r(const Element& r, const Element& t) {
  const Element r2 = r.square();
  const Element den = t.square() + r2;
  if (den.is_zero()) throw Error(ErrorCode::InvalidArgument, "t^2 = -r^2 is not admissible");
  return (r.field().element(4) * t * r2 / den).square();
}

namespace {

Element four_r_squared(const Circle& circle) {
  return circle.field().element(4) * circle.radius().square();
}

// Triangle (r,0), (x,y), (x,-y) around the center with x = r - q/(2r) and
// y^2 = q(1 - q/(4r^2)); valid for acp distances q other than 0 and 4r^2.
std::array<Point, 3> formula_witness(const Circle& circle, const Element& q) {
  const Field& f = circle.field();
  const Element& r = circle.radius();
  const Point& m = circle.center();
  const Element two = f.element(2);
  const Element x = r - q / (two * r);
  const Element y = (q * (f.one() - q / four_r_squared(circle))).sqrt();
  return {Point(m.x + r, m.y), Point(m.x + x, m.y + y), Point(m.x + x, m.y - y)};
}

// Triangles realising 4r^2 have an antipodal pair; look for the third vertex.
std::optional<std::array<Point, 3>> antipodal_witness(const Circle& circle) {
  const Field& f = circle.field();
  if (!four_r_squared(circle).is_prime_square()) return std::nullopt;
  const Point& m = circle.center();
  const Element& r = circle.radius();
  if (f.kind() == FieldKind::Rationals) {
    // (m1, m2 + r), (m1, m2 - r) and the point with t = 3/4, whose distances to the
    // pair are 4r^2 * 16/25 and 4r^2 * 9/25.
    const Point third = point_from_parameter(circle, f.element(Rational(3, 4)));
    return std::array<Point, 3>{Point(m.x, m.y + r), Point(m.x, m.y - r), third};
  }
  const Point a(m.x + r, m.y);
  const Point b(m.x - r, m.y);
  for (const Point& x : enumerate_circle(circle)) {
    if (x == a || x == b) continue;
    if (rational(a, x) && rational(b, x)) return std::array<Point, 3>{a, b, x};
  }
  return std::nullopt;
}

std::vector<Point> points_at_distance_unchecked(const Circle& circle, const Point& base,
                                                const Element& q) {
  const Field& f = circle.field();
  const Element& r = circle.radius();
  const Point& m = circle.center();
  const Point o = origin(f);
  const Circle at_origin(o, r);
  // Normalise the base to (0, -r); there the two points are (+-sqrt(q) beta, q/(2r) - r).
  const Point bottom(f.zero(), -r);
  const Point base0(base.x - m.x, base.y - m.y);
  const RotationParams back = rotation_between(bottom, base0, at_origin);
  const Element alpha = q.sqrt();
  const Element beta = (f.one() - q / four_r_squared(circle)).sqrt();
  const Element y = q / (f.element(2) * r) - r;
  std::vector<Point> out;
  for (const Element& x : {alpha * beta, -(alpha * beta)}) {
    const Point p = rotate(Point(x, y), back, o);
    out.push_back(Point(p.x + m.x, p.y + m.y));
  }
  sort_unique(out);
  return out;
}

bool in_prime_field(const Element& e) { return e.in_prime_subfield(); }

}  // namespace

PerfectDistanceReport classify_distance(const Circle& circle, const Element& q) {
  PerfectDistanceReport report{q, q.is_prime_square(), check_acp(circle, q), false, std::nullopt};
  if (circle.field().characteristic() == 2 || q.is_zero() || !report.satisfies_acp)
    return report;
  if (q == four_r_squared(circle)) {
    report.witness = antipodal_witness(circle);
  } else {
    report.witness = formula_witness(circle, q);
  }
  report.is_perfect = report.witness.has_value();
  return report;
}

std::vector<PerfectDistanceReport> perfect_distances(const Circle& circle,
                                                     const MaximalOptions& options) {
  const Field& f = circle.field();
  if (f.characteristic() == 2)
    throw Error(ErrorCode::WrongFieldKind, "perfect distances need characteristic other than 2");
  const Element& r = circle.radius();
  if (!in_prime_field(r.square())) return {};
  const Element four_r2 = four_r_squared(circle);

  std::set<Element> values;
  auto consider = [&](const Element& t) {
    if ((t.square() + r.square()).is_zero()) return;
    Element q = q_r(r, t);
    if (q != four_r2) values.insert(std::move(q));
  };
  if (f.is_finite()) {
    for (u64 i = 1; i < f.characteristic(); ++i) consider(f.element(i, 0));
  } else {
    CalkinWilf sweep;
    for (std::size_t i = 0; i < options.rational_parameters; ++i) consider(f.element(sweep.next()));
  }

  std::vector<PerfectDistanceReport> out;
  for (const Element& q : values)
    out.push_back(PerfectDistanceReport{q, true, true, true, formula_witness(circle, q)});
  if (auto w = antipodal_witness(circle)) {
    out.push_back(PerfectDistanceReport{four_r2, true, true, true, std::move(w)});
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.q < b.q; });
  }
  return out;
}

std::vector<Point> points_at_distance(const Circle& circle, const Point& base, const Element& q) {
  circle.require_on_circle(base);
  if (!classify_distance(circle, q).is_perfect)
    throw Error(ErrorCode::NotPerfect, q.to_string() + " is not a perfect distance");
  return points_at_distance_unchecked(circle, base, q);
}

RationalMaximalStream::RationalMaximalStream(const Circle& circle, const Point& seed)
    : circle_(circle),
      to_seed_(rotation_between(point_from_parameter(circle, PointAtInfinity{}), seed, circle)) {
  if (circle.field().kind() != FieldKind::Rationals)
    throw Error(ErrorCode::WrongFieldKind, "rational maximal streams need a circle over Q");
}

Point RationalMaximalStream::next() {
  // The class of (m1, m2 + r) is the marker plus every P_t with t = (u - 1/u)/2, u > 0,
  // each t arising from exactly one u. Rotating it onto the seed gives the seed's class.
  CircleParameter t = PointAtInfinity{};
  if (seed_done_) {
    const Rational u = sweep_.next();
    t = circle_.field().element((u - u.inverse()) / Rational(2));
  }
  seed_done_ = true;
  return rotate(point_from_parameter(circle_, t), to_seed_, circle_.center());
}

MaximalSetGrowth grow_maximal_set(const Circle& circle, const Point& seed,
                                  const MaximalOptions& options) {
  circle.require_on_circle(seed);
  const Field& f = circle.field();
  const bool r2_rational = in_prime_field(circle.radius().square());

  if (f.characteristic() == 2)
    return {CircularPointSet(circle, enumerate_circle(circle), MaximalityStatus::CMaximal),
            r2_rational, std::nullopt};

  if (!f.is_finite()) {
    RationalMaximalStream stream(circle, seed);
    std::vector<Point> prefix;
    for (std::size_t i = 0; i < options.rational_prefix; ++i) prefix.push_back(stream.next());
    return {CircularPointSet(circle, std::move(prefix), MaximalityStatus::CMaximal), r2_rational,
            RationalMaximalStream(circle, seed)};
  }

  std::vector<Point> points{seed};
  const auto perfect = perfect_distances(circle, options);
  if (!perfect.empty()) {
    for (const auto& report : perfect) {
      auto more = points_at_distance_unchecked(circle, seed, report.q);
      points.insert(points.end(), more.begin(), more.end());
    }
  } else {
    // No triangles exist, so the best set through the seed is a pair if the seed has any
    // partner at a rational distance.
    for (const Point& x : enumerate_circle(circle)) {
      if (x != seed && rational(seed, x)) {
        points.push_back(x);
        break;
      }
    }
  }
  return {CircularPointSet(circle, std::move(points), MaximalityStatus::CMaximal), r2_rational,
          std::nullopt};
}

namespace {

using Bits = std::vector<std::uint64_t>;

struct CliqueSearch {
  std::size_t n;
  std::vector<Bits> adj;
  std::vector<std::vector<std::size_t>> found;
  std::vector<std::size_t> current;

  std::size_t words() const { return (n + 63) / 64; }
  static bool empty(const Bits& b) {
    return std::all_of(b.begin(), b.end(), [](auto w) { return w == 0; });
  }
  static std::size_t popcount_and(const Bits& a, const Bits& b) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.size(); ++i) c += __builtin_popcountll(a[i] & b[i]);
    return c;
  }

  // Bron-Kerbosch with Tomita pivoting.
  void run(Bits p, Bits x) {
    if (empty(p)) {
      if (empty(x)) found.push_back(current);
      return;
    }
    std::size_t pivot = 0, best = 0;
    bool have_pivot = false;
    for (std::size_t w = 0; w < words(); ++w) {
      for (std::uint64_t bits = p[w] | x[w]; bits; bits &= bits - 1) {
        const std::size_t u = w * 64 + __builtin_ctzll(bits);
        const std::size_t c = popcount_and(p, adj[u]);
        if (!have_pivot || c > best) pivot = u, best = c, have_pivot = true;
      }
    }
    Bits candidates(words());
    for (std::size_t w = 0; w < words(); ++w) candidates[w] = p[w] & ~adj[pivot][w];
    for (std::size_t w = 0; w < words(); ++w) {
      for (std::uint64_t bits = candidates[w]; bits; bits &= bits - 1) {
        const std::size_t v = w * 64 + __builtin_ctzll(bits);
        Bits np(words()), nx(words());
        for (std::size_t k = 0; k < words(); ++k) {
          np[k] = p[k] & adj[v][k];
          nx[k] = x[k] & adj[v][k];
        }
        current.push_back(v);
        run(std::move(np), std::move(nx));
        current.pop_back();
        p[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        x[v / 64] |= std::uint64_t{1} << (v % 64);
      }
    }
  }
};

}  // namespace

std::vector<CircularPointSet> enumerate_emaximal_sets(const Circle& circle, const Point& seed,
                                                      const MaximalOptions& options) {
  if (!circle.field().is_finite())
    throw Error(ErrorCode::InfiniteField, "clique enumeration needs a finite field");
  if (circle_size(circle.field()) > options.clique_cap)
    throw Error(ErrorCode::CircleTooLarge, "circle exceeds the clique search cap of " +
                                               std::to_string(options.clique_cap) + " points");
  circle.require_on_circle(seed);
  std::vector<Point> nbrs;
  for (const Point& x : enumerate_circle(circle))
    if (x != seed && rational(seed, x)) nbrs.push_back(x);

  CliqueSearch search{nbrs.size(), {}, {}, {}};
  search.adj.assign(nbrs.size(), Bits(search.words()));
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < nbrs.size(); ++j)
      if (rational(nbrs[i], nbrs[j])) {
        search.adj[i][j / 64] |= std::uint64_t{1} << (j % 64);
        search.adj[j][i / 64] |= std::uint64_t{1} << (i % 64);
      }
  Bits all(search.words());
  for (std::size_t i = 0; i < nbrs.size(); ++i) all[i / 64] |= std::uint64_t{1} << (i % 64);
  search.run(all, Bits(search.words()));

  std::size_t largest = 0;
  for (const auto& c : search.found) largest = std::max(largest, c.size());
  std::vector<CircularPointSet> out;
  for (const auto& clique : search.found) {
    std::vector<Point> points{seed};
    for (std::size_t i : clique) points.push_back(nbrs[i]);
    // The rotation group acts transitively and isometrically, so every point lies in a
    // set of the globally largest size.
    const auto status =
        clique.size() == largest ? MaximalityStatus::CMaximal : MaximalityStatus::EMaximal;
    out.emplace_back(detail::TrustedConstruction{}, circle, std::move(points), status);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.points() < b.points();
  });
  return out;
}

RadiusClass classify_radius(const Element& r) {
  if (r.in_prime_subfield()) return RadiusClass::InPrimeField;
  if (r.square().in_prime_subfield()) return RadiusClass::SquareInPrimeField;
  return RadiusClass::SquareOutsidePrimeField;
}

std::string_view to_string(RadiusClass c) {
  switch (c) {
    case RadiusClass::InPrimeField: return "r in prime field";
    case RadiusClass::SquareInPrimeField: return "r^2 in prime field, r not";
    case RadiusClass::SquareOutsidePrimeField: return "r^2 not in prime field";
  }
  return "?";
}

std::string CardinalityAnswer::to_string() const {
  switch (kind) {
    case Kind::Finite: return std::to_string(value);
    case Kind::CountablyInfinite: return "countably infinite";
    case Kind::AtMostTwo: return witness ? "at most 2 (pair found)" : "at most 2 (no pair)";
  }
  return "?";
}

CardinalityAnswer cmaximal_cardinality(const Element& r) {
  if (r.is_zero()) throw Error(ErrorCode::ZeroRadius, "radius must be nonzero");
  const Field& f = r.field();
  using Kind = CardinalityAnswer::Kind;
  const RadiusClass column = classify_radius(r);
  if (!f.is_finite()) return {Kind::CountablyInfinite, 0, std::nullopt};
  const u64 p = f.characteristic();
  if (p == 2) return {Kind::Finite, f.size(), std::nullopt};
  if (column == RadiusClass::SquareOutsidePrimeField) {
    CardinalityAnswer answer{Kind::AtMostTwo, 0, std::nullopt};
    const Circle circle(origin(f), r);
    const Point base(r, f.zero());
    for (const Point& x : enumerate_circle(circle)) {
      if (x != base && rational(base, x)) {
        answer.witness.emplace(base, x);
        break;
      }
    }
    return answer;
  }
  if (p == 3) return {Kind::Finite, 2, std::nullopt};
  const bool in_prime = column == RadiusClass::InPrimeField;
  const bool plus = (p % 4 == 3) == in_prime;
  return {Kind::Finite, plus ? (p + 1) / 2 : (p - 1) / 2, std::nullopt};
}

bool matches_cardinality(const CardinalityAnswer& answer, std::size_t size) {
  switch (answer.kind) {
    case CardinalityAnswer::Kind::Finite: return size == answer.value;
    case CardinalityAnswer::Kind::AtMostTwo: return size == (answer.witness ? 2u : 1u);
    case CardinalityAnswer::Kind::CountablyInfinite: return false;
  }
  return false;
}

bool check_uniformity(const std::vector<Point>& curve, std::size_t cap) {
  if (curve.size() > cap)
    throw Error(ErrorCode::CircleTooLarge,
                "uniformity check is capped at " + std::to_string(cap) + " points");
  std::map<Element, u64> reference;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    std::map<Element, u64> counts;
    for (std::size_t j = 0; j < curve.size(); ++j)
      if (i != j) ++counts[squared_distance(curve[i], curve[j])];
    if (i == 0)
      reference = std::move(counts);
    else if (counts != reference)
      return false;
  }
  return true;
}

bool check_uniformity(const Circle& circle, std::size_t cap) {
  if (circle.field().is_finite() && circle_size(circle.field()) > cap)
    throw Error(ErrorCode::CircleTooLarge,
                "uniformity check is capped at " + std::to_string(cap) + " points");
  return check_uniformity(enumerate_circle(circle), cap);
}

PrimeTheoremRecord verify_prime_theorem(u64 p, bool check_graph) {
  const Field f = Field::prime(p);
  if (p == 2) throw Error(ErrorCode::WrongFieldKind, "the prime theorem concerns odd primes");
  PrimeTheoremRecord rec;
  rec.p = p;
  rec.expected_class_size = p % 4 == 1 ? (p - 1) / 2 : (p + 1) / 2;
  rec.graph_checked = check_graph;
  std::set<u64> sizes;
  for (u64 ri = 1; ri < p; ++ri) {
    const Element r = f.element(ri, 0);
    const Circle circle(origin(f), r);
    auto [c1, c2] = partition_prime_field_circle(circle);
    sizes.insert(c1.size());
    sizes.insert(c2.size());
    ++rec.radii_checked;
    auto fail = [&](const std::string& why) {
      if (rec.match) rec.counterexample = "r=" + r.to_string() + ": " + why;
      rec.match = false;
    };
    if (c1.size() != rec.expected_class_size || c2.size() != rec.expected_class_size)
      fail("class sizes " + std::to_string(c1.size()) + "," + std::to_string(c2.size()));
    if (!check_graph) continue;
    const auto points = enumerate_circle(circle);
    if (points.size() != c1.size() + c2.size()) fail("classes do not cover the circle");
    std::vector<bool> second(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) second[i] = c2.contains(points[i]);
    for (std::size_t i = 0; i < points.size() && rec.match; ++i)
      for (std::size_t j = i + 1; j < points.size(); ++j)
        if (rational(points[i], points[j]) != (second[i] == second[j])) {
          fail("pair " + points[i].to_string() + " " + points[j].to_string() +
               " contradicts the classes");
          break;
        }
  }
  rec.class_sizes.assign(sizes.begin(), sizes.end());
  return rec;
}

TableRecord verify_table_instance(const Element& r) {
  const Field& f = r.field();
  const Circle circle(origin(f), r);
  const Point seed(r, f.zero());
  TableRecord rec{f, r, classify_radius(r), cmaximal_cardinality(r), 0, false};
  rec.grown_size = grow_maximal_set(circle, seed).set.size();
  rec.match = matches_cardinality(rec.expected, rec.grown_size);
  return rec;
}

std::vector<Element> table_instances() {
  std::vector<Element> out;
  auto add_extension = [&](const Field& f) {
    for (const char* text : {"1", "2", "a", "1+a"}) out.push_back(f.parse_element(text));
  };
  for (u64 p : {2, 3, 5, 7, 13}) {
    const Field f = Field::prime(p);
    for (u64 r = 1; r < p; ++r) out.push_back(f.element(r, 0));
  }
  out.push_back(Field::quadratic(2).parse_element("1"));
  out.push_back(Field::quadratic(2).parse_element("a"));
  add_extension(Field::quadratic(3, 1, 0));
  add_extension(Field::quadratic(5, 3, 0));
  add_extension(Field::quadratic(7, 1, 0));
  add_extension(Field::quadratic(13, 11, 0));
  return out;
}

// ---- mod 4 criterion --------------------------------------------------------

namespace {

// F_{p^n} as polynomials modulo a monic irreducible of degree n; element i has base-p
// digits i_0 + i_1 x + ... . Only used for degrees the Field type does not model.
class SmallExtension {
 public:
  SmallExtension(u64 p, unsigned n) : p_(p), n_(n) {
    size_ = 1;
    for (unsigned i = 0; i < n; ++i) size_ *= p;
    for (u64 code = 0;; ++code) {
      Poly f = digits(code, n);
      f.push_back(1);
      if (irreducible(f)) {
        modulus_ = std::move(f);
        break;
      }
    }
  }

  u64 size() const { return size_; }
  u64 neg(u64 a) const {
    Poly d = digits(a, n_);
    for (auto& c : d) c = (p_ - c) % p_;
    return code(d);
  }
  u64 mul(u64 a, u64 b) const { return code(mulmod(digits(a, n_), digits(b, n_), modulus_)); }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, size_ - 2); }

 private:
  using Poly = std::vector<u64>;

  Poly digits(u64 v, unsigned len) const {
    Poly d(len);
    for (unsigned i = 0; i < len; ++i, v /= p_) d[i] = v % p_;
    return d;
  }
  u64 code(const Poly& d) const {
    u64 v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + d[i];
    return v;
  }
  Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const {
    Poly prod(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
    return remainder(prod, m);
  }
  // m is monic.
  Poly remainder(Poly a, const Poly& m) const {
    const std::size_t dm = m.size() - 1;
    for (std::size_t i = a.size(); i-- > dm;) {
      const u64 c = a[i];
      if (c == 0) continue;
      for (std::size_t k = 0; k <= dm; ++k)
        a[i - dm + k] = (a[i - dm + k] + (p_ - c) * m[k] % p_) % p_;
    }
    a.resize(dm);
    return a;
  }
  bool irreducible(const Poly& f) const {
    const unsigned deg = static_cast<unsigned>(f.size() - 1);
    for (unsigned d = 1; d <= deg / 2; ++d) {
      u64 count = 1;
      for (unsigned i = 0; i < d; ++i) count *= p_;
      for (u64 c = 0; c < count; ++c) {
        Poly g = digits(c, d);
        g.push_back(1);
        const Poly r = remainder(f, g);
        if (std::all_of(r.begin(), r.end(), [](u64 x) { return x == 0; })) return false;
      }
    }
    return true;
  }

  u64 p_;
  unsigned n_;
  u64 size_;
  Poly modulus_;
};

struct OrbitOps {
  u64 size;
  std::function<u64(u64)> neg, inv, square;
};

void count_orbits(const OrbitOps& ops, Mod4Record& rec) {
  const u64 minus_one = ops.neg(1);
  std::vector<bool> seen(ops.size, false);
  std::vector<bool> squares(ops.size, false);
  for (u64 t = 0; t < ops.size; ++t) squares[ops.square(t)] = true;
  rec.sqrt_minus_one = squares[minus_one];
  bool shapes_ok = true;
  for (u64 t = 1; t < ops.size; ++t) {
    if (seen[t] || ops.square(t) == minus_one) continue;
    const u64 it = ops.inv(t);
    std::set<u64> orbit{t, ops.neg(t), it, ops.neg(it)};
    for (u64 x : orbit) seen[x] = true;
    rec.admissible += orbit.size();
    if (orbit.size() == 2)
      ++rec.orbits_of_two;
    else if (orbit.size() == 4)
      ++rec.orbits_of_four;
    else
      shapes_ok = false;
  }
  // Only {1, -1} has two elements, so 4 divides |F*| - 2 - #{t : t^2 = -1}; that count is
  // 0 or 2, which pins it down from |F| mod 4.
  rec.predicted_sqrt_minus_one = rec.size % 4 == 1;
  rec.match = shapes_ok && rec.orbits_of_two == 1 && (rec.admissible - 2) % 4 == 0 &&
              rec.predicted_sqrt_minus_one == rec.sqrt_minus_one;
}

}  // namespace

Mod4Record verify_mod4_instance(u64 p, unsigned degree) {
  if (p == 2 || !is_prime(p) || degree == 0)
    throw Error(ErrorCode::InvalidArgument, "need an odd prime and a positive degree");
  Mod4Record rec;
  rec.p = p;
  rec.degree = degree;
  if (degree <= 2) {
    const Field f = degree == 1 ? Field::prime(p) : Field::quadratic(p);
    rec.size = f.size();
    auto elt = [&](u64 i) { return f.element(i % p, i / p); };
    auto idx = [&](const Element& e) { return e.c0() + p * e.c1(); };
    count_orbits({rec.size, [&](u64 t) { return idx(-elt(t)); },
                  [&](u64 t) { return idx(elt(t).inverse()); },
                  [&](u64 t) { return idx(elt(t).square()); }},
                 rec);
    rec.match = rec.match && rec.sqrt_minus_one == contains_sqrt_minus_one(f);
    return rec;
  }
  const SmallExtension g(p, degree);
  rec.size = g.size();
  count_orbits({rec.size, [&](u64 t) { return g.neg(t); }, [&](u64 t) { return g.inv(t); },
                [&](u64 t) { return g.mul(t, t); }},
               rec);
  return rec;
}

std::vector<std::pair<u64, unsigned>> odd_prime_powers(u64 q_max) {
  std::vector<std::pair<u64, std::pair<u64, unsigned>>> all;
  for (u64 p : odd_primes(3, q_max)) {
    u64 q = p;
    for (unsigned d = 1;; ++d) {
      all.push_back({q, {p, d}});
      if (q > q_max / p) break;
      q *= p;
    }
  }
  std::sort(all.begin(), all.end());
  std::vector<std::pair<u64, unsigned>> out;
  for (auto& [q, pd] : all) out.push_back(pd);
  return out;
}

}  // namespace circlering
