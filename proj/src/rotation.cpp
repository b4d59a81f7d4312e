#include "circlering/rotation.hpp"

namespace circlering {

RotationElement::RotationElement(Circle circle, Point point)
    : circle_(std::move(circle)), point_(std::move(point)) {
  if (circle_.center() != origin(circle_.field()))
    throw Error(ErrorCode::InvalidArgument, "rotation group circles are centered at the origin");
  circle_.require_on_circle(point_);
}

RotationElement::RotationElement(const Element& radius, const Element& x, const Element& y)
    : RotationElement(Circle(origin(radius.field()), radius), Point(x, y)) {}

RotationElement RotationElement::identity(const Circle& circle) {
  return RotationElement(circle, Point(circle.radius(), circle.field().zero()));
}

bool RotationElement::is_identity() const {
  return point_.x == radius() && point_.y.is_zero();
}

RotationElement rot_mul(const RotationElement& a, const RotationElement& b) {
  if (a.circle() != b.circle())
    throw Error(ErrorCode::CircleMismatch, "rotation product of elements on different circles");
  const Element& r = a.radius();
  return RotationElement(a.circle(), Point((a.x() * b.x() - a.y() * b.y()) / r,
                                           (a.x() * b.y() + a.y() * b.x()) / r));
}

RotationElement rot_inverse(const RotationElement& a) {
  return RotationElement(a.circle(), Point(a.x(), -a.y()));
}

namespace {

// Over Q the n-th power is (a1 + i a2)^n / r^(n-1). Powering the Gaussian integer
// L (a1 + i a2) and dividing once at the end avoids a gcd per step.
RotationElement rational_pow(const RotationElement& a, u64 n) {
  const Rational& a1 = a.x().rational();
  const Rational& a2 = a.y().rational();
  const Rational& r = a.radius().rational();
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a1.denominator().get_mpz_t(), a2.denominator().get_mpz_t());
  mpz_class x = a1.numerator() * (l / a1.denominator());
  mpz_class y = a2.numerator() * (l / a2.denominator());
  mpz_class re = 1, im = 0;
  for (u64 e = n; e; e >>= 1) {
    if (e & 1) {
      mpz_class t = re * x - im * y;
      im = re * y + im * x;
      re = std::move(t);
    }
    if (e > 1) {
      mpz_class t = x * x - y * y;
      y = 2 * x * y;
      x = std::move(t);
    }
  }
  mpz_class ln, rn, rd;
  const unsigned long k = static_cast<unsigned long>(n - 1);
  mpz_pow_ui(ln.get_mpz_t(), l.get_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(rn.get_mpz_t(), r.numerator().get_mpz_t(), k);
  mpz_pow_ui(rd.get_mpz_t(), r.denominator().get_mpz_t(), k);
  const mpz_class den = ln * rn;
  const Field& f = a.field();
  return RotationElement(a.circle(), Point(f.element(Rational(mpz_class(re * rd), den)),
                                           f.element(Rational(mpz_class(im * rd), den))));
}

}  // namespace

RotationElement rot_pow(const RotationElement& a, u64 n) {
  if (n == 0) return RotationElement::identity(a.circle());
  if (a.field().kind() == FieldKind::Rationals) return rational_pow(a, n);
  RotationElement result = RotationElement::identity(a.circle());
  RotationElement base = a;
  for (; n; n >>= 1) {
    if (n & 1) result = rot_mul(result, base);
    if (n > 1) base = rot_mul(base, base);
  }
  return result;
}

Element induced_squared_distance(const RotationElement& a) {
  return squared_distance(a.point(), RotationElement::identity(a.circle()).point());
}

std::optional<RotationElement> rot_sqrt(const RotationElement& a, bool unchecked) {
  const Field& f = a.field();
  if (f.kind() == FieldKind::Quadratic)
    throw Error(ErrorCode::WrongFieldKind, "square roots are defined over F_p and Q");
  const u64 p = f.characteristic();
  if ((p == 2 || p == 3 || p == 5) && !unchecked)
    throw Error(ErrorCode::WrongFieldKind,
                "square roots over F_2, F_3, F_5 need the unchecked mode");
  if (a.is_identity()) return a;

  std::optional<RotationElement> b;
  if (p == 2) {
    // The closed form divides by 2; search the (tiny) group instead.
    for (const Point& x : enumerate_circle(a.circle())) {
      RotationElement candidate(a.circle(), x);
      if (rot_mul(candidate, candidate) == a) return candidate;
    }
    return std::nullopt;
  }
  const Element& r = a.radius();
  if (a.y().is_zero()) {
    // a = (-r, 0): the roots are (0, +-r).
    b.emplace(a.circle(), Point(f.zero(), r.square().sqrt()));
  } else {
    const Element quarter = induced_squared_distance(a) / f.element(4);
    if (!quarter.is_square()) return std::nullopt;
    const Element b2 = quarter.sqrt();
    b.emplace(a.circle(), Point(r * a.y() / (f.element(2) * b2), b2));
  }
  if (rot_mul(*b, *b) != a) return std::nullopt;
  return b;
}

std::string CyclicityReport::to_string() const {
  switch (verdict) {
    case Verdict::Cyclic: return "cyclic of order " + std::to_string(value);
    case Verdict::Acyclic: return "acyclic";
    case Verdict::UndecidedUpTo: return "undecided up to " + std::to_string(value);
  }
  return "?";
}

bool gaussian_norm_square_check(const mpz_class& x, const mpz_class& y) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  if (g != 1)
    throw Error(ErrorCode::NotCoprime, x.get_str() + " and " + y.get_str() + " are not coprime");
  const mpz_class norm = x * x + y * y;
  return norm > 1 && mpz_perfect_square_p(norm.get_mpz_t()) != 0;
}

CyclicityReport classify_cyclicity(const RotationElement& a, u64 bound) {
  using Verdict = CyclicityReport::Verdict;
  const Field& f = a.field();
  if (f.is_finite()) {
    u64 order = circle_size(f);
    for (auto [q, e] : factorize(order)) {
      for (unsigned i = 0; i < e && rot_pow(a, order / q).is_identity(); ++i) order /= q;
    }
    return {Verdict::Cyclic, order, true};
  }
  const Element& r = a.radius();
  if (a.y().is_zero()) return {Verdict::Cyclic, a.x() == r ? 1u : 2u, true};
  if (a.x().is_zero()) return {Verdict::Cyclic, 4, true};

  const Rational& a1 = a.x().rational();
  const Rational& a2 = a.y().rational();
  mpz_class l, g;
  mpz_lcm(l.get_mpz_t(), a1.denominator().get_mpz_t(), a2.denominator().get_mpz_t());
  mpz_class x = a1.numerator() * (l / a1.denominator());
  mpz_class y = a2.numerator() * (l / a2.denominator());
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  x /= g;
  y /= g;
  CyclicityReport report{Verdict::Acyclic, 0, first_real_gaussian_power(x, y, bound) == 0};
  if (!gaussian_norm_square_check(x, y)) report = {Verdict::UndecidedUpTo, bound, report.sweep_clean};
  return report;
}

}  // namespace circlering
