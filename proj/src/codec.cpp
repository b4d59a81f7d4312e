#include "circlering/codec.hpp"

#include <algorithm>
#include <array>

namespace circlering {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'C', 'R', 'C', '1'};
constexpr std::size_t kHeaderSize = 10;

mpz_class big(u64 v) { return mpz_class(static_cast<unsigned long>(v)); }

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out_.push_back(static_cast<std::uint8_t>(v >> s));
  }
  void word64(std::uint64_t v) {
    for (int s = 56; s >= 0; s -= 8) out_.push_back(static_cast<std::uint8_t>(v >> s));
  }
  void integer(const mpz_class& magnitude) {
    std::size_t count = 0;
    std::vector<std::uint8_t> bytes((mpz_sizeinbase(magnitude.get_mpz_t(), 2) + 7) / 8);
    if (magnitude != 0) mpz_export(bytes.data(), &count, 1, 1, 1, 0, magnitude.get_mpz_t());
    bytes.resize(count);
    u32(static_cast<std::uint32_t>(bytes.size()));
    out_.insert(out_.end(), bytes.begin(), bytes.end());
  }
  void field(const Field& f) {
    switch (f.kind()) {
      case FieldKind::Prime:
        u8(1);
        integer(big(f.characteristic()));
        break;
      case FieldKind::Quadratic: {
        u8(2);
        auto [c0, c1] = f.modulus_polynomial();
        for (u64 v : {f.characteristic(), c0, c1}) integer(big(v));
        break;
      }
      case FieldKind::Rationals: u8(3); break;
    }
  }
  void element(const Element& e) {
    if (e.field().kind() == FieldKind::Rationals) {
      const Rational& q = e.rational();
      u8(q.sign() < 0 ? 1 : 0);
      integer(abs(q.numerator()));
      integer(q.denominator());
      return;
    }
    integer(big(e.c0()));
    if (e.field().kind() == FieldKind::Quadratic) integer(big(e.c1()));
  }
  void point(const Point& p) {
    element(p.x);
    element(p.y);
  }

  std::vector<std::uint8_t> finish(MessageType type) {
    std::vector<std::uint8_t> msg(kMagic.begin(), kMagic.end());
    msg.push_back(kWireVersion);
    msg.push_back(static_cast<std::uint8_t>(type));
    const auto n = static_cast<std::uint32_t>(out_.size());
    for (int s = 24; s >= 0; s -= 8) msg.push_back(static_cast<std::uint8_t>(n >> s));
    msg.insert(msg.end(), out_.begin(), out_.end());
    return msg;
  }

 private:
  std::vector<std::uint8_t> out_;
};

[[noreturn]] void malformed(const std::string& why) {
  throw Error(ErrorCode::MalformedMessage, "malformed message: " + why);
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | bytes_[pos_++];
    return v;
  }
  std::uint64_t word64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | bytes_[pos_++];
    return v;
  }
  mpz_class integer() {
    const std::uint32_t n = u32();
    need(n);
    if (n > 0 && bytes_[pos_] == 0) malformed("integer with a leading zero byte");
    mpz_class v = 0;
    if (n > 0) mpz_import(v.get_mpz_t(), n, 1, 1, 1, 0, bytes_.data() + pos_);
    pos_ += n;
    return v;
  }
  u64 small(u64 limit, const char* what) {
    const mpz_class v = integer();
    if (v >= big(limit)) malformed(std::string(what) + " out of range");
    return v.get_ui();
  }
  Field field() {
    try {
      switch (u8()) {
        case 1: return Field::prime(small(kMaxModulus, "modulus"));
        case 2: {
          const u64 p = small(kMaxModulus, "modulus");
          const u64 c0 = small(p, "coefficient");
          const u64 c1 = small(p, "coefficient");
          return Field::quadratic(p, c0, c1);
        }
        case 3: return Field::rationals();
        default: malformed("unknown field kind");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::MalformedMessage) throw;
      malformed(e.what());
    }
  }
  Element element(const Field& f) {
    if (f.kind() == FieldKind::Rationals) {
      const std::uint8_t sign = u8();
      if (sign > 1) malformed("bad sign byte");
      mpz_class num = integer();
      const mpz_class den = integer();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      if (den == 0 || g != 1 || (num == 0 && (sign != 0 || den != 1)))
        malformed("rational not in lowest terms");
      if (sign) num = -num;
      return f.element(Rational(num, den));
    }
    const u64 p = f.characteristic();
    const u64 c0 = small(p, "residue");
    const u64 c1 = f.kind() == FieldKind::Quadratic ? small(p, "residue") : 0;
    return f.element(c0, c1);
  }
  Point point(const Field& f) {
    Element x = element(f);
    return Point(std::move(x), element(f));
  }
  RotationElement rotation(const Field& f, const Element& radius) {
    try {
      Element x = element(f);
      Element y = element(f);
      return RotationElement(radius, x, y);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::MalformedMessage) throw;
      malformed(e.what());
    }
  }
  Element radius(const Field& f) {
    Element r = element(f);
    if (r.is_zero()) malformed("zero radius");
    return r;
  }
  void finish() const {
    if (pos_ != bytes_.size()) malformed("trailing bytes");
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) malformed("truncated");
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

Reader open(std::span<const std::uint8_t> bytes, MessageType expected) {
  if (bytes.size() < kHeaderSize) malformed("truncated header");
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) malformed("bad magic");
  if (bytes[4] != kWireVersion)
    throw Error(ErrorCode::VersionMismatch,
                "unsupported wire version " + std::to_string(bytes[4]));
  if (bytes[5] != static_cast<std::uint8_t>(expected)) malformed("unexpected message type");
  Reader header(bytes.subspan(6, 4));
  if (header.u32() != bytes.size() - kHeaderSize) malformed("payload length mismatch");
  return Reader(bytes.subspan(kHeaderSize));
}

}  // namespace

std::vector<std::uint8_t> encode(const RotationElement& element) {
  Writer w;
  w.field(element.field());
  w.element(element.radius());
  w.point(element.point());
  return w.finish(MessageType::Element);
}

std::vector<std::uint8_t> encode(const Transcript& t) {
  Writer w;
  w.field(t.base.field());
  w.element(t.base.radius());
  for (const RotationElement* e : {&t.base, &t.sent_a, &t.sent_b, &t.shared_a, &t.shared_b})
    w.point(e->point());
  w.u8(t.equal ? 1 : 0);
  w.u8(t.eavesdropper ? 1 : 0);
  if (t.eavesdropper) {
    w.word64(t.eavesdropper->iterations);
    w.u8(t.eavesdropper->recovered_exponent ? 1 : 0);
    w.word64(t.eavesdropper->recovered_exponent.value_or(0));
  }
  return w.finish(MessageType::Transcript);
}

RotationElement decode_element(std::span<const std::uint8_t> bytes) {
  Reader r = open(bytes, MessageType::Element);
  const Field f = r.field();
  const Element radius = r.radius(f);
  RotationElement e = r.rotation(f, radius);
  r.finish();
  return e;
}

Transcript decode_transcript(std::span<const std::uint8_t> bytes) {
  Reader r = open(bytes, MessageType::Transcript);
  const Field f = r.field();
  const Element radius = r.radius(f);
  RotationElement base = r.rotation(f, radius);
  RotationElement sent_a = r.rotation(f, radius);
  RotationElement sent_b = r.rotation(f, radius);
  RotationElement shared_a = r.rotation(f, radius);
  RotationElement shared_b = r.rotation(f, radius);
  Transcript t{std::move(base), std::move(sent_a), std::move(sent_b), std::move(shared_a),
               std::move(shared_b), false, std::nullopt};
  const std::uint8_t equal = r.u8();
  if (equal > 1 || (equal == 1) != (t.shared_a == t.shared_b)) malformed("bad equality flag");
  t.equal = equal == 1;
  const std::uint8_t present = r.u8();
  if (present > 1) malformed("bad eavesdropper flag");
  if (present) {
    EavesdropperView view;
    view.iterations = r.word64();
    const std::uint8_t found = r.u8();
    const std::uint64_t exponent = r.word64();
    if (found > 1 || (!found && exponent != 0)) malformed("bad eavesdropper record");
    if (found) view.recovered_exponent = exponent;
    t.eavesdropper = view;
  }
  r.finish();
  return t;
}

}  // namespace circlering
