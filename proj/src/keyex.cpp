#include "circlering/keyex.hpp"

#include <future>
#include <random>

namespace circlering {

ProtocolParams::ProtocolParams(RotationElement base, KeyexOptions options)
    : base_(std::move(base)), options_(options) {
  const Field& f = base_.field();
  if (f.kind() == FieldKind::Quadratic)
    throw Error(ErrorCode::WrongFieldKind, "key exchange runs over F_p or Q");
  const CyclicityReport c = classify_cyclicity(base_, 64);
  if (f.is_finite()) {
    order_ = c.value;
    if (c.value <= 4)
      throw Error(ErrorCode::DegenerateBasePoint,
                  "base point has order " + std::to_string(c.value) + ", need more than 4");
  } else {
    if (c.verdict != CyclicityReport::Verdict::Acyclic)
      throw Error(ErrorCode::DegenerateBasePoint, "base point over Q must be acyclic");
    if (options_.rational_exponent_cap < 2)
      throw Error(ErrorCode::InvalidArgument, "exponent cap must be at least 2");
  }
}

PartyState keygen_with_exponent(const ProtocolParams& params, Role role, u64 exponent) {
  if (exponent == 0) throw Error(ErrorCode::InvalidArgument, "exponent must be positive");
  return PartyState{role, exponent, rot_pow(params.base(), exponent), std::nullopt};
}

PartyState keygen(const ProtocolParams& params, Role role, u64 seed) {
  const u64 hi = params.base_order() ? *params.base_order() - 1
                                     : params.options().rational_exponent_cap;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> pick(2, hi);
  return keygen_with_exponent(params, role, pick(rng));
}

RotationElement derive_shared(PartyState& me, const RotationElement& peer_sent) {
  if (peer_sent.circle() != me.sent.circle())
    throw Error(ErrorCode::CircleMismatch, "peer value lives on a different circle");
  me.sent.circle().require_on_circle(peer_sent.point());
  me.shared = rot_pow(peer_sent, me.private_exponent);
  return *me.shared;
}

EavesdropperView brute_force_log(const RotationElement& base, const RotationElement& target,
                                 u64 cap) {
  EavesdropperView view;
  RotationElement current = base;
  for (u64 k = 1; k <= cap; ++k) {
    view.iterations = k;
    if (current == target) {
      view.recovered_exponent = k;
      break;
    }
    current = rot_mul(current, base);
  }
  return view;
}

Transcript simulate_exchange(const ProtocolParams& params, u64 seed_a, u64 seed_b) {
  std::promise<RotationElement> to_b, to_a;
  auto party = [&params](Role role, u64 seed, std::promise<RotationElement>& outbox,
                         std::future<RotationElement> inbox) {
    std::optional<PartyState> me;
    try {
      me = keygen(params, role, seed);
    } catch (...) {
      outbox.set_exception(std::current_exception());  // unblocks the peer
      throw;
    }
    outbox.set_value(me->sent);
    derive_shared(*me, inbox.get());
    return *me;
  };
  auto a = std::async(std::launch::async, party, Role::A, seed_a, std::ref(to_b),
                      to_a.get_future());
  auto b = std::async(std::launch::async, party, Role::B, seed_b, std::ref(to_a),
                      to_b.get_future());
  const PartyState pa = a.get();
  const PartyState pb = b.get();

  Transcript t{params.base(), pa.sent,    pb.sent, *pa.shared, *pb.shared,
               *pa.shared == *pb.shared, std::nullopt};
  if (params.field().is_finite())
    t.eavesdropper = brute_force_log(params.base(), pa.sent, params.options().eavesdropper_cap);
  return t;
}

}  // namespace circlering
