#pragma once

#include <optional>

#include "circlering/rotation.hpp"

namespace circlering {

// A teaching simulator of Diffie-Hellman on the rotation group. It is not a secure
// cryptosystem: over F_p the group embeds in F_{p^2}^*, where discrete logarithms are
// well studied.

struct KeyexOptions {
  /// Over Q exponents are drawn from [2, rational_exponent_cap]; coordinates grow linearly
  /// with the exponent, so the default is small. Any value up to 2^64 - 1 is accepted.
  u64 rational_exponent_cap = 256;
  /// Brute-force steps the eavesdropper may spend recovering an exponent over F_p.
  u64 eavesdropper_cap = u64{1} << 16;
};

class ProtocolParams {
 public:
  /// The base point must have order above 4 over F_p and be acyclic over Q; otherwise
  /// Error(DegenerateBasePoint). Quadratic extensions give Error(WrongFieldKind).
  explicit ProtocolParams(RotationElement base, KeyexOptions options = {});

  const RotationElement& base() const { return base_; }
  const Field& field() const { return base_.field(); }
  /// Order of the base point (finite fields only).
  std::optional<u64> base_order() const { return order_; }
  const KeyexOptions& options() const { return options_; }

 private:
  RotationElement base_;
  std::optional<u64> order_;
  KeyexOptions options_;
};

enum class Role { A, B };

struct PartyState {
  Role role;
  u64 private_exponent;
  RotationElement sent;
  std::optional<RotationElement> shared;
};

/// Draws the private exponent from a generator seeded with `seed` (uniform in
/// [2, order - 1] over F_p) and computes the public value base^exponent.
PartyState keygen(const ProtocolParams& params, Role role, u64 seed);

/// As keygen with a fixed exponent; any positive exponent is accepted.
PartyState keygen_with_exponent(const ProtocolParams& params, Role role, u64 exponent);

/// peer_sent^exponent, also stored in `me.shared`. Throws Error(PointNotOnCircle) or
/// Error(CircleMismatch) for a foreign peer value.
RotationElement derive_shared(PartyState& me, const RotationElement& peer_sent);

struct EavesdropperView {
  /// Powers of the base tried before giving up or finding A's public value.
  u64 iterations = 0;
  std::optional<u64> recovered_exponent;

  friend bool operator==(const EavesdropperView&, const EavesdropperView&) = default;
};

struct Transcript {
  RotationElement base;
  RotationElement sent_a;
  RotationElement sent_b;
  RotationElement shared_a;
  RotationElement shared_b;
  bool equal = false;
  /// Finite fields only.
  std::optional<EavesdropperView> eavesdropper;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

/// Runs both parties as separate tasks that only exchange their public values.
Transcript simulate_exchange(const ProtocolParams& params, u64 seed_a, u64 seed_b);

/// Brute-force discrete logarithm: the least k in [1, cap] with base^k = target.
EavesdropperView brute_force_log(const RotationElement& base, const RotationElement& target,
                                 u64 cap);

}  // namespace circlering
