#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "circlering/keyex.hpp"

namespace circlering {

// Wire format, all integers big-endian:
//
//   "CRC1" | version u8 | type u8 | payload length u32 | payload
//
// payload of an element:     field | radius | x | y
// payload of a transcript:   field | radius | base x y | sent_a x y | sent_b x y
//                            | shared_a x y | shared_b x y | equal u8 | eavesdropper
//
// field:   kind u8 (1 = F_p, 2 = F_p[x]/(x^2 + c1 x + c0), 3 = Q), then p, or p c0 c1
// integer: magnitude length u32 | magnitude bytes without leading zeros (empty for 0)
// element: c0 over F_p, c0 c1 over an extension, sign u8 | |num| | den over Q
// eavesdropper: present u8, then iterations (8 bytes) | found u8 | exponent (8 bytes)
//
// Decoding accepts only the canonical encoding, so decode(encode(x)) == x and
// encode(decode(b)) == b.

inline constexpr std::uint8_t kWireVersion = 1;

enum class MessageType : std::uint8_t { Element = 1, Transcript = 2 };

std::vector<std::uint8_t> encode(const RotationElement& element);
std::vector<std::uint8_t> encode(const Transcript& transcript);

/// Throw Error(MalformedMessage) or Error(VersionMismatch).
RotationElement decode_element(std::span<const std::uint8_t> bytes);
Transcript decode_transcript(std::span<const std::uint8_t> bytes);

}  // namespace circlering
