#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace odris {

/// Operating mode of a surface element, selected by the two-bit block at the
/// head of every control code. Enum values equal the wire bit patterns.
enum class Mode : std::uint8_t {
    Off = 0b00,
    Reflect = 0b01,
    Refract = 0b10,
    Both = 0b11,
};

inline constexpr int kMinBlockBits = 1;
inline constexpr int kMaxBlockBits = 16;

const char* mode_name(Mode mode);
Mode mode_from_name(std::string_view name);
std::string mode_bits(Mode mode);
Mode mode_from_bits(std::string_view two_bits);

/// Reflected binary Gray code of `ordinal`, as a k-bit word.
std::uint32_t gray_encode(std::uint32_t ordinal, int k);
/// Inverse of gray_encode (word form).
std::uint32_t gray_decode(std::uint32_t gray_word);

/// MSB-first ASCII '0'/'1' rendering of the low `k` bits of `word`.
std::string to_bit_string(std::uint32_t word, int k);
/// Parses an MSB-first bit string; rejects non-binary characters.
std::uint32_t parse_bit_string(std::string_view bits);

std::string gray_bits(std::uint32_t ordinal, int k);
std::uint32_t gray_decode_bits(std::string_view bits);

/// One element control code: mode block, k-bit Gray phase block, k-bit Gray
/// coefficient block. Serializes to exactly 2(k+1) bits.
struct Code {
    Mode mode = Mode::Off;
    int k = 1;
    std::uint32_t phase_ordinal = 0;
    std::uint32_t coeff_ordinal = 0;

    int bit_length() const { return 2 * (k + 1); }
    std::string bits() const;

    friend bool operator==(const Code&, const Code&) = default;
};

/// Builds a code from field values. Off codes carry all-zero payload blocks;
/// the ordinals are still range-checked first.
Code encode(Mode mode, std::uint32_t phase_ordinal, std::uint32_t coeff_ordinal, int k);

/// Parses a serialized code. The payload of an Off code is preserved as-is,
/// so decode(bits).bits() == bits for every well-formed string.
Code decode(std::string_view bits);

/// All 4 * 4^k codes for block size k, in deterministic order: modes
/// Reflect, Refract, Both, Off; within a mode phase ordinal ascending, then
/// coefficient ordinal ascending.
std::vector<Code> enumerate_codes(int k);

}  // namespace odris
