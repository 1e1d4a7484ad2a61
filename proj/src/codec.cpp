#include "odris/codec.hpp"

#include <stdexcept>
#include <string>

namespace odris {

namespace {

void check_block_bits(int k, const char* where) {
    if (k < kMinBlockBits || k > kMaxBlockBits) {
        throw std::invalid_argument(std::string(where) + ": k = " + std::to_string(k) +
                                    " outside [" + std::to_string(kMinBlockBits) + ", " +
                                    std::to_string(kMaxBlockBits) + "]");
    }
}

void check_ordinal(std::uint32_t ordinal, int k, const char* field, const char* where) {
    const std::uint64_t limit = std::uint64_t{1} << k;
    if (ordinal >= limit) {
        throw std::invalid_argument(std::string(where) + ": " + field + " = " +
                                    std::to_string(ordinal) + " out of range [0, 2^" +
                                    std::to_string(k) + ")");
    }
}

}  // namespace

const char* mode_name(Mode mode) {
    switch (mode) {
        case Mode::Off: return "off";
        case Mode::Reflect: return "reflect";
        case Mode::Refract: return "refract";
        case Mode::Both: return "both";
    }
    throw std::invalid_argument("mode_name: invalid mode value");
}

Mode mode_from_name(std::string_view name) {
    if (name == "off") return Mode::Off;
    if (name == "reflect") return Mode::Reflect;
    if (name == "refract") return Mode::Refract;
    if (name == "both") return Mode::Both;
    throw std::invalid_argument("mode_from_name: unknown mode \"" + std::string(name) + "\"");
}

std::string mode_bits(Mode mode) {
    return to_bit_string(static_cast<std::uint32_t>(mode), 2);
}

Mode mode_from_bits(std::string_view two_bits) {
    if (two_bits.size() != 2) {
        throw std::invalid_argument("mode_from_bits: expected exactly 2 bits");
    }
    return static_cast<Mode>(parse_bit_string(two_bits));
}

std::uint32_t gray_encode(std::uint32_t ordinal, int k) {
    check_block_bits(k, "gray_encode");
    check_ordinal(ordinal, k, "ordinal", "gray_encode");
    return ordinal ^ (ordinal >> 1);
}

std::uint32_t gray_decode(std::uint32_t gray_word) {
    std::uint32_t n = gray_word;
    while (gray_word >>= 1) n ^= gray_word;
    return n;
}

std::string to_bit_string(std::uint32_t word, int k) {
    std::string out(static_cast<std::size_t>(k), '0');
    for (int i = 0; i < k; ++i) {
        if (word >> (k - 1 - i) & 1u) out[static_cast<std::size_t>(i)] = '1';
    }
    return out;
}

std::uint32_t parse_bit_string(std::string_view bits) {
    if (bits.empty() || bits.size() > 32) {
        throw std::invalid_argument("parse_bit_string: length must be in [1, 32]");
    }
    std::uint32_t word = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument(std::string("parse_bit_string: invalid character '") + c +
                                        "'");
        }
        word = word << 1 | static_cast<std::uint32_t>(c == '1');
    }
    return word;
}

std::string gray_bits(std::uint32_t ordinal, int k) {
    return to_bit_string(gray_encode(ordinal, k), k);
}

std::uint32_t gray_decode_bits(std::string_view bits) {
    return gray_decode(parse_bit_string(bits));
}

std::string Code::bits() const {
    return mode_bits(mode) + gray_bits(phase_ordinal, k) + gray_bits(coeff_ordinal, k);
}

Code encode(Mode mode, std::uint32_t phase_ordinal, std::uint32_t coeff_ordinal, int k) {
    check_block_bits(k, "encode");
    check_ordinal(phase_ordinal, k, "phase_ordinal", "encode");
    check_ordinal(coeff_ordinal, k, "coeff_ordinal", "encode");
    if (mode == Mode::Off) {
        // Off elements receive no meaningful payload; canonical form is all-zero blocks.
        return Code{mode, k, 0, 0};
    }
    return Code{mode, k, phase_ordinal, coeff_ordinal};
}

Code decode(std::string_view bits) {
    if (bits.size() < 4 || bits.size() % 2 != 0) {
        throw std::invalid_argument("decode: malformed code, length " +
                                    std::to_string(bits.size()) +
                                    " is not an even number >= 4");
    }
    const int k = static_cast<int>(bits.size()) / 2 - 1;
    if (k > kMaxBlockBits) {
        throw std::invalid_argument("decode: malformed code, block size " + std::to_string(k) +
                                    " exceeds " + std::to_string(kMaxBlockBits));
    }
    const Mode mode = mode_from_bits(bits.substr(0, 2));
    const std::uint32_t phase = gray_decode_bits(bits.substr(2, static_cast<std::size_t>(k)));
    const std::uint32_t coeff =
        gray_decode_bits(bits.substr(2 + static_cast<std::size_t>(k), static_cast<std::size_t>(k)));
    return Code{mode, k, phase, coeff};
}

std::vector<Code> enumerate_codes(int k) {
    check_block_bits(k, "enumerate_codes");
    if (k > 8) {
        throw std::invalid_argument("enumerate_codes: k = " + std::to_string(k) +
                                    " exceeds 8; the full space would not fit in memory budgets");
    }
    static constexpr Mode kModeOrder[] = {Mode::Reflect, Mode::Refract, Mode::Both, Mode::Off};
    const std::uint32_t n = std::uint32_t{1} << k;
    std::vector<Code> out;
    out.reserve(std::size_t{4} * n * n);
    for (Mode mode : kModeOrder) {
        for (std::uint32_t phase = 0; phase < n; ++phase) {
            for (std::uint32_t coeff = 0; coeff < n; ++coeff) {
                out.push_back(Code{mode, k, phase, coeff});
            }
        }
    }
    return out;
}

}  // namespace odris
