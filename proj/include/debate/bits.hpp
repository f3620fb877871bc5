#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace debate {

using Bits = std::vector<std::uint8_t>;

/// "0110" -> {0,1,1,0}. Throws ParseError on any other character.
Bits parse_bits(std::string_view text);
std::string bits_to_string(std::span<const std::uint8_t> bits);

/// Big-endian packing: the first bit is the most significant.
std::uint64_t bits_to_index(std::span<const std::uint8_t> bits);
Bits index_to_bits(std::uint64_t index, std::uint32_t length);

/// Number of bits needed to encode values in [0, n); 0 for n <= 1.
inline std::uint32_t ceil_log2(std::uint64_t n)
{
    std::uint32_t bits = 0;
    while (bits < 64 && (std::uint64_t{1} << bits) < n) ++bits;
    return bits;
}

} // namespace debate
