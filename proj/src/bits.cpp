#include "debate/bits.hpp"

#include "debate/error.hpp"

namespace debate {

Bits parse_bits(std::string_view text)
{
    Bits out;
    out.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw Error(ErrorCode::ParseError, "expected a bit string, got '" + std::string(text) + "'");
        }
        out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
}

std::string bits_to_string(std::span<const std::uint8_t> bits)
{
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

std::uint64_t bits_to_index(std::span<const std::uint8_t> bits)
{
    if (bits.size() > 64) throw Error(ErrorCode::BadQueryLength, "more than 64 bits");
    std::uint64_t v = 0;
    for (auto b : bits) v = (v << 1) | (b & 1u);
    return v;
}

Bits index_to_bits(std::uint64_t index, std::uint32_t length)
{
    Bits out(length);
    for (std::uint32_t i = 0; i < length; ++i) {
        out[length - 1 - i] = static_cast<std::uint8_t>((index >> i) & 1u);
    }
    return out;
}

} // namespace debate
