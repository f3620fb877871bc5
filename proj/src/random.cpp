#include "debate/random.hpp"

#include <array>
#include <vector>

namespace debate {

std::uint64_t derive_key(std::uint64_t master, std::initializer_list<std::uint64_t> path)
{
    std::vector<std::uint32_t> words;
    words.reserve(2 + 2 * path.size());
    const auto push = [&words](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(master);
    for (std::uint64_t p : path) push(p);
    std::seed_seq seq(words.begin(), words.end());
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

} // namespace debate
