#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "debate/strategy.hpp"

namespace debate {

/// Family name plus key=value parameters, written "ShiftedAnnouncer t=1 delta=1/4".
struct AdversarySpec {
    std::string family = "Honest";
    std::map<std::string, std::string> params;

    static AdversarySpec parse(std::string_view text);
    std::string str() const;

    bool has(const std::string& key) const { return params.count(key) != 0; }
    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;

    bool operator==(const AdversarySpec&) const = default;
    auto operator<=>(const AdversarySpec&) const = default;
};

/// Families (parameters in brackets, all optional unless noted):
///
///   Honest
///   ShiftedAnnouncer [t=0 (every round), delta (required; "1/4", or "1/2d" for 1/(2d)), dir=+1|-1]
///   LyingFinalBit [target=1]
///   ConstantAnnouncer [p (required)]
///   BiasedShare [c (required)]
///   AlwaysAbort [t=0 (every round)]
///   NeverAbort
///   FrivolousAccuser [t=1, b=1]
///   WrongReadSet [t=1]
///   FixedSelectors [bits (required), characters 0/1/c]
///   MidpointCorruptor [lie_from, flip=bit list, forge=flip|resimulate, round, mask=bit list, claim=1]
///   TranscriptCorruptor [cells (required) "t[:b.b..],...", consistent=0|1, claim=1]
///   BadWitness [witness (required)]
///
/// Any family also accepts witness=<bits>, replacing the honest witness.
std::unique_ptr<Strategy> make_adversary(const AdversarySpec& spec);
std::unique_ptr<Strategy> make_adversary(std::string_view text);

const std::vector<std::string>& adversary_families();

} // namespace debate
