#include "debate/message.hpp"

#include <sstream>

namespace debate {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string config_text(const Configuration& c)
{
    std::ostringstream os;
    os << "state=" << c.state << " head=" << c.head << " tape=0x" << std::hex << c.tape << std::dec
       << " step=" << c.counter;
    return os.str();
}

} // namespace

std::string to_string(Party p)
{
    return p == Party::A ? "A" : "B";
}

std::string kind_name(const Message& m)
{
    return std::visit(overloaded{
                          [](const NoMessage&) { return "NoMessage"; },
                          [](const ProbabilityAnnouncement&) { return "ProbabilityAnnouncement"; },
                          [](const RandomShare&) { return "RandomShare"; },
                          [](const SampledBit&) { return "SampledBit"; },
                          [](const Abort&) { return "Abort"; },
                          [](const Continue&) { return "Continue"; },
                          [](const ConfigurationMsg&) { return "ConfigurationMsg"; },
                          [](const HalfSelector&) { return "HalfSelector"; },
                          [](const TranscriptMsg&) { return "TranscriptMsg"; },
                          [](const LocationClaim&) { return "LocationClaim"; },
                          [](const WitnessMsg&) { return "WitnessMsg"; },
                      },
                      m);
}

std::string describe(const Message& m)
{
    return std::visit(overloaded{
                          [](const NoMessage&) -> std::string { return "NoMessage"; },
                          [](const ProbabilityAnnouncement& a) -> std::string { return "announce p=" + a.p.get_str(); },
                          [](const RandomShare& s) -> std::string {
                              std::ostringstream os;
                              os << "share z=0x" << std::hex << s.z.raw();
                              return os.str();
                          },
                          [](const SampledBit& s) -> std::string { return "bit a=" + std::to_string(s.bit); },
                          [](const Abort&) -> std::string { return "abort"; },
                          [](const Continue&) -> std::string { return "continue"; },
                          [](const ConfigurationMsg& c) -> std::string { return "config " + config_text(c.c); },
                          [](const HalfSelector& h) -> std::string { return "select b=" + std::to_string(h.b); },
                          [](const TranscriptMsg& t) -> std::string {
                              std::ostringstream os;
                              os << "transcript cells=" << t.cells.size() << " [" << std::hex;
                              for (std::size_t i = 0; i < t.cells.size(); ++i) os << (i ? " " : "") << t.cells[i];
                              os << "]";
                              return os.str();
                          },
                          [](const LocationClaim& l) -> std::string {
                              std::string s = "locate t=" + std::to_string(l.t) + " I={";
                              for (std::size_t i = 0; i < l.reads.size(); ++i) s += (i ? "," : "") + l.reads[i].str();
                              return s + "}";
                          },
                          [](const WitnessMsg& w) -> std::string { return "witness w=" + bits_to_string(w.w); },
                      },
                      m);
}

std::string to_record(const DebateOutcome& o)
{
    std::ostringstream os;
    os << "protocol=" << o.protocol << " verdict=" << int{o.verdict} << " abort_round=";
    if (o.abort_round) {
        os << *o.abort_round;
    } else {
        os << '-';
    }
    os << " checked_step=";
    if (o.checked_step) {
        os << *o.checked_step;
    } else {
        os << '-';
    }
    os << " forfeit=" << (o.forfeit ? to_string(o.forfeit->party) : "-") << " seed=" << o.seed
       << " verifier_oracle_queries=" << o.counters.verifier_oracle_queries
       << " verifier_bits_read=" << o.counters.verifier_bits_read
       << " verifier_configurations_read=" << o.counters.verifier_configurations_read
       << " proverA_steps=" << o.counters.proverA_steps << " proverB_steps=" << o.counters.proverB_steps
       << " proverA_oracle_samples=" << o.counters.proverA_oracle_samples
       << " proverB_oracle_samples=" << o.counters.proverB_oracle_samples;
    return os.str();
}

std::string to_trace(const DebateOutcome& o)
{
    std::string out;
    for (const LogEntry& e : o.log) {
        out += std::to_string(e.round) + '\t' + e.actor + '\t' + e.text + '\n';
    }
    return out;
}

} // namespace debate
