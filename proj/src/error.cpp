#include "debate/error.hpp"

namespace debate {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidConfiguration: return "InvalidConfiguration";
    case ErrorCode::MissingOracleBit: return "MissingOracleBit";
    case ErrorCode::UnexpectedOracleBit: return "UnexpectedOracleBit";
    case ErrorCode::StepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorCode::UnassignedDependency: return "UnassignedDependency";
    case ErrorCode::AlreadyAssigned: return "AlreadyAssigned";
    case ErrorCode::BadQueryLength: return "BadQueryLength";
    case ErrorCode::TooLargeToEnumerate: return "TooLargeToEnumerate";
    case ErrorCode::MalformedMachine: return "MalformedMachine";
    case ErrorCode::MalformedProgram: return "MalformedProgram";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CounterexampleFound: return "CounterexampleFound";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

} // namespace debate
