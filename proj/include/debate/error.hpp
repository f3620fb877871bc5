#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace debate {

enum class ErrorCode {
    InvalidConfiguration,
    MissingOracleBit,
    UnexpectedOracleBit,
    StepBudgetExceeded,
    UnassignedDependency,
    AlreadyAssigned,
    BadQueryLength,
    TooLargeToEnumerate,
    MalformedMachine,
    MalformedProgram,
    UnknownFamily,
    BadParameter,
    ParseError,
    CounterexampleFound,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace debate
