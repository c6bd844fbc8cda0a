#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace carpet_recur {

enum class ErrorCode {
    Parse,
    EmptyAlphabet,
    DigitOutOfRange,
    DuplicatePair,
    BadBases,
    ShiftTooDeep,
    DepthExceeded,
    DepthMismatch,
    HorizonExceeded,
    NonUniformFibre,
    InvalidTauPair,
    BudgetExceeded,
    DepthTooSmall,
    ZeroConditional,
    UnsupportedLength,
    InsufficientLevels,
    InvalidArgument,
    Io,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto its exit-code contract.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace carpet_recur
