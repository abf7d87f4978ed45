#pragma once

#include <stdexcept>
#include <string>

namespace defconn {

enum class ErrorCode {
    InvalidArgument = 1,
    NonFinite = 2,
    BianchiViolation = 3,
    NotUnit = 4,
    DomainError = 5,
    BadParams = 6,
    OutOfRange = 7,
    ParseError = 8,
    TheoremViolation = 9,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace defconn
