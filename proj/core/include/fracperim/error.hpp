#pragma once

#include <stdexcept>
#include <string>

namespace fracperim {

enum class ErrorCode {
    invalid_argument,
    dimension_mismatch,
    threshold_exceeded,
    precondition_violated,
    same_sign_bracket,
    unclassified_set,
    non_convergence,
    io_error,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool condition, ErrorCode code, const std::string& what) {
    if (!condition) fail(code, what);
}

}  // namespace fracperim
