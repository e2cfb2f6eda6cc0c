#include "fracperim/error.hpp"

namespace fracperim {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::dimension_mismatch: return "dimension_mismatch";
        case ErrorCode::threshold_exceeded: return "threshold_exceeded";
        case ErrorCode::precondition_violated: return "precondition_violated";
        case ErrorCode::same_sign_bracket: return "same_sign_bracket";
        case ErrorCode::unclassified_set: return "unclassified_set";
        case ErrorCode::non_convergence: return "non_convergence";
        case ErrorCode::io_error: return "io_error";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace fracperim
