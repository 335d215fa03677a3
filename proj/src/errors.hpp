#ifndef BMV_ERRORS_HPP_
#define BMV_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace bmv {

enum class ErrorCode {
    kArgument,     // dimension mismatch, bad pointer-level misuse
    kBounds,       // index out of range
    kConfig,       // invalid word size, divisibility violations, caps
    kDecode,       // malformed serialized input
    kBudget,       // observed probes exceed a declared budget
    kConsistency,  // replay diverged from recorded trace
    kRecovery,     // no candidate completed during log replay
    kIo
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace bmv

#endif  // BMV_ERRORS_HPP_
