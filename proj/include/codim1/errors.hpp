#pragma once

#include <stdexcept>
#include <string>

namespace codim1 {

enum class ErrorCode {
    kInvalidArgument,
    kIo,
    kDomain,    // geometric obstruction, disconnected graph, ...
    kInternal,  // broken internal consistency (bug or cover/nerve mismatch)
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline Error invalid_argument(const std::string& what) {
    return Error(ErrorCode::kInvalidArgument, what);
}
inline Error io_error(const std::string& what) {
    return Error(ErrorCode::kIo, what);
}
inline Error domain_error(const std::string& what) {
    return Error(ErrorCode::kDomain, what);
}
inline Error internal_error(const std::string& what) {
    return Error(ErrorCode::kInternal, what);
}

}  // namespace codim1
