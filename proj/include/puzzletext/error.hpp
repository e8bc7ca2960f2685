#pragma once

#include <stdexcept>
#include <string>

namespace puzzletext {

// Base for every data error raised by the library. The CLI maps these to
// exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Error carrying a module-specific code enum plus an optional position.
template <class Code>
class CodedError : public Error {
public:
    CodedError(Code code, std::string message, long position = -1)
        : Error(std::move(message)), code_(code), position_(position) {}

    Code code() const noexcept { return code_; }
    // Character/cell/token index the error refers to, or -1.
    long position() const noexcept { return position_; }

private:
    Code code_;
    long position_;
};

}  // namespace puzzletext
