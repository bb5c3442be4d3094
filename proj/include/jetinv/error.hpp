#pragma once

#include <stdexcept>
#include <string>

namespace jetinv {

// Library-wide error with a stable machine-readable reason code.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& what)
        : Error("parse-error", "parse error at " + std::to_string(line) + ":" +
                                   std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

inline void require(bool cond, const char* code, const std::string& what) {
    if (!cond) throw Error(code, what);
}

} // namespace jetinv
