#pragma once

#include <stdexcept>
#include <string>

namespace rhmap {

// Bad arguments, violated preconditions, unparsable input. CLI exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public InputError {
public:
    ParseError(const std::string& msg, int line, int col)
        : InputError(msg + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

// A constructed object fails its structural invariants. CLI exit code 2.
class InvariantError : public std::runtime_error {
public:
    explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rhmap
