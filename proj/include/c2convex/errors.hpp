#pragma once

#include <stdexcept>
#include <string>

namespace c2convex {

// All library failures carry a stable code usable by the CLI exit-code map
// and by tests asserting failure classes.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw Error(code, what);
}

} // namespace c2convex
