#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace texbench {

// Domain error carrying a stable machine-readable kind ("BadMagic",
// "NotDivisible", ...). The CLI renders these as "error: <kind>: <detail>".
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& detail)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(std::string kind, const std::string& detail) {
    throw Error(std::move(kind), detail);
}

}  // namespace texbench
