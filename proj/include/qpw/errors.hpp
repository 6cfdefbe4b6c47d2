#pragma once

#include <stdexcept>
#include <string>

namespace qpw {

/// Domain error carrying a stable machine-readable name such as
/// "SingularPairing" or "TrustExceeded".
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), name_(std::move(name)), detail_(detail) {}

    const std::string& name() const { return name_; }
    const std::string& detail() const { return detail_; }

private:
    std::string name_;
    std::string detail_;
};

[[noreturn]] inline void fail(const std::string& name, const std::string& detail) {
    throw Error(name, detail);
}

} // namespace qpw
