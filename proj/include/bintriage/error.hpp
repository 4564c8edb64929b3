#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace bintriage {

// Fatal analysis errors carry a stable machine-readable code alongside the
// human message. The CLI prints them as "error:<code>: <message>".
class TriageError : public std::runtime_error {
public:
    TriageError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

}  // namespace bintriage
