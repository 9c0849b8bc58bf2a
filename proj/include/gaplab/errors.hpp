#pragma once

#include <stdexcept>
#include <string>

namespace gaplab {

// Exact-mode size guard tripped. Callers that can fall back to sampling
// should catch this; the CLI maps it to its own exit code.
struct SizeGuardError : std::runtime_error {
    explicit SizeGuardError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument or precondition violation (unknown axis, zero-mass
// conditioning event, mismatched outcome spaces, ...).
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace gaplab
