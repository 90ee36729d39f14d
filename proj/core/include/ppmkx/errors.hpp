#pragma once

#include <stdexcept>
#include <string>

namespace ppmkx {

// Invalid or corrupt run parameters (bad sizes, pi entries out of range, ...).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition.
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// Inner/outer round sequencing went wrong (commit missed, wrong agreed count).
struct ProtocolError : std::logic_error {
    using std::logic_error::logic_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ppmkx
