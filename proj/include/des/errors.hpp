#pragma once

#include <stdexcept>
#include <string>

namespace des {

// Bad or inconsistent input data (files, alphabets, preconditions).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Same event declared controllable in one generator and uncontrollable in another.
struct ConflictingControllabilityError : InputError {
    explicit ConflictingControllabilityError(const std::string& what) : InputError(what) {}
};

// Work limit exceeded (bounded-language enumeration budget).
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace des
