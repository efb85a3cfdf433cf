#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace superflow {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
};

// Inputs outside the domain of an operation (bad dimension, singular matrix, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A group closure exceeded its order cap.
struct GroupTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical evaluation hit a pole, a branch collision, or failed to converge.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace superflow
