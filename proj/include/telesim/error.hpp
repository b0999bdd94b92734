#pragma once

#include <stdexcept>
#include <string>

namespace telesim {

// Malformed input text: circuit files, config files, mapping files.
// Messages carry "line:column" where the position is known.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Violation of a model constraint at simulation time: core capacity
// exceeded, teleport with no feasible destination, unknown gate delay.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File could not be opened or read.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace telesim
