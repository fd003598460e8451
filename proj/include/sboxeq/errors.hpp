#pragma once

#include <stdexcept>
#include <string>

namespace sboxeq {

/// Malformed or inconsistent caller input (dimension mismatch, bad file, broken precondition).
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised by invert() on a singular matrix.
class NotInvertible : public std::domain_error {
public:
    explicit NotInvertible(const std::string& what) : std::domain_error(what) {}
};

}  // namespace sboxeq
