#pragma once

#include <stdexcept>
#include <string>

namespace ovalkit {

// Bad argument values: non-finite samples, non-positive lengths, λ ≤ 0, ...
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Well-formed arguments that violate an operation's mathematical precondition
// (dual of a non-convex curve, non-Möbius argument to an action, ...).
class PreconditionError : public std::domain_error {
public:
    explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

// Affine fractional-linear evaluation at its pole.
class PoleError : public std::domain_error {
public:
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace ovalkit
