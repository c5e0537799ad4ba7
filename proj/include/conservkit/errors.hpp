#pragma once

#include <stdexcept>
#include <string>

namespace conservkit {

/// Malformed input: bad dimensions, unparsable rationals, wrong shapes.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Evaluation outside the domain of an expression (division by zero, a pole).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A requested span is not closed under the product.
class ClosureError : public std::runtime_error {
public:
    ClosureError(std::size_t i, std::size_t j, const std::string& what)
        : std::runtime_error(what), i_(i), j_(j) {}
    // 0-based indices of the first violating pair.
    std::size_t i() const noexcept { return i_; }
    std::size_t j() const noexcept { return j_; }

private:
    std::size_t i_;
    std::size_t j_;
};

/// A method was invoked outside its range of applicability.
class MethodError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Parameters violating a family's admissibility condition (e.g. b = 0).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A sample set does not follow the required protocol (missing e2 sample).
class ProtocolError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A vector is not the image of e2 under any member of a family.
class RecoveryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace conservkit
