#ifndef EXPTOWER_ERRORS_HPP
#define EXPTOWER_ERRORS_HPP

#include <stdexcept>

namespace exptower {

// A value lies outside the mathematical domain of an operation (wrong sign
// for an inverse, NaN where a number is required, non-positive base).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Text does not match the sign-word grammar.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A finite word is too short for the requested truncation depth.
class InsufficientSignsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parameter is outside the range where the requested object exists.
class OutOfRangeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The lower map has no two-cycle at this base.
class NoCycleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace exptower

#endif
