#ifndef UNDULATION_ERRORS_HPP
#define UNDULATION_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace undulation {

// Base class for all errors reachable from user input.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid mathematical operation (inversion of zero, singular matrix where
// a regular one is required, degree mismatch, ...).
class MathError : public Error {
public:
    explicit MathError(const std::string& msg) : Error(msg) {}
};

// Malformed files, unparsable polynomials, checksum mismatches.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Rank did not stabilize within the row budget, or results disagree
// across seeds/primes.
class UnsaturatedError : public Error {
public:
    explicit UnsaturatedError(const std::string& msg) : Error(msg) {}
};

} // namespace undulation

#endif
