#ifndef FAIRSIM_ERROR_HH
#define FAIRSIM_ERROR_HH

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fairsim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Lexical/structural problem in an input file.
class ParseError : public Error {
public:
    ParseError(std::string msg, std::size_t line, std::size_t column)
        : Error(std::move(msg)), line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

// A well-formed input that violates a semantic invariant (arity
// consistency, substochasticity, alphabet or dimension mismatch, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// The fixpoint iteration left the expected chain; the function handed to
// the solver is not monotone.
class MonotonicityError : public Error {
public:
    using Error::Error;
};

} // namespace fairsim

#endif
