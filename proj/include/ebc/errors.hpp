#pragma once

#include <stdexcept>
#include <string>

namespace ebc {

// Input outside an operation's mathematical domain (n < 2, non-coprime
// moduli, non-unit where a unit is required, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Input inside the domain but violating an operation's stated precondition
// (sequence shorter than an extraction threshold, ...).
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// A search did not finish inside its budget and a caller asked for an exact value.
class UndecidedError : public std::runtime_error {
public:
    explicit UndecidedError(const std::string& what) : std::runtime_error(what) {}
};

// A proved statement failed to hold; always an implementation bug.
class InconsistencyError : public std::logic_error {
public:
    explicit InconsistencyError(const std::string& what) : std::logic_error(what) {}
};

// Malformed textual input (sequence literals and the like).
class ParseError : public std::invalid_argument {
public:
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace ebc
