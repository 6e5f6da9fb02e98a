#pragma once

#include <stdexcept>
#include <string>

namespace wml {

// Invalid argument for an operation's domain (bad label, p outside [0,1], ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Factorization or orthogonalization hit a degenerate input.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A statistic that is undefined for the given mask (e.g. longest row on an edgeless graph).
class InapplicableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Statistic/ensemble combination with no closed-form prediction.
class UnsupportedPrediction : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 128-bit subgraph count would wrap.
class CountOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// Malformed command line or graph spec; carries the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::string token)
        : std::runtime_error(what), token_(std::move(token)) {}
    const std::string& token() const noexcept { return token_; }

private:
    std::string token_;
};

} // namespace wml
