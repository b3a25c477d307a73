#pragma once

#include <stdexcept>
#include <string>

namespace pdextremal {

// Argument outside the mathematical domain of an operation (ell <= 0, k out of range, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class InvalidIntervalError : public DomainError {
public:
    using DomainError::DomainError;
};

// A sampled function returned NaN or infinity.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateDenominatorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The cosine power needed to reach the requested concentration exceeds the cap.
class InfeasibleConcentrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotEvenError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace pdextremal
