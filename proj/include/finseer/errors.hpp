#pragma once

#include <stdexcept>
#include <string>

namespace finseer {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text (CSV rows, model files); message names the line.
class ParseError : public Error {
public:
    using Error::Error;
};

// Structurally well-formed input that breaks a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// HTTP fetch failure; status is 0 when no response was received.
class FetchError : public Error {
public:
    FetchError(const std::string& msg, int status = 0) : Error(msg), status_(status) {}
    int status() const { return status_; }

private:
    int status_;
};

// Series or pair collection too short for the requested operation.
class LengthError : public Error {
public:
    using Error::Error;
};

// Constant series, constant feature, constant regressor.
class DegenerateError : public Error {
public:
    using Error::Error;
};

// Bad configuration value (eta <= 0, epochs < 1, split ratio, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Split would leave the train or test side empty.
class SplitError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// Vector length does not match the network architecture.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Non-finite weight or activation during training.
class DivergenceError : public Error {
public:
    using Error::Error;
};

// Evaluation reports that cannot be compared (mismatched pair counts).
class ComparisonError : public Error {
public:
    using Error::Error;
};

} // namespace finseer
