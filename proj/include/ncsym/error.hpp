#pragma once

#include <stdexcept>
#include <string>

namespace ncsym {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Raised when a matrix (or pencil) is numerically singular.
class SingularMatrix : public Error {
public:
    SingularMatrix(const std::string& what, double smallest_singular_value)
        : Error(what + " (smallest singular value " + std::to_string(smallest_singular_value) + ")"),
          sigma_min_(smallest_singular_value) {}
    double smallest_singular_value() const noexcept { return sigma_min_; }

private:
    double sigma_min_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ContractViolation : public Error {
public:
    using Error::Error;
};

/// Gram matrices of two families differ beyond tolerance.
class HypothesisViolation : public Error {
public:
    HypothesisViolation(const std::string& what, double gram_residual)
        : Error(what + " (gram residual " + std::to_string(gram_residual) + ")"), residual_(gram_residual) {}
    double gram_residual() const noexcept { return residual_; }

private:
    double residual_;
};

class PaddingError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// A pipeline stage failed; `stage()` names it.
class StageFailure : public Error {
public:
    StageFailure(std::string stage, const std::string& what)
        : Error("stage '" + stage + "': " + what), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace ncsym
