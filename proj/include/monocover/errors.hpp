#pragma once

#include <stdexcept>
#include <string>

namespace monocover {

class NotConnectedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An adversarial construction has no valid choice of witness vertices.
class ConstructionInfeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Base for the algorithm failures that name the pipeline step that failed.
class StepError : public std::runtime_error {
public:
    StepError(std::string kind, std::string step, const std::string& detail)
        : std::runtime_error(kind + " at " + step + ": " + detail), kind_(std::move(kind)), step_(std::move(step)) {}
    const std::string& kind() const noexcept { return kind_; }
    const std::string& step() const noexcept { return step_; }

private:
    std::string kind_;
    std::string step_;
};

/// The input lacks the pseudo-random structure the covering construction relies on.
class PropertyFailure : public StepError {
public:
    PropertyFailure(std::string step, const std::string& detail)
        : StepError("property-failure", std::move(step), detail) {}
};

class PreconditionError : public StepError {
public:
    PreconditionError(std::string step, const std::string& detail)
        : StepError("precondition", std::move(step), detail) {}
};

/// A bound the construction ought to guarantee did not hold on this input.
class BoundAssertion : public StepError {
public:
    BoundAssertion(std::string step, const std::string& detail) : StepError("bound-assertion", std::move(step), detail) {}
};

class RetryExhausted : public StepError {
public:
    RetryExhausted(std::string step, const std::string& detail) : StepError("retry-exhausted", std::move(step), detail) {}
};

class TooLargeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace monocover
