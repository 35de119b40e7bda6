#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace zetagraph {

/// Malformed input document (syntax, missing keys, wrong types).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that parses but violates a model invariant.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> problems);

    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// A call whose arguments break an operation precondition (negative index,
/// route not applicable to this graph, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested work exceeds a hard cap (series order, cycle length, matrix size, block count).
class ResourceCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace zetagraph
