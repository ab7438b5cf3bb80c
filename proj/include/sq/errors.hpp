#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sq {

/// Malformed table (non-square, entry out of range) or non-bijective
/// permutation. Distinct from an axiom violation.
class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation needs an extension the bundle does not carry.
class MissingExtension : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Text input rejected; `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message) :
        std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line(line)
    {
    }

    int line;
};

/// A pass code violates an occurrence invariant or a move's precondition.
class InvalidCode : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A search hit its node or time budget before finishing.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& message, std::uint64_t nodes, std::uint64_t emitted) :
        std::runtime_error(message + " (explored " + std::to_string(nodes) + " nodes, " + std::to_string(emitted)
            + " results so far)"),
        nodes_explored(nodes),
        results_so_far(emitted)
    {
    }

    std::uint64_t nodes_explored;
    std::uint64_t results_so_far;
};

} // namespace sq
