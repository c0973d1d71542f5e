#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hotrank {

using VertexId = std::uint64_t;

// Dense per-graph index assigned when a vertex first appears. Slots are never
// reused or removed, so a slot identifies the same vertex for the lifetime of
// a graph.
using Slot = std::uint32_t;

struct Edge {
    VertexId source;
    VertexId target;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number where parsing failed.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Parameters that cannot be satisfied (stream shape, RBO depth, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Inputs that violate a cross-structure invariant (missing scores, duplicate ids).
class IntegrityError : public Error {
public:
    using Error::Error;
};

} // namespace hotrank
