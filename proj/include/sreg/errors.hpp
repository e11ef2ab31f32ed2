#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sreg {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Mismatched dimensions or point counts between interacting objects.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

// An operation that requires at least one point received none.
class EmptyInputError : public Error {
public:
    explicit EmptyInputError(const std::string& what) : Error(what) {}
};

// A constructed value violates its type invariants (non-positive scale,
// non-orthonormal rotation, bad config ranges, ...).
class InvalidValueError : public Error {
public:
    explicit InvalidValueError(const std::string& what) : Error(what) {}
};

// The scale estimate's denominator collapsed: the current rotation
// anti-correlates the point sets or the geometry is degenerate.  Solvers
// abort the run and attach the iteration they were in.
class DegenerateScaleError : public Error {
public:
    DegenerateScaleError(const std::string& what, std::size_t iteration = 0)
        : Error(what), iteration(iteration) {}
    std::size_t iteration;
};

// A shape has zero spread, so no scale can be estimated from it.
class DegenerateShapeError : public Error {
public:
    explicit DegenerateShapeError(const std::string& what) : Error(what) {}
};

// Malformed input file.  byte_offset points at (or near) the offending byte.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t byte_offset)
        : Error(what + " (at byte " + std::to_string(byte_offset) + ")"),
          byte_offset(byte_offset) {}
    std::size_t byte_offset;
};

// A grid has no occupied cell bordering free space, so there is nothing to
// register.
class EmptyEdgeError : public Error {
public:
    explicit EmptyEdgeError(const std::string& what) : Error(what) {}
};

}  // namespace sreg
