#pragma once

#include <stdexcept>
#include <string>

namespace blocklab {

/// Base class for all blocklab errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A precondition on mathematical input was violated (g not in G, H not a
/// subgroup, N not normal, ...). Names the violated constraint.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// A configured cap (element count, quotient degree, class count, module
/// size) was exceeded. The message states the cap.
class ResourceError : public Error {
public:
  explicit ResourceError(const std::string& msg) : Error(msg) {}
};

/// Input text could not be parsed.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// A cross-checked mathematical identity failed. Never silently resolved.
class ConsistencyError : public Error {
public:
  explicit ConsistencyError(const std::string& msg) : Error(msg) {}
};

/// An internal assumption broke; indicates a bug, not bad input.
class InternalError : public Error {
public:
  explicit InternalError(const std::string& msg) : Error(msg) {}
};

} // namespace blocklab
