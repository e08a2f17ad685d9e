#pragma once

#include <stdexcept>
#include <string>

namespace reflekt {

/// Two numeric backends met in one computation.
class BackendMismatch : public std::logic_error {
 public:
  explicit BackendMismatch(const std::string& what) : std::logic_error(what) {}
};

/// Vector/matrix sizes or relation types do not line up.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Relation chain whose types (k_{i-1}, k_i) do not compose.
class TypeChainMismatch : public DimensionError {
 public:
  explicit TypeChainMismatch(const std::string& what) : DimensionError(what) {}
};

/// A parameter violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

/// An equation system (or relation body) has no solution.
class EmptyPolyhedron : public std::runtime_error {
 public:
  explicit EmptyPolyhedron(const std::string& what) : std::runtime_error(what) {}
};

/// Floating-point LP lost accuracy or hit its iteration cap. Never raised in
/// rational mode.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace reflekt
