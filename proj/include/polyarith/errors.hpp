#pragma once

#include <stdexcept>
#include <string>

namespace polyarith {

/// Malformed input: bad JSON, schema violations, unknown generator names.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical precondition does not hold (singular matrix, det != +-1,
/// Jacobi violation, relator not satisfied, ...).
class PreconditionError : public std::domain_error {
public:
  explicit PreconditionError(const std::string& what)
      : std::domain_error(what) {}
};

/// An internal invariant failed. Always a bug.
class ConsistencyError : public std::logic_error {
public:
  explicit ConsistencyError(const std::string& what)
      : std::logic_error(what) {}
};

}  // namespace polyarith
