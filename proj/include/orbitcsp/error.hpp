#pragma once

#include <stdexcept>
#include <string>

namespace orbitcsp {

/// Malformed input: bad files, unknown names, shape or signature mismatches.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exhaustive search refused to start or a stabilization guard fired.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orbitcsp
