#pragma once

#include <stdexcept>
#include <string>

namespace modcomp {

/// Malformed or out-of-contract input (invalid graph, unknown encoding, bad
/// vertex index, ...). Maps to a validation failure at the CLI level.
class rejected_input : public std::invalid_argument {
 public:
  explicit rejected_input(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation was refused because 3g-3+n (or a search) exceeds the
/// configured budget.
class budget_exceeded : public std::runtime_error {
 public:
  explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A result contradicts an invariant the library itself guarantees.
class internal_consistency_error : public std::logic_error {
 public:
  explicit internal_consistency_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace modcomp
