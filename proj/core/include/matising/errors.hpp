#pragma once

#include <stdexcept>
#include <string>

namespace matising {

/// Input exceeded a documented size limit (ground set, cycle count, ...).
class SizeLimitError : public std::runtime_error {
 public:
  explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed instance or certificate text.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// No decomposition found, or a supplied certificate failed validation.
class DecompositionError : public std::runtime_error {
 public:
  explicit DecompositionError(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical precondition failed (infeasible signature, bad weights, ...).
class ConstraintError : public std::runtime_error {
 public:
  explicit ConstraintError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace matising
