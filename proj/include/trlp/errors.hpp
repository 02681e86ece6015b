#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace trlp {

// Malformed dimensions, non-finite data, out-of-domain parameters.
using InvalidArgument = std::invalid_argument;

// Thin QR found a numerically dependent column.
class SingularFactorError : public std::runtime_error {
 public:
  SingularFactorError(std::size_t column, const std::string& what)
      : std::runtime_error(what), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

// Triangular solve hit a (near-)zero diagonal.
class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(std::size_t index, const std::string& what)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// A Newton direction was requested at a point with x or s not strictly positive.
class InteriorViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The Newton system could not be solved to the required accuracy.
class IllConditionedStepError : public std::runtime_error {
 public:
  IllConditionedStepError(std::size_t diagonal_index, const std::string& what)
      : std::runtime_error(what), diagonal_index_(diagonal_index) {}
  std::size_t diagonal_index() const noexcept { return diagonal_index_; }

 private:
  std::size_t diagonal_index_;
};

// Preprocessing found no usable constraint structure (rank 0).
class DegenerateProblemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Input uses a feature of the format that this reader deliberately rejects.
class UnsupportedFeatureError : public std::runtime_error {
 public:
  UnsupportedFeatureError(std::string feature, const std::string& what)
      : std::runtime_error(what), feature_(std::move(feature)) {}
  const std::string& feature() const noexcept { return feature_; }

 private:
  std::string feature_;
};

}  // namespace trlp
