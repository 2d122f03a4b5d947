#pragma once

#include <stdexcept>
#include <string>

namespace sa {

// Base for everything thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (formula, system or derivation documents).
struct ParseError : Error {
  int line = 0, column = 0;
  ParseError(const std::string& msg, int line_ = 0, int column_ = 0)
      : Error(line_ > 0 ? msg + " (line " + std::to_string(line_) + ", column " +
                              std::to_string(column_) + ")"
                        : msg),
        line(line_),
        column(column_) {}
};

// Well-formed text that violates a signature/theory/system invariant.
struct SemanticError : Error {
  using Error::Error;
};

// A derivation failed to check; carries the offending node.
struct CheckError : Error {
  std::string node_path;
  CheckError(const std::string& msg, std::string node_path_ = "")
      : Error(node_path_.empty() ? msg : msg + " [at node " + node_path_ + "]"),
        node_path(std::move(node_path_)) {}
};

// Precondition violation or internal defect in the splitting pipeline.
struct SplitError : Error {
  using Error::Error;
};

// A derivation step with no image in the target ordinary system.
struct TranslateError : Error {
  using Error::Error;
};

// Missing distinguished structure (no +, no x, ...).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace sa
