#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace morphgen {

// Position in a source text, 1-based. Locations never participate in
// equality so that parsed and re-printed declarations compare equal.
struct SourceLoc {
  std::size_t line = 0;
  std::size_t column = 0;

  bool known() const { return line != 0; }
  friend bool operator==(const SourceLoc&, const SourceLoc&) { return true; }
};

inline std::string to_string(const SourceLoc& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed feature-structure, grammar, lexicon or corpus text.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourceLoc loc = {})
      : Error(loc.known() ? to_string(loc) + ": " + message : message),
        loc_(loc), detail_(message) {}

  const SourceLoc& loc() const { return loc_; }
  const std::string& detail() const { return detail_; }

 private:
  SourceLoc loc_;
  std::string detail_;
};

// A grammar that parsed but failed hierarchy validation. Carries every
// diagnostic found, not just the first.
class GrammarError : public Error {
 public:
  explicit GrammarError(std::vector<std::string> diagnostics)
      : Error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
      if (!out.empty()) out += "; ";
      out += item;
    }
    return out;
  }

  std::vector<std::string> diagnostics_;
};

class UnclassifiableInput : public Error {
 public:
  using Error::Error;
};

// Rule application failures: no clause matched, or an operator could not
// be carried out on the current string.
class RuleError : public Error {
 public:
  using Error::Error;
};

class NoClauseMatched : public RuleError {
 public:
  using RuleError::RuleError;
};

class OperatorError : public RuleError {
 public:
  using RuleError::RuleError;
};

// Strict mode only: the classified node has nothing attached.
class NoRuleAttached : public RuleError {
 public:
  using RuleError::RuleError;
};

class LexiconError : public Error {
 public:
  using Error::Error;
};

}  // namespace morphgen
