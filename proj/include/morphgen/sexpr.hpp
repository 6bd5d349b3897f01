#pragma once

// Minimal s-expression reader shared by the feature-structure format and
// the grammar language. Symbols, double-quoted strings and lists only;
// `;` starts a comment that runs to the end of the line.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "morphgen/error.hpp"

namespace morphgen::sexpr {

struct Node {
  enum class Kind { symbol, string, list };

  Kind kind = Kind::list;
  std::string text;         // symbol or string contents
  std::vector<Node> items;  // list elements
  SourceLoc loc;

  bool is_symbol() const { return kind == Kind::symbol; }
  bool is_string() const { return kind == Kind::string; }
  bool is_atom() const { return kind != Kind::list; }
  bool is_list() const { return kind == Kind::list; }
  bool is_symbol(std::string_view s) const { return is_symbol() && text == s; }
};

inline bool is_delimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
         c == '"' || c == ';';
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<Node> read_all() {
    std::vector<Node> out;
    skip_blank();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip_blank();
    }
    return out;
  }

 private:
  SourceLoc here() const { return {line_, pos_ - line_start_ + 1}; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      line_start_ = pos_;
    }
    return c;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Node read() {
    Node node;
    node.loc = here();
    char c = text_[pos_];
    if (c == ')') throw ParseError("unbalanced ')'", node.loc);
    if (c == '(') {
      advance();
      node.kind = Node::Kind::list;
      for (;;) {
        skip_blank();
        if (pos_ >= text_.size())
          throw ParseError("unbalanced '(': list never closed", node.loc);
        if (text_[pos_] == ')') {
          advance();
          return node;
        }
        node.items.push_back(read());
      }
    }
    if (c == '"') {
      advance();
      node.kind = Node::Kind::string;
      for (;;) {
        if (pos_ >= text_.size())
          throw ParseError("unterminated string", node.loc);
        char ch = advance();
        if (ch == '"') return node;
        // Only \" and \\ are escapes; any other backslash is kept so that
        // regular-expression escapes survive unchanged.
        if (ch == '\\' && pos_ < text_.size() &&
            (text_[pos_] == '"' || text_[pos_] == '\\')) {
          node.text += advance();
        } else {
          node.text += ch;
        }
      }
    }
    node.kind = Node::Kind::symbol;
    while (pos_ < text_.size() && !is_delimiter(text_[pos_]))
      node.text += advance();
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

inline std::vector<Node> read_all(std::string_view text) {
  return Reader(text).read_all();
}

inline std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

// True when text can be written as a bare symbol and read back unchanged.
inline bool is_bare_symbol(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text)
    if (is_delimiter(c)) return false;
  return true;
}

}  // namespace morphgen::sexpr
