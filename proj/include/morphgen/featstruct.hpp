#pragma once

// Feature structures: ordered, possibly nested feature/value maps that
// describe the word form to generate, plus the boolean conditions the
// form hierarchy tests them with.
//
// Text format:
//   ((stem "mudarGisa0") (cat n) (agr ((number sg) (person 3))))
// Strings are double-quoted, atoms are bare symbols, a parenthesised list
// of pairs in value position is a nested structure.

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "morphgen/error.hpp"
#include "morphgen/sexpr.hpp"

namespace morphgen {

// An atomic value. `quoted` records how it was written; matching against
// conditions only looks at the characters.
struct Atom {
  std::string text;
  bool quoted = false;

  static Atom symbol(std::string text) { return {std::move(text), false}; }
  static Atom string(std::string text) { return {std::move(text), true}; }

  bool same_content(const Atom& other) const { return text == other.text; }
  friend bool operator==(const Atom&, const Atom&) = default;
};

class FeatureValue;
struct FeatureEntry;

class FeatureStructure {
 public:
  using Entries = std::vector<FeatureEntry>;

  FeatureStructure() = default;
  // Throws ParseError on an empty or duplicated feature name.
  explicit FeatureStructure(Entries entries);

  const Entries& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  const FeatureValue* find(std::string_view feature) const;

  friend bool operator==(const FeatureStructure& a, const FeatureStructure& b);

 private:
  Entries entries_;
};

class FeatureValue {
 public:
  FeatureValue(Atom atom) : value_(std::move(atom)) {}
  FeatureValue(FeatureStructure nested) : value_(std::move(nested)) {}

  bool is_atom() const { return std::holds_alternative<Atom>(value_); }
  bool is_nested() const { return !is_atom(); }
  const Atom& atom() const { return std::get<Atom>(value_); }
  const FeatureStructure& nested() const {
    return std::get<FeatureStructure>(value_);
  }

  friend bool operator==(const FeatureValue&, const FeatureValue&) = default;

 private:
  std::variant<Atom, FeatureStructure> value_;
};

struct FeatureEntry {
  std::string name;
  FeatureValue value;

  friend bool operator==(const FeatureEntry&, const FeatureEntry&) = default;
};

inline FeatureStructure::FeatureStructure(Entries entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name.empty()) throw ParseError("empty feature name");
    for (std::size_t j = 0; j < i; ++j)
      if (entries_[j].name == entries_[i].name)
        throw ParseError("duplicate feature '" + entries_[i].name + "'");
  }
}

inline const FeatureValue* FeatureStructure::find(std::string_view feature) const {
  for (const auto& entry : entries_)
    if (entry.name == feature) return &entry.value;
  return nullptr;
}

inline bool operator==(const FeatureStructure& a, const FeatureStructure& b) {
  return a.entries_ == b.entries_;
}

using FeaturePath = std::vector<std::string>;

// Follows path through nested structures. Null when any step is missing or
// lands on an atom before the path is exhausted.
inline const FeatureValue* lookup(const FeatureStructure& fs,
                                  std::span<const std::string> path) {
  const FeatureStructure* current = &fs;
  const FeatureValue* value = nullptr;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!current) return nullptr;
    value = current->find(path[i]);
    if (!value) return nullptr;
    current = value->is_nested() ? &value->nested() : nullptr;
  }
  return value;
}

inline const FeatureValue* lookup(const FeatureStructure& fs,
                                  std::initializer_list<std::string> path) {
  return lookup(fs, std::span<const std::string>(path.begin(), path.size()));
}

// Copy of fs with a top-level feature set. An existing feature keeps its
// position; a new one is appended.
inline FeatureStructure with_feature(const FeatureStructure& fs,
                                     std::string_view feature,
                                     FeatureValue value) {
  auto entries = fs.entries();
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const FeatureEntry& e) { return e.name == feature; });
  if (it != entries.end())
    it->value = std::move(value);
  else
    entries.push_back({std::string(feature), std::move(value)});
  return FeatureStructure(std::move(entries));
}

namespace detail {

inline FeatureStructure fs_from_node(const sexpr::Node& node);

inline FeatureValue value_from_node(const sexpr::Node& node) {
  switch (node.kind) {
    case sexpr::Node::Kind::symbol:
      return Atom::symbol(node.text);
    case sexpr::Node::Kind::string:
      return Atom::string(node.text);
    case sexpr::Node::Kind::list:
      break;
  }
  return fs_from_node(node);
}

inline FeatureStructure fs_from_node(const sexpr::Node& node) {
  if (!node.is_list())
    throw ParseError("expected a parenthesised feature structure", node.loc);
  FeatureStructure::Entries entries;
  for (const auto& pair : node.items) {
    if (!pair.is_list() || pair.items.size() != 2)
      throw ParseError("expected a (feature value) pair", pair.loc);
    const auto& name = pair.items[0];
    if (!name.is_symbol() || name.text.empty())
      throw ParseError("feature name must be a non-empty symbol", name.loc);
    for (const auto& seen : entries)
      if (seen.name == name.text)
        throw ParseError("duplicate feature '" + name.text + "'", name.loc);
    entries.push_back({name.text, value_from_node(pair.items[1])});
  }
  return FeatureStructure(std::move(entries));
}

}  // namespace detail

inline FeatureStructure parse_feature_structure(std::string_view text) {
  auto nodes = sexpr::read_all(text);
  if (nodes.empty()) throw ParseError("no feature structure in input");
  if (nodes.size() > 1)
    throw ParseError("trailing input after feature structure", nodes[1].loc);
  return detail::fs_from_node(nodes.front());
}

inline std::string to_text(const FeatureStructure& fs);

inline std::string to_text(const Atom& atom) {
  return atom.quoted ? sexpr::quote(atom.text) : atom.text;
}

inline std::string to_text(const FeatureValue& value) {
  return value.is_atom() ? to_text(value.atom()) : to_text(value.nested());
}

// Canonical form: single spaces, no comments.
inline std::string to_text(const FeatureStructure& fs) {
  std::string out = "(";
  bool first = true;
  for (const auto& entry : fs.entries()) {
    if (!first) out += ' ';
    first = false;
    out += '(' + entry.name + ' ' + to_text(entry.value) + ')';
  }
  out += ')';
  return out;
}

// Boolean combination of feature/value tests.
struct Condition {
  enum class Kind { fvp, all, any, negation };

  Kind kind = Kind::fvp;
  FeaturePath path;               // fvp
  Atom expected;                  // fvp
  std::vector<Condition> operands;  // all / any / negation (exactly one)

  static Condition fvp(FeaturePath path, Atom expected) {
    Condition c;
    c.path = std::move(path);
    c.expected = std::move(expected);
    return c;
  }
  static Condition fvp(std::string feature, std::string value) {
    return fvp(FeaturePath{std::move(feature)}, Atom::symbol(std::move(value)));
  }
  static Condition all(std::vector<Condition> operands) {
    return combine(Kind::all, std::move(operands));
  }
  static Condition any(std::vector<Condition> operands) {
    return combine(Kind::any, std::move(operands));
  }
  static Condition negate(Condition operand) {
    Condition c;
    c.kind = Kind::negation;
    c.operands.push_back(std::move(operand));
    return c;
  }

  friend bool operator==(const Condition&, const Condition&) = default;

 private:
  static Condition combine(Kind kind, std::vector<Condition> operands) {
    if (operands.empty())
      throw ParseError("and/or condition needs at least one operand");
    Condition c;
    c.kind = kind;
    c.operands = std::move(operands);
    return c;
  }
};

inline bool holds(const Condition& cond, const FeatureStructure& fs) {
  switch (cond.kind) {
    case Condition::Kind::fvp: {
      const FeatureValue* v = lookup(fs, cond.path);
      return v && v->is_atom() && v->atom().same_content(cond.expected);
    }
    case Condition::Kind::all:
      return std::all_of(cond.operands.begin(), cond.operands.end(),
                         [&](const Condition& c) { return holds(c, fs); });
    case Condition::Kind::any:
      return std::any_of(cond.operands.begin(), cond.operands.end(),
                         [&](const Condition& c) { return holds(c, fs); });
    case Condition::Kind::negation:
      return !holds(cond.operands.front(), fs);
  }
  return false;
}

}  // namespace morphgen
