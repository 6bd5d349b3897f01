#pragma once

// Grammar declaration language.
//
//   (morph-form <node> <parent> <condition>...)
//   (morph-rule <node> (<pattern> <operator>...)...)
//   (morph-allomorph <node> <feature>)
//   (morph-equivalence <source-node> (<target-node>...))
//   (morph-class <name> "<members>")
//
// A condition is `(feature value)`, `((f1 f2 ...) value)` for a nested
// path, or `(and c...)`, `(or c...)`, `(not c)`. Several conditions after
// the parent are conjoined. `and`, `or` and `not` are therefore reserved
// and cannot be used as feature names in conditions.
//
// Operators: (+p "x") (+s "x") (-p "x") (-s "x") (-i *n*)
//            (rp "old" "new") (rs "old" "new") (ri *n* "new")

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "morphgen/error.hpp"
#include "morphgen/featstruct.hpp"
#include "morphgen/sexpr.hpp"
#include "morphgen/utf8.hpp"

namespace morphgen {

struct Operator {
  enum class Kind {
    add_prefix,
    add_suffix,
    delete_prefix,
    delete_suffix,
    delete_group,
    replace_prefix,
    replace_suffix,
    replace_group,
  };

  Kind kind = Kind::add_suffix;
  std::string text;         // affix to add/delete, or the `old` of rp/rs
  std::string replacement;  // `new` of rp/rs/ri
  std::size_t group = 0;    // -i / ri

  static Operator add_prefix(std::string t) { return {Kind::add_prefix, std::move(t), {}, 0}; }
  static Operator add_suffix(std::string t) { return {Kind::add_suffix, std::move(t), {}, 0}; }
  static Operator delete_prefix(std::string t) { return {Kind::delete_prefix, std::move(t), {}, 0}; }
  static Operator delete_suffix(std::string t) { return {Kind::delete_suffix, std::move(t), {}, 0}; }
  static Operator delete_group(std::size_t g) { return {Kind::delete_group, {}, {}, g}; }
  static Operator replace_prefix(std::string o, std::string n) {
    return {Kind::replace_prefix, std::move(o), std::move(n), 0};
  }
  static Operator replace_suffix(std::string o, std::string n) {
    return {Kind::replace_suffix, std::move(o), std::move(n), 0};
  }
  static Operator replace_group(std::size_t g, std::string n) {
    return {Kind::replace_group, {}, std::move(n), g};
  }

  bool uses_group() const {
    return kind == Kind::delete_group || kind == Kind::replace_group;
  }

  friend bool operator==(const Operator&, const Operator&) = default;
};

inline std::string_view mnemonic(Operator::Kind kind) {
  switch (kind) {
    case Operator::Kind::add_prefix: return "+p";
    case Operator::Kind::add_suffix: return "+s";
    case Operator::Kind::delete_prefix: return "-p";
    case Operator::Kind::delete_suffix: return "-s";
    case Operator::Kind::delete_group: return "-i";
    case Operator::Kind::replace_prefix: return "rp";
    case Operator::Kind::replace_suffix: return "rs";
    case Operator::Kind::replace_group: return "ri";
  }
  return "?";
}

struct Clause {
  std::string pattern;  // regular expression, may use %{class}
  std::vector<Operator> operators;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct MorphForm {
  std::string name;
  std::string parent;
  Condition condition;
  SourceLoc loc;

  friend bool operator==(const MorphForm&, const MorphForm&) = default;
};

struct MorphRule {
  std::string name;
  std::vector<Clause> clauses;
  SourceLoc loc;

  friend bool operator==(const MorphRule&, const MorphRule&) = default;
};

struct MorphAllomorph {
  std::string node;
  std::string feature;
  SourceLoc loc;

  friend bool operator==(const MorphAllomorph&, const MorphAllomorph&) = default;
};

struct MorphEquivalence {
  std::string source;
  std::vector<std::string> targets;
  SourceLoc loc;

  friend bool operator==(const MorphEquivalence&, const MorphEquivalence&) = default;
};

// Named set of transliteration letters, each a single code point.
struct CharClass {
  std::string name;
  std::vector<std::string> members;
  SourceLoc loc;

  friend bool operator==(const CharClass&, const CharClass&) = default;
};

using GrammarDecl =
    std::variant<MorphForm, MorphRule, MorphAllomorph, MorphEquivalence, CharClass>;

inline CharClass make_char_class(std::string name, std::string_view members,
                                 SourceLoc loc = {}) {
  CharClass cls{std::move(name), utf8::split(members), loc};
  if (cls.members.empty())
    throw ParseError("character class '" + cls.name + "' has no members", loc);
  for (std::size_t i = 0; i < cls.members.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (cls.members[i] == cls.members[j])
        throw ParseError("character class '" + cls.name + "' repeats '" +
                             cls.members[i] + "'",
                         loc);
  return cls;
}

// Built-in classes. `cons` is every letter of the transliteration alphabet
// except the long-vowel carriers A and Y; hamza forms, w, y and the
// taa marbuta 0 pattern as consonants. `vowel` is the three short vowels.
inline std::vector<CharClass> default_char_classes() {
  return {
      make_char_class("cons", "bt#jHxd>rzsšSDTZ`<fqklmnhwy0^ç~V@v"),
      make_char_class("vowel", "aiu"),
  };
}

namespace detail {

inline const std::string& expect_name(const sexpr::Node& node, std::string_view what) {
  if (!node.is_symbol())
    throw ParseError(std::string(what) + " must be a bare name", node.loc);
  return node.text;
}

inline const std::string& expect_text(const sexpr::Node& node, std::string_view what) {
  if (!node.is_atom())
    throw ParseError(std::string(what) + " must be a string", node.loc);
  return node.text;
}

inline std::size_t parse_group_ref(const sexpr::Node& node) {
  const std::string& t = node.text;
  bool ok = node.is_symbol() && t.size() >= 3 && t.front() == '*' && t.back() == '*';
  std::size_t value = 0;
  for (std::size_t i = 1; ok && i + 1 < t.size(); ++i) {
    if (t[i] < '0' || t[i] > '9') ok = false;
    else value = value * 10 + static_cast<std::size_t>(t[i] - '0');
  }
  if (!ok) throw ParseError("bad group reference '" + t + "', expected *N*", node.loc);
  if (value == 0) throw ParseError("group references start at *1*", node.loc);
  return value;
}

inline Condition parse_condition(const sexpr::Node& node) {
  if (!node.is_list() || node.items.empty())
    throw ParseError("expected a condition such as (feature value)", node.loc);
  const auto& head = node.items.front();
  if (head.is_symbol("and") || head.is_symbol("or") || head.is_symbol("not")) {
    std::vector<Condition> operands;
    for (std::size_t i = 1; i < node.items.size(); ++i)
      operands.push_back(parse_condition(node.items[i]));
    if (head.text == "not") {
      if (operands.size() != 1)
        throw ParseError("(not ...) takes exactly one condition", node.loc);
      return Condition::negate(std::move(operands.front()));
    }
    if (operands.empty())
      throw ParseError("(" + head.text + " ...) needs at least one condition", node.loc);
    return head.text == "and" ? Condition::all(std::move(operands))
                              : Condition::any(std::move(operands));
  }
  if (node.items.size() != 2)
    throw ParseError("a feature test is written (feature value)", node.loc);
  FeaturePath path;
  if (head.is_list()) {
    for (const auto& step : head.items) path.push_back(expect_name(step, "feature name"));
    if (path.empty()) throw ParseError("empty feature path", head.loc);
  } else {
    path.push_back(expect_name(head, "feature name"));
  }
  const auto& value = node.items[1];
  if (!value.is_atom()) throw ParseError("feature test value must be an atom", value.loc);
  return Condition::fvp(std::move(path), value.is_string() ? Atom::string(value.text)
                                                           : Atom::symbol(value.text));
}

inline Operator parse_operator(const sexpr::Node& node) {
  if (!node.is_list() || node.items.empty() || !node.items.front().is_symbol())
    throw ParseError("expected an operator such as (+s \"x\")", node.loc);
  const std::string& op = node.items.front().text;
  auto arity = [&](std::size_t n) {
    if (node.items.size() != n + 1)
      throw ParseError("operator " + op + " takes " + std::to_string(n) +
                           (n == 1 ? " argument" : " arguments"),
                       node.loc);
  };
  const auto& args = node.items;
  if (op == "+p" || op == "+s" || op == "-p" || op == "-s") {
    arity(1);
    std::string text = expect_text(args[1], "affix");
    if (op == "+p") return Operator::add_prefix(std::move(text));
    if (op == "+s") return Operator::add_suffix(std::move(text));
    if (op == "-p") return Operator::delete_prefix(std::move(text));
    return Operator::delete_suffix(std::move(text));
  }
  if (op == "rp" || op == "rs") {
    arity(2);
    std::string old_text = expect_text(args[1], "replaced text");
    std::string new_text = expect_text(args[2], "replacement");
    return op == "rp" ? Operator::replace_prefix(std::move(old_text), std::move(new_text))
                      : Operator::replace_suffix(std::move(old_text), std::move(new_text));
  }
  if (op == "-i") {
    arity(1);
    return Operator::delete_group(parse_group_ref(args[1]));
  }
  if (op == "ri") {
    arity(2);
    return Operator::replace_group(parse_group_ref(args[1]),
                                   expect_text(args[2], "replacement"));
  }
  throw ParseError("unknown operator '" + op + "'", node.items.front().loc);
}

inline Clause parse_clause(const sexpr::Node& node) {
  if (!node.is_list() || node.items.empty())
    throw ParseError("expected a clause (\"pattern\" operator...)", node.loc);
  const auto& pattern = node.items.front();
  if (!pattern.is_string())
    throw ParseError("clause pattern must be a quoted string", pattern.loc);
  if (node.items.size() < 2)
    throw ParseError("clause has no operators", node.loc);
  Clause clause{pattern.text, {}};
  for (std::size_t i = 1; i < node.items.size(); ++i)
    clause.operators.push_back(parse_operator(node.items[i]));
  return clause;
}

inline GrammarDecl parse_decl(const sexpr::Node& node) {
  if (!node.is_list() || node.items.empty() || !node.items.front().is_symbol())
    throw ParseError("expected a declaration such as (morph-form ...)", node.loc);
  const auto& items = node.items;
  const std::string& keyword = items.front().text;
  auto need = [&](std::size_t min_items, std::string_view shape) {
    if (items.size() < min_items)
      throw ParseError("malformed " + keyword + ", expected " + std::string(shape),
                       node.loc);
  };
  if (keyword == "morph-form") {
    need(4, "(morph-form <node> <parent> <condition>...)");
    MorphForm form{expect_name(items[1], "node name"), expect_name(items[2], "parent name"),
                   {}, node.loc};
    if (items.size() == 4) {
      form.condition = parse_condition(items[3]);
    } else {
      std::vector<Condition> parts;
      for (std::size_t i = 3; i < items.size(); ++i) parts.push_back(parse_condition(items[i]));
      form.condition = Condition::all(std::move(parts));
    }
    return form;
  }
  if (keyword == "morph-rule") {
    need(3, "(morph-rule <node> (\"pattern\" operator...)...)");
    MorphRule rule{expect_name(items[1], "rule name"), {}, node.loc};
    for (std::size_t i = 2; i < items.size(); ++i) rule.clauses.push_back(parse_clause(items[i]));
    return rule;
  }
  if (keyword == "morph-allomorph") {
    need(3, "(morph-allomorph <node> <feature>)");
    if (items.size() != 3)
      throw ParseError("malformed morph-allomorph, expected (morph-allomorph <node> <feature>)",
                       node.loc);
    return MorphAllomorph{expect_name(items[1], "node name"),
                          expect_name(items[2], "feature name"), node.loc};
  }
  if (keyword == "morph-equivalence") {
    if (items.size() != 3 || !items[2].is_list())
      throw ParseError(
          "malformed morph-equivalence, expected (morph-equivalence <node> (<node>...))",
          node.loc);
    MorphEquivalence eq{expect_name(items[1], "node name"), {}, node.loc};
    for (const auto& t : items[2].items) eq.targets.push_back(expect_name(t, "node name"));
    if (eq.targets.empty())
      throw ParseError("morph-equivalence needs at least one target node", items[2].loc);
    return eq;
  }
  if (keyword == "morph-class") {
    if (items.size() != 3 || !items[2].is_string())
      throw ParseError("malformed morph-class, expected (morph-class <name> \"letters\")",
                       node.loc);
    return make_char_class(expect_name(items[1], "class name"), items[2].text, node.loc);
  }
  throw ParseError("unknown declaration '" + keyword + "'", items.front().loc);
}

}  // namespace detail

inline std::vector<GrammarDecl> parse_grammar(std::string_view text) {
  std::vector<GrammarDecl> decls;
  for (const auto& node : sexpr::read_all(text)) decls.push_back(detail::parse_decl(node));
  return decls;
}

inline SourceLoc location(const GrammarDecl& decl) {
  return std::visit([](const auto& d) { return d.loc; }, decl);
}

inline std::string to_text(const Condition& cond) {
  switch (cond.kind) {
    case Condition::Kind::fvp: {
      std::string path;
      if (cond.path.size() == 1) {
        path = cond.path.front();
      } else {
        path = "(";
        for (std::size_t i = 0; i < cond.path.size(); ++i)
          path += (i ? " " : "") + cond.path[i];
        path += ")";
      }
      return "(" + path + " " + to_text(cond.expected) + ")";
    }
    case Condition::Kind::all:
    case Condition::Kind::any: {
      std::string out = cond.kind == Condition::Kind::all ? "(and" : "(or";
      for (const auto& c : cond.operands) out += " " + to_text(c);
      return out + ")";
    }
    case Condition::Kind::negation:
      return "(not " + to_text(cond.operands.front()) + ")";
  }
  return {};
}

inline std::string to_text(const Operator& op) {
  std::string out = "(" + std::string(mnemonic(op.kind));
  auto group = [&] { return " *" + std::to_string(op.group) + "*"; };
  switch (op.kind) {
    case Operator::Kind::add_prefix:
    case Operator::Kind::add_suffix:
    case Operator::Kind::delete_prefix:
    case Operator::Kind::delete_suffix:
      out += " " + sexpr::quote(op.text);
      break;
    case Operator::Kind::replace_prefix:
    case Operator::Kind::replace_suffix:
      out += " " + sexpr::quote(op.text) + " " + sexpr::quote(op.replacement);
      break;
    case Operator::Kind::delete_group:
      out += group();
      break;
    case Operator::Kind::replace_group:
      out += group() + " " + sexpr::quote(op.replacement);
      break;
  }
  return out + ")";
}

inline std::string to_text(const GrammarDecl& decl) {
  struct Printer {
    std::string operator()(const MorphForm& f) const {
      return "(morph-form " + f.name + " " + f.parent + " " + to_text(f.condition) + ")";
    }
    std::string operator()(const MorphRule& r) const {
      std::string out = "(morph-rule " + r.name;
      for (const auto& clause : r.clauses) {
        out += "\n  (" + sexpr::quote(clause.pattern);
        for (const auto& op : clause.operators) out += " " + to_text(op);
        out += ")";
      }
      return out + ")";
    }
    std::string operator()(const MorphAllomorph& a) const {
      return "(morph-allomorph " + a.node + " " + a.feature + ")";
    }
    std::string operator()(const MorphEquivalence& e) const {
      std::string out = "(morph-equivalence " + e.source + " (";
      for (std::size_t i = 0; i < e.targets.size(); ++i) out += (i ? " " : "") + e.targets[i];
      return out + "))";
    }
    std::string operator()(const CharClass& c) const {
      std::string members;
      for (const auto& m : c.members) members += m;
      return "(morph-class " + c.name + " " + sexpr::quote(members) + ")";
    }
  };
  return std::visit(Printer{}, decl);
}

inline std::string print_grammar(const std::vector<GrammarDecl>& decls) {
  std::string out;
  for (const auto& decl : decls) out += to_text(decl) + "\n";
  return out;
}

}  // namespace morphgen
