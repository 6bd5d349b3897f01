#pragma once

// Rewrite rules: clauses are tried in order, the first whose pattern
// matches fires, and its operators are applied left to right. Capture
// group spans come from the match against the rule's input and are
// shifted as earlier operators in the same clause edit the string.

#include <cstddef>
#include <regex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morphgen/error.hpp"
#include "morphgen/grammar_dsl.hpp"

namespace morphgen {

namespace detail {

inline bool is_regex_meta(char c) {
  return std::string_view(".^$|()[]{}*+?\\/").find(c) != std::string_view::npos;
}

inline std::string class_alternation(const CharClass& cls) {
  std::string bracket;
  std::vector<std::string> multibyte;
  for (const auto& m : cls.members) {
    if (m.size() == 1) {
      char c = m.front();
      if (c == ']' || c == '\\' || c == '^' || c == '-') bracket += '\\';
      bracket += c;
    } else {
      multibyte.push_back(m);
    }
  }
  std::string out = "(?:";
  bool first = true;
  if (!bracket.empty()) {
    out += "[" + bracket + "]";
    first = false;
  }
  for (const auto& m : multibyte) {
    if (!first) out += '|';
    first = false;
    for (char c : m) {
      if (is_regex_meta(c)) out += '\\';
      out += c;
    }
  }
  return out + ")";
}

}  // namespace detail

// Replaces every %{name} with a non-capturing alternation over the named
// class, so group numbering in the pattern is unaffected. Later classes
// with the same name shadow earlier ones.
inline std::string expand_classes(std::string_view pattern,
                                  std::span<const CharClass> classes) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size();) {
    if (pattern[i] == '%' && i + 1 < pattern.size() && pattern[i + 1] == '{') {
      std::size_t close = pattern.find('}', i + 2);
      if (close == std::string_view::npos)
        throw ParseError("unterminated %{...} in pattern \"" + std::string(pattern) + "\"");
      std::string_view name = pattern.substr(i + 2, close - i - 2);
      const CharClass* found = nullptr;
      for (const auto& cls : classes)
        if (cls.name == name) found = &cls;
      if (!found)
        throw ParseError("unknown character class '" + std::string(name) + "'");
      out += detail::class_alternation(*found);
      i = close + 1;
    } else {
      out += pattern[i++];
    }
  }
  return out;
}

struct CompiledClause {
  std::string pattern;   // as written
  std::string expanded;  // after class expansion
  std::regex regex;
  std::size_t groups = 0;
  std::vector<Operator> operators;
};

struct CompiledRule {
  std::string name;
  std::vector<CompiledClause> clauses;
};

// Structural equality: regex objects are compared through their source.
inline bool operator==(const CompiledClause& a, const CompiledClause& b) {
  return a.pattern == b.pattern && a.expanded == b.expanded && a.groups == b.groups &&
         a.operators == b.operators;
}

inline bool operator==(const CompiledRule& a, const CompiledRule& b) {
  return a.name == b.name && a.clauses == b.clauses;
}

struct RewriteResult {
  std::string output;
  std::size_t clause = 0;  // index of the clause that fired
};

// Span of a capture group in the current string. Invalid when the group
// did not participate in the match or an earlier edit overlapped it.
struct GroupSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool valid = false;
};

inline CompiledRule compile_rule(const MorphRule& decl, std::span<const CharClass> classes) {
  CompiledRule rule{decl.name, {}};
  for (std::size_t i = 0; i < decl.clauses.size(); ++i) {
    const Clause& clause = decl.clauses[i];
    auto where = [&] {
      return "rule " + decl.name + ", clause " + std::to_string(i) + ": ";
    };
    CompiledClause compiled;
    compiled.pattern = clause.pattern;
    try {
      compiled.expanded = expand_classes(clause.pattern, classes);
    } catch (const ParseError& e) {
      throw ParseError(where() + e.detail(), decl.loc);
    }
    try {
      compiled.regex = std::regex(compiled.expanded, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw ParseError(where() + "invalid pattern \"" + clause.pattern + "\": " + e.what(),
                       decl.loc);
    }
    compiled.groups = compiled.regex.mark_count();
    for (const auto& op : clause.operators) {
      if (op.uses_group() && (op.group < 1 || op.group > compiled.groups))
        throw ParseError(where() + "operator " + std::string(mnemonic(op.kind)) +
                             " refers to group *" + std::to_string(op.group) +
                             "* but the pattern has " + std::to_string(compiled.groups),
                         decl.loc);
    }
    compiled.operators = clause.operators;
    rule.clauses.push_back(std::move(compiled));
  }
  return rule;
}

namespace detail {

// Replaces current[begin, end) with text and re-bases the group spans.
// `edited` is the group whose own span is being replaced, if any.
inline std::string splice(std::string_view current, std::size_t begin, std::size_t end,
                          std::string_view text, std::span<GroupSpan> groups,
                          GroupSpan* edited = nullptr) {
  std::string out;
  out.reserve(current.size() - (end - begin) + text.size());
  out.append(current.substr(0, begin));
  out.append(text);
  out.append(current.substr(end));
  const auto removed = end - begin;
  for (auto& g : groups) {
    if (!g.valid) continue;
    if (&g == edited) {
      g.end = begin + text.size();
    } else if (g.end <= begin) {
      // before the edit
    } else if (g.begin >= end) {
      g.begin = g.begin - removed + text.size();
      g.end = g.end - removed + text.size();
    } else {
      g.valid = false;
    }
  }
  return out;
}

inline const GroupSpan& checked_group(const Operator& op, std::span<GroupSpan> groups,
                                      std::size_t length) {
  if (op.group < 1 || op.group > groups.size())
    throw OperatorError("group *" + std::to_string(op.group) + "* does not exist");
  const GroupSpan& g = groups[op.group - 1];
  if (!g.valid || g.end > length || g.begin > g.end)
    throw OperatorError("group *" + std::to_string(op.group) +
                        "* is unavailable: it did not match or an earlier operator "
                        "edited it");
  return g;
}

}  // namespace detail

// Applies one operator to `current`, updating `groups` (1-based group n is
// groups[n-1]) to track the edit.
inline std::string apply_operator(const Operator& op, std::string_view current,
                                  std::span<GroupSpan> groups) {
  const std::size_t n = current.size();
  switch (op.kind) {
    case Operator::Kind::add_prefix:
      return detail::splice(current, 0, 0, op.text, groups);
    case Operator::Kind::add_suffix:
      return detail::splice(current, n, n, op.text, groups);
    case Operator::Kind::delete_prefix:
    case Operator::Kind::replace_prefix: {
      if (!current.starts_with(op.text))
        throw OperatorError("'" + std::string(current) + "' does not begin with '" + op.text +
                            "'");
      std::string_view with =
          op.kind == Operator::Kind::replace_prefix ? std::string_view(op.replacement) : "";
      return detail::splice(current, 0, op.text.size(), with, groups);
    }
    case Operator::Kind::delete_suffix:
    case Operator::Kind::replace_suffix: {
      if (!current.ends_with(op.text))
        throw OperatorError("'" + std::string(current) + "' does not end with '" + op.text +
                            "'");
      std::string_view with =
          op.kind == Operator::Kind::replace_suffix ? std::string_view(op.replacement) : "";
      return detail::splice(current, n - op.text.size(), n, with, groups);
    }
    case Operator::Kind::delete_group:
    case Operator::Kind::replace_group: {
      const GroupSpan& g = detail::checked_group(op, groups, n);
      std::string_view with =
          op.kind == Operator::Kind::replace_group ? std::string_view(op.replacement) : "";
      return detail::splice(current, g.begin, g.end, with, groups,
                            &groups[op.group - 1]);
    }
  }
  return std::string(current);
}

inline RewriteResult apply_rule(const CompiledRule& rule, std::string_view input) {
  const std::string subject(input);
  for (std::size_t i = 0; i < rule.clauses.size(); ++i) {
    const CompiledClause& clause = rule.clauses[i];
    std::smatch match;
    if (!std::regex_search(subject, match, clause.regex)) continue;

    std::vector<GroupSpan> groups(clause.groups);
    for (std::size_t g = 1; g <= clause.groups && g < match.size(); ++g) {
      if (!match[g].matched) continue;
      auto begin = static_cast<std::size_t>(match.position(g));
      groups[g - 1] = {begin, begin + static_cast<std::size_t>(match.length(g)), true};
    }
    std::string current = subject;
    for (const auto& op : clause.operators) {
      try {
        current = apply_operator(op, current, groups);
      } catch (const OperatorError& e) {
        throw OperatorError("rule " + rule.name + ", clause " + std::to_string(i) + ", " +
                            to_text(op) + ": " + e.what());
      }
    }
    return {std::move(current), i};
  }
  throw NoClauseMatched("rule " + rule.name + ": no clause matches '" + subject + "'");
}

}  // namespace morphgen
