#pragma once

// Morphological form hierarchy: a tree of feature conditions used as a
// discrimination network. Leaves and pre-leaves (nodes whose children are
// all leaves) carry a rewrite rule, an allomorph feature, or an
// equivalence to another node's rule.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "morphgen/error.hpp"
#include "morphgen/featstruct.hpp"
#include "morphgen/grammar_dsl.hpp"
#include "morphgen/transform.hpp"

namespace morphgen {

inline constexpr std::string_view kRootName = "*";

struct MorphNode {
  std::string name;
  std::optional<std::string> parent;      // absent for the root
  std::optional<Condition> condition;     // absent for the root
  std::vector<std::string> children;      // declaration order
  std::optional<CompiledRule> rule;
  std::optional<std::string> allomorph_feature;
  std::optional<std::string> equivalent_to;

  bool is_leaf() const { return children.empty(); }

  friend bool operator==(const MorphNode&, const MorphNode&) = default;
};

struct HierarchyOptions {
  std::string base_feature = "stem";
};

class MorphHierarchy {
 public:
  const MorphNode& root() const { return nodes_.at(std::string(kRootName)); }

  const MorphNode* find(std::string_view name) const {
    auto it = nodes_.find(std::string(name));
    return it == nodes_.end() ? nullptr : &it->second;
  }

  const MorphNode& node(std::string_view name) const {
    if (const MorphNode* n = find(name)) return *n;
    throw Error("no node named '" + std::string(name) + "'");
  }

  bool is_pre_leaf(const MorphNode& n) const {
    return !n.is_leaf() && std::all_of(n.children.begin(), n.children.end(),
                                       [&](const std::string& c) { return node(c).is_leaf(); });
  }

  const std::map<std::string, MorphNode>& nodes() const { return nodes_; }
  const std::vector<CharClass>& classes() const { return classes_; }
  const std::string& base_feature() const { return base_feature_; }

  friend bool operator==(const MorphHierarchy&, const MorphHierarchy&) = default;

 private:
  friend MorphHierarchy build_hierarchy(std::span<const GrammarDecl>, const HierarchyOptions&);

  std::map<std::string, MorphNode> nodes_;
  std::vector<CharClass> classes_;
  std::string base_feature_ = "stem";
};

namespace detail {

inline std::string at(const SourceLoc& loc) {
  return loc.known() ? to_string(loc) + ": " : std::string();
}

}  // namespace detail

// Builds and validates the hierarchy. Every problem found is reported in
// a single GrammarError; forward references between declarations are
// allowed.
inline MorphHierarchy build_hierarchy(std::span<const GrammarDecl> decls,
                                      const HierarchyOptions& options = {}) {
  using detail::at;
  MorphHierarchy h;
  h.base_feature_ = options.base_feature;
  std::vector<std::string> errors;

  h.classes_ = default_char_classes();
  for (const auto& decl : decls)
    if (const auto* cls = std::get_if<CharClass>(&decl)) h.classes_.push_back(*cls);

  auto& nodes = h.nodes_;
  const std::string root(kRootName);
  nodes[root].name = root;

  std::vector<const MorphForm*> forms;
  for (const auto& decl : decls) {
    const auto* form = std::get_if<MorphForm>(&decl);
    if (!form) continue;
    if (nodes.count(form->name)) {
      errors.push_back(at(form->loc) + "duplicate node name '" + form->name + "'");
      continue;
    }
    MorphNode& n = nodes[form->name];
    n.name = form->name;
    n.parent = form->parent;
    n.condition = form->condition;
    forms.push_back(form);
  }
  for (const MorphForm* form : forms) {
    auto parent = nodes.find(form->parent);
    if (parent == nodes.end()) {
      errors.push_back(at(form->loc) + "node '" + form->name + "' has unknown parent '" +
                       form->parent + "'");
      nodes[form->name].parent.reset();
      continue;
    }
    parent->second.children.push_back(form->name);
  }
  // A node whose parent chain never reaches the root sits on a cycle.
  for (const MorphForm* form : forms) {
    std::set<std::string> seen;
    const MorphNode* cur = &nodes[form->name];
    while (cur->parent && !seen.count(cur->name)) {
      seen.insert(cur->name);
      cur = &nodes[*cur->parent];
    }
    if (cur->name != root && cur->parent)
      errors.push_back(at(form->loc) + "node '" + form->name +
                       "' is part of a parent cycle");
  }

  std::map<std::string, int> attachments;
  auto lookup_node = [&](const std::string& name, const SourceLoc& loc,
                         std::string_view what) -> MorphNode* {
    auto it = nodes.find(name);
    if (it == nodes.end()) {
      errors.push_back(at(loc) + std::string(what) + " names unknown node '" + name + "'");
      return nullptr;
    }
    if (name == root) {
      errors.push_back(at(loc) + "the root node cannot carry a " + std::string(what));
      return nullptr;
    }
    return &it->second;
  };

  for (const auto& decl : decls) {
    const auto* rule = std::get_if<MorphRule>(&decl);
    if (!rule) continue;
    MorphNode* n = lookup_node(rule->name, rule->loc, "morph-rule");
    if (!n) continue;
    if (n->rule) {
      errors.push_back(at(rule->loc) + "node '" + rule->name + "' already has a rule");
      continue;
    }
    try {
      n->rule = compile_rule(*rule, h.classes_);
      ++attachments[n->name];
    } catch (const ParseError& e) {
      errors.push_back(e.what());
    }
  }
  for (const auto& decl : decls) {
    const auto* allo = std::get_if<MorphAllomorph>(&decl);
    if (!allo) continue;
    MorphNode* n = lookup_node(allo->node, allo->loc, "morph-allomorph");
    if (!n) continue;
    n->allomorph_feature = allo->feature;
    ++attachments[n->name];
  }
  for (const auto& decl : decls) {
    const auto* eq = std::get_if<MorphEquivalence>(&decl);
    if (!eq) continue;
    MorphNode* source = lookup_node(eq->source, eq->loc, "morph-equivalence");
    if (!source) continue;
    if (!source->rule) {
      errors.push_back(at(eq->loc) + "equivalence source '" + eq->source +
                       "' has no rule of its own");
      continue;
    }
    for (const auto& target : eq->targets) {
      MorphNode* t = lookup_node(target, eq->loc, "morph-equivalence");
      if (!t) continue;
      if (t->equivalent_to) {
        errors.push_back(at(eq->loc) + "node '" + target + "' is already equivalenced to '" +
                         *t->equivalent_to + "'");
        continue;
      }
      t->equivalent_to = eq->source;
      ++attachments[t->name];
    }
  }

  for (const auto& [name, n] : nodes) {
    std::string where = "node '" + name + "'";
    if (attachments[name] > 1)
      errors.push_back(where + " has more than one of rule, allomorph and equivalence");
    if ((n.rule || n.equivalent_to) && !n.is_leaf() && !h.is_pre_leaf(n))
      errors.push_back(where + (n.rule ? " carries a rule" : " is equivalenced") +
                       " but is neither a leaf nor a pre-leaf; only leaf and pre-leaf "
                       "nodes may have rules attached or be equivalenced");
    if (n.equivalent_to) {
      const MorphNode& src = nodes.at(*n.equivalent_to);
      if (src.equivalent_to)
        errors.push_back(where + " is equivalenced to '" + src.name +
                         "', which is itself equivalenced; chains are not allowed");
    }
  }

  if (!errors.empty()) throw GrammarError(std::move(errors));
  return h;
}

inline MorphHierarchy build_hierarchy(const std::vector<GrammarDecl>& decls,
                                      const HierarchyOptions& options = {}) {
  return build_hierarchy(std::span<const GrammarDecl>(decls), options);
}

// Names of the nodes visited from the root down to the classified node.
// At each level the first child, in declaration order, whose condition
// holds is taken; descent stops when no child matches.
inline std::vector<std::string> classify_path(const MorphHierarchy& h,
                                              const FeatureStructure& fs) {
  std::vector<std::string> path{std::string(kRootName)};
  const MorphNode* current = &h.root();
  for (;;) {
    const MorphNode* next = nullptr;
    for (const auto& child_name : current->children) {
      const MorphNode& child = h.node(child_name);
      if (child.condition && holds(*child.condition, fs)) {
        next = &child;
        break;
      }
    }
    if (!next) break;
    path.push_back(next->name);
    current = next;
  }
  if (path.size() == 1)
    throw UnclassifiableInput("no top-level form matches " + to_text(fs));
  return path;
}

inline std::string classify(const MorphHierarchy& h, const FeatureStructure& fs) {
  return classify_path(h, fs).back();
}

// The node's own rule, else the rule of the node it is equivalenced to.
inline const CompiledRule* resolve_rule(const MorphHierarchy& h, std::string_view name) {
  const MorphNode& n = h.node(name);
  if (n.rule) return &*n.rule;
  if (n.equivalent_to) {
    const MorphNode& target = h.node(*n.equivalent_to);
    if (target.rule) return &*target.rule;
  }
  return nullptr;
}

struct GenerationOptions {
  // An identity default (classified node with nothing attached) becomes
  // an error instead of a warning.
  bool strict = false;
  std::string gen_feature = "gen";
  std::string stem_pass = "stem";
  std::string affix_pass = "psfix";
  std::function<void(const std::string&)> on_diagnostic;
};

struct PassTrace {
  enum class Action { allomorph, rule, identity };

  std::vector<std::string> path;  // root .. classified node
  std::string node;
  Action action = Action::identity;
  std::string input;
  std::string output;
  std::string allomorph_feature;  // allomorph
  bool allomorph_found = false;   // allomorph: feature present in the FS
  std::string rule_owner;         // rule: node that owns the applied rule
  std::size_t clause = 0;         // rule: index of the clause that fired
  std::string diagnostic;         // identity
};

struct GenerationTrace {
  std::vector<PassTrace> passes;
  std::string output;
};

namespace detail {

inline std::string base_value(const MorphHierarchy& h, const FeatureStructure& fs) {
  const FeatureValue* v = fs.find(h.base_feature());
  if (!v) throw Error("feature structure has no base feature '" + h.base_feature() + "'");
  if (!v->is_atom())
    throw Error("base feature '" + h.base_feature() + "' must have a string value");
  return v->atom().text;
}

}  // namespace detail

inline PassTrace trace_once(const MorphHierarchy& h, const FeatureStructure& fs,
                            const GenerationOptions& options = {}) {
  PassTrace t;
  t.input = detail::base_value(h, fs);
  t.path = classify_path(h, fs);
  t.node = t.path.back();
  const MorphNode& n = h.node(t.node);
  if (n.allomorph_feature) {
    t.action = PassTrace::Action::allomorph;
    t.allomorph_feature = *n.allomorph_feature;
    const FeatureValue* v = fs.find(*n.allomorph_feature);
    t.allomorph_found = v && v->is_atom();
    t.output = t.allomorph_found ? v->atom().text : t.input;
    return t;
  }
  if (const CompiledRule* rule = resolve_rule(h, t.node)) {
    t.action = PassTrace::Action::rule;
    t.rule_owner = rule->name;
    RewriteResult r = apply_rule(*rule, t.input);
    t.output = std::move(r.output);
    t.clause = r.clause;
    return t;
  }
  t.action = PassTrace::Action::identity;
  t.diagnostic = "node '" + t.node + "' has no rule, allomorph or equivalence; '" + t.input +
                 "' is returned unchanged";
  if (options.strict) throw NoRuleAttached(t.diagnostic);
  if (options.on_diagnostic) options.on_diagnostic(t.diagnostic);
  t.output = t.input;
  return t;
}

// One classification and rewrite, no stem-selection protocol.
inline std::string generate_once(const MorphHierarchy& h, const FeatureStructure& fs,
                                 const GenerationOptions& options = {}) {
  return trace_once(h, fs, options).output;
}

// Two passes: the stem pass selects the stem, the affix pass inflects it.
// The pass marker feature is added to copies only.
inline GenerationTrace trace_generate(const MorphHierarchy& h, const FeatureStructure& fs,
                                      const GenerationOptions& options = {}) {
  GenerationTrace trace;
  auto stem_fs = with_feature(fs, options.gen_feature, Atom::symbol(options.stem_pass));
  trace.passes.push_back(trace_once(h, stem_fs, options));

  auto affix_fs = with_feature(fs, h.base_feature(), Atom::string(trace.passes[0].output));
  affix_fs = with_feature(affix_fs, options.gen_feature, Atom::symbol(options.affix_pass));
  trace.passes.push_back(trace_once(h, affix_fs, options));

  trace.output = trace.passes.back().output;
  return trace;
}

inline std::string generate(const MorphHierarchy& h, const FeatureStructure& fs,
                            const GenerationOptions& options = {}) {
  return trace_generate(h, fs, options).output;
}

}  // namespace morphgen
