#pragma once

// Command implementations behind the morphgen tool. Each command writes to
// the given streams and returns the process exit status:
//   0 success, 1 format or I/O error, 2 unclassifiable input,
//   3 rule application failure (no clause matched, operator failed, or
//     nothing attached under --strict), 4 lookup failure,
//   5 gold-corpus mismatches (test command).
// The grammar argument is a file path, or `@arabic` for the built-in
// Arabic noun grammar.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "morphgen/arabic.hpp"
#include "morphgen/error.hpp"
#include "morphgen/featstruct.hpp"
#include "morphgen/grammar_dsl.hpp"
#include "morphgen/hierarchy.hpp"
#include "morphgen/utf8.hpp"

namespace morphgen::cli {

enum ExitCode : int {
  kOk = 0,
  kFormatError = 1,
  kUnclassifiable = 2,
  kRuleFailure = 3,
  kLookupFailure = 4,
  kTestFailures = 5,
};

inline constexpr std::string_view kBuiltinArabic = "@arabic";

struct Options {
  bool strict = false;
  bool assimilation = false;
  bool trace = false;
  bool tsv = false;
  bool once = false;  // gen: single pass, no stem-selection protocol
};

struct Io {
  std::ostream& out;
  std::ostream& err;
};

struct RunFailure {
  std::string input;
  std::string expected;
  std::string actual;
};

struct RunReport {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::vector<RunFailure> failures;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline std::string grammar_text(const std::string& source, const Options& opts) {
  if (source == kBuiltinArabic)
    return arabic::arabic_noun_grammar({opts.assimilation});
  if (opts.assimilation)
    throw Error("--assimilation only applies to the built-in grammar " +
                std::string(kBuiltinArabic));
  return read_file(source);
}

inline std::string label(const std::string& source) {
  return source == kBuiltinArabic ? std::string("<builtin arabic>") : source;
}

struct LoadedGrammar {
  std::vector<GrammarDecl> decls;
  MorphHierarchy hierarchy;
};

// Parse errors and build errors carry the grammar's name so diagnostics
// read `file:line:col: message`.
inline LoadedGrammar load_grammar(const std::string& source, const Options& opts, Io io) {
  std::string text = grammar_text(source, opts);
  LoadedGrammar g;
  try {
    g.decls = parse_grammar(text);
  } catch (const ParseError& e) {
    throw ParseError(label(source) + ":" + e.what());
  }
  if (g.decls.empty()) io.err << "warning: " << label(source) << ": no declarations\n";
  try {
    g.hierarchy = build_hierarchy(g.decls);
  } catch (const GrammarError& e) {
    std::vector<std::string> diags;
    for (const auto& d : e.diagnostics()) diags.push_back(label(source) + ":" + d);
    throw GrammarError(std::move(diags));
  }
  return g;
}

template <typename Fn>
int guarded(Io io, Fn&& fn) {
  try {
    return fn();
  } catch (const GrammarError& e) {
    for (const auto& d : e.diagnostics()) io.err << "error: " << d << "\n";
    return kFormatError;
  } catch (const UnclassifiableInput& e) {
    io.err << "error: unclassifiable input: " << e.what() << "\n";
    return kUnclassifiable;
  } catch (const RuleError& e) {
    io.err << "error: " << e.what() << "\n";
    return kRuleFailure;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << "\n";
    return kFormatError;
  }
}

inline GenerationOptions generation_options(const Options& opts, Io io, bool warn) {
  GenerationOptions g;
  g.strict = opts.strict;
  if (warn) g.on_diagnostic = [&err = io.err](const std::string& d) {
    err << "warning: " << d << "\n";
  };
  return g;
}

inline void print_pass(std::ostream& out, const PassTrace& p, std::string_view pass) {
  out << "pass " << pass << ":";
  for (std::size_t i = 0; i < p.path.size(); ++i) out << (i ? " > " : " ") << p.path[i];
  out << "\n  node " << p.node << ", ";
  switch (p.action) {
    case PassTrace::Action::allomorph:
      out << "allomorph " << p.allomorph_feature << (p.allomorph_found ? "" : " (absent)");
      break;
    case PassTrace::Action::rule:
      out << "rule " << p.rule_owner << " clause " << p.clause;
      break;
    case PassTrace::Action::identity:
      out << "identity";
      break;
  }
  out << ": " << p.input << " -> " << p.output << "\n";
}

inline std::string pad(const std::string& s, std::size_t width) {
  std::size_t len = utf8::length(s);
  return s + std::string(width > len ? width - len : 0, ' ');
}

}  // namespace detail

inline int cmd_compile(const std::string& grammar, const Options& opts, Io io) {
  return detail::guarded(io, [&] {
    auto g = detail::load_grammar(grammar, opts, io);
    io.out << detail::label(grammar) << ": " << g.decls.size() << " declarations, "
           << g.hierarchy.nodes().size() << " nodes\n";
    return int(kOk);
  });
}

inline int cmd_grammar(const Options& opts, Io io) {
  return detail::guarded(io, [&] {
    io.out << arabic::arabic_noun_grammar({opts.assimilation});
    return int(kOk);
  });
}

// `fs` is inline feature-structure text when it starts with '(', else the
// path of a file holding one.
inline int cmd_gen(const std::string& grammar, const std::string& fs, const Options& opts,
                   Io io) {
  return detail::guarded(io, [&] {
    auto g = detail::load_grammar(grammar, opts, io);
    auto first = fs.find_first_not_of(" \t\r\n");
    std::string text = first != std::string::npos && fs[first] == '(' ? fs : read_file(fs);
    FeatureStructure input = parse_feature_structure(text);
    auto gen_opts = detail::generation_options(opts, io, true);
    GenerationTrace trace;
    if (opts.once) {
      trace.passes.push_back(trace_once(g.hierarchy, input, gen_opts));
      trace.output = trace.passes.back().output;
    } else {
      trace = trace_generate(g.hierarchy, input, gen_opts);
    }
    if (opts.trace) {
      if (opts.once) {
        detail::print_pass(io.out, trace.passes[0], "1");
      } else {
        detail::print_pass(io.out, trace.passes[0], gen_opts.stem_pass);
        detail::print_pass(io.out, trace.passes[1], gen_opts.affix_pass);
      }
    }
    io.out << trace.output << "\n";
    return int(kOk);
  });
}

inline void print_paradigm(std::ostream& out, const arabic::ParadigmTable& table, bool tsv) {
  using namespace arabic;
  std::vector<std::vector<std::string>> rows{{"def", "case", "sg", "dual", "pl"}};
  for (auto d : kDefiniteness)
    for (auto c : kCases) {
      std::vector<std::string> row{std::string(to_string(d)), std::string(to_string(c))};
      for (auto n : kNumbers) row.push_back(table.at(n, c, d));
      rows.push_back(std::move(row));
    }
  if (tsv) {
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
      out << "\n";
    }
    return;
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i)
      width[i] = std::max(width[i], utf8::length(row[i]));
  out << table.lemma << "\n";
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i)
      line += i + 1 < row.size() ? detail::pad(row[i], width[i] + 2) : row[i];
    out << line << "\n";
  }
}

inline int cmd_paradigm(const std::string& grammar, const std::string& lexicon_path,
                        const std::string& lemma, const Options& opts, Io io) {
  return detail::guarded(io, [&] {
    auto g = detail::load_grammar(grammar, opts, io);
    auto lexicon = arabic::load_lexicon(read_file(lexicon_path));
    const auto* entry = arabic::find_entry(lexicon, lemma);
    if (!entry) {
      io.err << "error: lemma '" << lemma << "' is not in " << lexicon_path << "\n";
      return int(kLookupFailure);
    }
    auto table = arabic::paradigm(*entry, g.hierarchy,
                                  detail::generation_options(opts, io, false));
    print_paradigm(io.out, table, opts.tsv);
    return int(kOk);
  });
}

inline RunReport run_gold_corpus(const MorphHierarchy& h,
                                 const std::vector<arabic::LexiconEntry>& lexicon,
                                 const std::vector<arabic::GoldRow>& rows,
                                 const GenerationOptions& options = {}) {
  RunReport report;
  for (const auto& row : rows) {
    ++report.total;
    std::string input = row.lemma + " " + std::string(arabic::to_string(row.cell.number)) + " " +
                        std::string(arabic::to_string(row.cell.grammatical_case)) + " " +
                        std::string(arabic::to_string(row.cell.def));
    std::string actual;
    const auto* entry = arabic::find_entry(lexicon, row.lemma);
    if (!entry) {
      actual = "<unknown lemma>";
    } else {
      try {
        actual = generate(h, arabic::to_feature_structure(*entry, row.cell), options);
      } catch (const Error& e) {
        actual = std::string("<error: ") + e.what() + ">";
      }
    }
    if (actual == row.expected)
      ++report.passed;
    else
      report.failures.push_back({std::move(input), row.expected, std::move(actual)});
  }
  return report;
}

inline int cmd_test(const std::string& grammar, const std::string& lexicon_path,
                    const std::string& gold_path, const Options& opts, Io io) {
  return detail::guarded(io, [&] {
    auto g = detail::load_grammar(grammar, opts, io);
    auto lexicon = arabic::load_lexicon(read_file(lexicon_path));
    auto rows = arabic::load_gold_corpus(read_file(gold_path));
    if (rows.empty()) io.err << "warning: " << gold_path << ": corpus has no rows\n";
    auto report =
        run_gold_corpus(g.hierarchy, lexicon, rows, detail::generation_options(opts, io, false));
    for (const auto& f : report.failures)
      io.out << "FAIL " << f.input << ": expected " << f.expected << ", got " << f.actual
             << "\n";
    io.out << "total " << report.total << ", passed " << report.passed << ", failed "
           << report.failures.size() << "\n";
    return report.failures.empty() ? int(kOk) : int(kTestFailures);
  });
}

}  // namespace morphgen::cli
