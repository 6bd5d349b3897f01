#pragma once

// Arabic nouns: transliteration alphabet, the shipped noun grammar,
// multiple-stem lexicon, paradigm tables and the gold-corpus format.
//
// Everything operates on the ASCII-oriented transliteration: A b t # j H x
// d > r z s š S D T Z ` < f q k l m n h w y Y 0 for letters (0 is taa
// marbuta), ^ ç ~ V @ v for hamza and waSla forms, and a i u F K M o G for
// the short vowels, nunation, sukuwn and shadda.

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "morphgen/error.hpp"
#include "morphgen/featstruct.hpp"
#include "morphgen/grammar_dsl.hpp"
#include "morphgen/hierarchy.hpp"
#include "morphgen/utf8.hpp"

namespace morphgen::arabic {

struct TransliterationAlphabet {
  std::set<std::string> letters;
  std::set<std::string> diacritics;
  std::set<std::string> sun_letters;

  bool is_letter(std::string_view c) const { return letters.count(std::string(c)) > 0; }
  bool is_diacritic(std::string_view c) const { return diacritics.count(std::string(c)) > 0; }
  bool is_sun_letter(std::string_view c) const { return sun_letters.count(std::string(c)) > 0; }
  bool contains(std::string_view c) const { return is_letter(c) || is_diacritic(c); }
};

inline const TransliterationAlphabet& alphabet() {
  static const TransliterationAlphabet a = [] {
    auto to_set = [](std::string_view s) {
      auto cps = utf8::split(s);
      return std::set<std::string>(cps.begin(), cps.end());
    };
    return TransliterationAlphabet{
        to_set("Abt#jHxd>rzsšSDTZ`<fqklmnhwyY0^ç~V@v"),
        to_set("aiuFKMoG"),
        to_set("t#d>rzsšSDTZln"),
    };
  }();
  return a;
}

// Code-point positions of characters outside the alphabet.
inline std::vector<std::size_t> validate_transliteration(std::string_view s) {
  std::vector<std::size_t> bad;
  auto cps = utf8::split(s);
  for (std::size_t i = 0; i < cps.size(); ++i)
    if (!alphabet().contains(cps[i])) bad.push_back(i);
  return bad;
}

// The definite article. With assimilation, a sun letter doubles (shadda G)
// and the l of the article carries no sukuwn.
inline std::string definite_prefix(std::string_view stem, bool assimilation) {
  if (stem.empty()) throw Error("definite_prefix: empty stem");
  auto cps = utf8::split(stem);
  if (!alphabet().is_letter(cps.front()))
    throw Error("definite_prefix: '" + std::string(stem) + "' does not begin with a letter");
  if (assimilation && alphabet().is_sun_letter(cps.front()))
    return "Al" + cps.front() + "G" + std::string(stem.substr(cps.front().size()));
  return "Alo" + std::string(stem);
}

enum class Number { sg, dual, pl };
enum class Case { nom, acc, gen };
enum class Definiteness { indefinite, definite };
enum class Gender { m, f };
enum class PluralClass { uwna, aAt };

inline constexpr std::array kNumbers{Number::sg, Number::dual, Number::pl};
inline constexpr std::array kCases{Case::nom, Case::acc, Case::gen};
inline constexpr std::array kDefiniteness{Definiteness::indefinite, Definiteness::definite};

inline std::string_view to_string(Number n) {
  switch (n) {
    case Number::sg: return "sg";
    case Number::dual: return "dual";
    case Number::pl: return "pl";
  }
  return "?";
}
inline std::string_view to_string(Case c) {
  switch (c) {
    case Case::nom: return "nom";
    case Case::acc: return "acc";
    case Case::gen: return "gen";
  }
  return "?";
}
inline std::string_view to_string(Definiteness d) {
  return d == Definiteness::definite ? "+" : "-";
}
inline std::string_view to_string(Gender g) { return g == Gender::m ? "m" : "f"; }
inline std::string_view to_string(PluralClass p) {
  return p == PluralClass::uwna ? "uwna" : "aAt";
}

inline std::optional<Number> parse_number(std::string_view s) {
  for (auto n : kNumbers)
    if (to_string(n) == s) return n;
  return std::nullopt;
}
inline std::optional<Case> parse_case(std::string_view s) {
  for (auto c : kCases)
    if (to_string(c) == s) return c;
  return std::nullopt;
}
inline std::optional<Definiteness> parse_definiteness(std::string_view s) {
  for (auto d : kDefiniteness)
    if (to_string(d) == s) return d;
  return std::nullopt;
}

struct Cell {
  Number number = Number::sg;
  Case grammatical_case = Case::nom;
  Definiteness def = Definiteness::indefinite;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline std::vector<Cell> all_cells() {
  std::vector<Cell> cells;
  for (auto d : kDefiniteness)
    for (auto c : kCases)
      for (auto n : kNumbers) cells.push_back({n, c, d});
  return cells;
}

// ---------------------------------------------------------------------------
// Grammar

struct GrammarOptions {
  bool assimilation = false;  // sun-letter gemination of the article
};

namespace detail {

// Inflectional ending. When `final_old` is set, a stem ending in it has
// that ending replaced by `final_new` instead of taking `plain`.
struct Ending {
  std::string plain;
  std::string final_old;
  std::string final_new;
};

inline MorphRule affix_rule(std::string name, bool definite, const Ending& ending,
                            const GrammarOptions& options) {
  MorphRule rule{std::move(name), {}, {}};
  const bool replaces = !ending.final_old.empty();
  auto suffix_op = [&](bool final_form) {
    return final_form ? Operator::replace_suffix(ending.final_old, ending.final_new)
                      : Operator::add_suffix(ending.plain);
  };
  if (definite && options.assimilation) {
    for (const auto& sun : alphabet().sun_letters) {
      std::vector<Operator> prefix{Operator::replace_group(1, sun + "G"),
                                   Operator::add_prefix("Al")};
      if (replaces) {
        auto ops = prefix;
        ops.push_back(suffix_op(true));
        rule.clauses.push_back({"^(" + sun + ").*" + ending.final_old + "$", ops});
      }
      auto ops = prefix;
      ops.push_back(suffix_op(false));
      rule.clauses.push_back({"^(" + sun + ")", ops});
    }
  }
  std::vector<Operator> prefix;
  if (definite) prefix.push_back(Operator::add_prefix("Alo"));
  if (replaces) {
    auto ops = prefix;
    ops.push_back(suffix_op(true));
    rule.clauses.push_back({ending.final_old + "$", ops});
  }
  auto ops = prefix;
  ops.push_back(suffix_op(false));
  rule.clauses.push_back({"", ops});
  return rule;
}

class GrammarWriter {
 public:
  void comment(std::string_view text) { out_ << "\n; " << text << "\n"; }
  void form(std::string name, std::string parent, Condition cond) {
    out_ << to_text(GrammarDecl{MorphForm{std::move(name), std::move(parent), std::move(cond), {}}})
         << "\n";
  }
  void decl(const GrammarDecl& d) { out_ << to_text(d) << "\n"; }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

inline Condition feature(std::string f, std::string v) {
  return Condition::fvp(std::move(f), std::move(v));
}

}  // namespace detail

// Node-name fragment for definiteness, e.g. "def-" / "def+".
inline std::string def_tag(Definiteness d) { return "def" + std::string(to_string(d)); }

// Grammar text for Arabic noun inflection.
//
// Generation runs twice. The (gen stem) pass picks the stem: plural nouns
// reach n-stem-pl, whose allomorph returns bpstem when the lexeme has one;
// everything else keeps its stem unchanged. The (gen psfix) pass branches
// on number, definiteness and case. Sound plurals branch once more on sp;
// the plural case nodes themselves are equivalenced to the singular rules
// and serve broken plurals, and sound-plural accusatives are equivalenced
// to the genitive.
inline std::string arabic_noun_grammar(const GrammarOptions& options = {}) {
  using detail::Ending;
  using detail::feature;
  detail::GrammarWriter w;

  auto gate = [](std::string pass) {
    return Condition::all({feature("gen", std::move(pass)),
                           Condition::negate(feature("cat", "v"))});
  };
  auto rule = [&](std::string name, Definiteness d, Ending ending) {
    w.decl(detail::affix_rule(std::move(name), d == Definiteness::definite, ending, options));
  };

  w.comment("Arabic noun inflection. Generated; edit the generator, not this file.");
  w.comment(std::string("Definite article: ") +
            (options.assimilation ? "sun letters assimilate (AlrGajulu)"
                                  : "Alo before every stem (AlorajulM)"));

  w.comment("Stem selection pass");
  w.form("n-stem", "*", gate("stem"));
  w.form("n-stem-pl", "n-stem", feature("number", "pl"));
  w.decl(MorphAllomorph{"n-stem-pl", "bpstem", {}});

  w.comment("Affix pass");
  w.form("n-psfix", "*", gate("psfix"));

  // Singular: nunation when indefinite, article and short vowel when definite.
  w.comment("Singular");
  w.form("n-psfix-sg", "n-psfix", feature("number", "sg"));
  for (auto d : kDefiniteness) {
    std::string base = "n-psfix-sg-" + def_tag(d);
    w.form(base, "n-psfix-sg", feature("def", std::string(to_string(d))));
    bool definite = d == Definiteness::definite;
    const std::array<std::string, 3> endings =
        definite ? std::array<std::string, 3>{"u", "a", "i"}
                 : std::array<std::string, 3>{"M", "F", "K"};
    for (std::size_t i = 0; i < kCases.size(); ++i) {
      std::string c(to_string(kCases[i]));
      w.form(base + "-" + c, base, feature("case", c));
      rule(base + "-" + c, d, Ending{endings[i], {}, {}});
    }
  }

  // Dual: accusative and genitive share one leaf; a final 0 becomes t.
  w.comment("Dual");
  w.form("n-psfix-du", "n-psfix", feature("number", "dual"));
  for (auto d : kDefiniteness) {
    std::string base = "n-psfix-du-" + def_tag(d);
    w.form(base, "n-psfix-du", feature("def", std::string(to_string(d))));
    w.form(base + "-nom", base, feature("case", "nom"));
    rule(base + "-nom", d, Ending{"aAni", "0", "taAni"});
    w.form(base + "-accgen", base,
           Condition::any({feature("case", "acc"), feature("case", "gen")}));
    rule(base + "-accgen", d, Ending{"ayoni", "0", "tayoni"});
  }

  // Plural: case nodes are pre-leaves over the two sound classes.
  w.comment("Plural");
  w.form("n-psfix-pl", "n-psfix", feature("number", "pl"));
  for (auto d : kDefiniteness) {
    std::string base = "n-psfix-pl-" + def_tag(d);
    bool definite = d == Definiteness::definite;
    w.form(base, "n-psfix-pl", feature("def", std::string(to_string(d))));
    for (auto gc : kCases) {
      std::string c(to_string(gc));
      w.form(base + "-" + c, base, feature("case", c));
      w.form(base + "-" + c + "-uwna", base + "-" + c, feature("sp", "uwna"));
      w.form(base + "-" + c + "-aAt", base + "-" + c, feature("sp", "aAt"));
    }
    rule(base + "-nom-uwna", d, Ending{"uwna", {}, {}});
    rule(base + "-gen-uwna", d, Ending{"iyna", {}, {}});
    std::string nom = definite ? "aAtu" : "aAtM";
    std::string obl = definite ? "aAti" : "aAtK";
    // The fatHa before a final taa marbuta merges into the long aA.
    rule(base + "-nom-aAt", d, Ending{nom, "a0", nom});
    rule(base + "-gen-aAt", d, Ending{obl, "a0", obl});
  }

  w.comment("Broken plurals take the singular endings");
  for (auto d : kDefiniteness)
    for (auto gc : kCases) {
      std::string c(to_string(gc));
      w.decl(MorphEquivalence{"n-psfix-sg-" + def_tag(d) + "-" + c,
                              {"n-psfix-pl-" + def_tag(d) + "-" + c}, {}});
    }

  w.comment("Sound plurals: the accusative takes the genitive form");
  for (auto d : kDefiniteness)
    for (std::string sp : {"uwna", "aAt"}) {
      std::string base = "n-psfix-pl-" + def_tag(d);
      w.decl(MorphEquivalence{base + "-gen-" + sp, {base + "-acc-" + sp}, {}});
    }

  std::string text = w.str();
  return text.substr(text.find_first_not_of('\n'));
}

inline MorphHierarchy build_arabic_hierarchy(const GrammarOptions& options = {}) {
  return build_hierarchy(parse_grammar(arabic_noun_grammar(options)));
}

// ---------------------------------------------------------------------------
// Lexicon

struct LexiconEntry {
  std::string lemma;
  std::string stem;                   // singular and dual
  std::optional<std::string> bpstem;  // broken plural
  std::optional<PluralClass> sp;      // sound plural class
  std::string cat = "n";
  Gender gender = Gender::m;
  std::optional<std::string> gloss;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

namespace detail {

inline std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    std::size_t tab = line.find('\t', start);
    fields.emplace_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) return fields;
    start = tab + 1;
  }
}

// Calls fn(line_number, line) for each non-blank, non-comment line.
template <typename Fn>
void for_each_record(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line =
        text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    bool blank = line.find_first_not_of(" \t") == std::string_view::npos;
    if (!blank && line.front() != '#') fn(line_no, line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
}

inline std::optional<std::string> optional_field(const std::string& f) {
  if (f == "-") return std::nullopt;
  return f;
}

inline void check_transliteration(const std::string& value, std::string_view field,
                                  std::size_t line_no) {
  auto bad = validate_transliteration(value);
  if (!bad.empty())
    throw LexiconError("line " + std::to_string(line_no) + ": " + std::string(field) + " '" +
                       value + "' has a character outside the transliteration alphabet at "
                       "position " + std::to_string(bad.front()));
}

}  // namespace detail

// Tab-separated records: lemma, stem, bpstem or -, sp or -, gender, gloss
// or -. Lines starting with # are comments.
inline std::vector<LexiconEntry> load_lexicon(std::string_view text) {
  std::vector<LexiconEntry> entries;
  std::set<std::string> lemmas;
  detail::for_each_record(text, [&](std::size_t line_no, std::string_view line) {
    auto where = "line " + std::to_string(line_no) + ": ";
    auto f = detail::split_tabs(line);
    if (f.size() != 6)
      throw LexiconError(where + "expected 6 tab-separated fields, found " +
                         std::to_string(f.size()));
    LexiconEntry e;
    e.lemma = f[0];
    if (e.lemma.empty() || e.lemma == "-" ||
        e.lemma.find_first_of(" ()\"") != std::string::npos)
      throw LexiconError(where + "bad lemma '" + e.lemma + "'");
    if (!lemmas.insert(e.lemma).second)
      throw LexiconError(where + "duplicate lemma '" + e.lemma + "'");
    e.stem = f[1];
    if (e.stem.empty() || e.stem == "-") throw LexiconError(where + "missing stem");
    detail::check_transliteration(e.stem, "stem", line_no);
    e.bpstem = detail::optional_field(f[2]);
    if (e.bpstem) detail::check_transliteration(*e.bpstem, "bpstem", line_no);
    if (f[3] == "uwna") e.sp = PluralClass::uwna;
    else if (f[3] == "aAt") e.sp = PluralClass::aAt;
    else if (f[3] != "-")
      throw LexiconError(where + "sound plural class must be uwna, aAt or -, not '" + f[3] +
                         "'");
    if (e.bpstem.has_value() == e.sp.has_value())
      throw LexiconError(where + "'" + e.lemma + "' needs exactly one of a broken-plural "
                         "stem and a sound-plural class");
    if (f[4] == "m") e.gender = Gender::m;
    else if (f[4] == "f") e.gender = Gender::f;
    else throw LexiconError(where + "gender must be m or f, not '" + f[4] + "'");
    e.gloss = detail::optional_field(f[5]);
    entries.push_back(std::move(e));
  });
  return entries;
}

inline const LexiconEntry* find_entry(const std::vector<LexiconEntry>& lexicon,
                                      std::string_view lemma) {
  for (const auto& e : lexicon)
    if (e.lemma == lemma) return &e;
  return nullptr;
}

// Static features from the entry plus the requested cell.
inline FeatureStructure to_feature_structure(const LexiconEntry& e, const Cell& cell) {
  FeatureStructure::Entries fs;
  fs.push_back({"stem", Atom::string(e.stem)});
  if (e.bpstem) fs.push_back({"bpstem", Atom::string(*e.bpstem)});
  if (e.sp) fs.push_back({"sp", Atom::symbol(std::string(to_string(*e.sp)))});
  fs.push_back({"cat", Atom::symbol(e.cat)});
  fs.push_back({"gender", Atom::symbol(std::string(to_string(e.gender)))});
  fs.push_back({"number", Atom::symbol(std::string(to_string(cell.number)))});
  fs.push_back({"case", Atom::symbol(std::string(to_string(cell.grammatical_case)))});
  fs.push_back({"def", Atom::symbol(std::string(to_string(cell.def)))});
  return FeatureStructure(std::move(fs));
}

struct ParadigmTable {
  std::string lemma;
  std::map<Cell, std::string> cells;

  const std::string& at(Number n, Case c, Definiteness d) const { return cells.at({n, c, d}); }
};

inline ParadigmTable paradigm(const LexiconEntry& entry, const MorphHierarchy& h,
                              const GenerationOptions& options = {}) {
  ParadigmTable table{entry.lemma, {}};
  for (const auto& cell : all_cells())
    table.cells[cell] = generate(h, to_feature_structure(entry, cell), options);
  return table;
}

// ---------------------------------------------------------------------------
// Gold corpus: lemma, number, case, def, expected surface; tab-separated.

struct GoldRow {
  std::string lemma;
  Cell cell;
  std::string expected;
  std::size_t line = 0;
};

inline std::vector<GoldRow> load_gold_corpus(std::string_view text) {
  std::vector<GoldRow> rows;
  detail::for_each_record(text, [&](std::size_t line_no, std::string_view line) {
    auto where = "line " + std::to_string(line_no) + ": ";
    auto f = detail::split_tabs(line);
    if (f.size() != 5)
      throw ParseError(where + "expected 5 tab-separated fields, found " +
                       std::to_string(f.size()));
    auto n = parse_number(f[1]);
    auto c = parse_case(f[2]);
    auto d = parse_definiteness(f[3]);
    if (!n) throw ParseError(where + "bad number '" + f[1] + "'");
    if (!c) throw ParseError(where + "bad case '" + f[2] + "'");
    if (!d) throw ParseError(where + "bad definiteness '" + f[3] + "'");
    if (f[0].empty() || f[4].empty()) throw ParseError(where + "empty field");
    rows.push_back({f[0], {*n, *c, *d}, f[4], line_no});
  });
  return rows;
}

}  // namespace morphgen::arabic
