#include <gtest/gtest.h>

#include <algorithm>
#include <regex>

#include "morphgen/grammar_dsl.hpp"
#include "morphgen/transform.hpp"

using namespace morphgen;

namespace {

const char* kNounForms = R"(
(morph-form n * (cat n))
(morph-form n+sing n (number sg))
(morph-form n+plur n (number pl))
)";

template <typename T>
const T& as(const GrammarDecl& d) {
  return std::get<T>(d);
}

}  // namespace

TEST(GrammarDsl, ParsesMorphForms) {
  auto decls = parse_grammar(kNounForms);
  ASSERT_EQ(decls.size(), 3u);
  EXPECT_EQ(as<MorphForm>(decls[0]).name, "n");
  EXPECT_EQ(as<MorphForm>(decls[0]).parent, "*");
  EXPECT_EQ(as<MorphForm>(decls[0]).condition, Condition::fvp("cat", "n"));
  EXPECT_EQ(as<MorphForm>(decls[1]).name, "n+sing");
  EXPECT_EQ(as<MorphForm>(decls[1]).parent, "n");
  EXPECT_EQ(as<MorphForm>(decls[1]).condition, Condition::fvp("number", "sg"));
  EXPECT_EQ(as<MorphForm>(decls[2]).condition, Condition::fvp("number", "pl"));
  EXPECT_EQ(as<MorphForm>(decls[2]).loc.line, 4u);
}

TEST(GrammarDsl, ReprintedFormsParseAgain) {
  auto decls = parse_grammar(kNounForms);
  std::string text = print_grammar(decls);
  EXPECT_EQ(text,
            "(morph-form n * (cat n))\n"
            "(morph-form n+sing n (number sg))\n"
            "(morph-form n+plur n (number pl))\n");
  EXPECT_EQ(parse_grammar(text), decls);
}

TEST(GrammarDsl, ParsesNullTestRule) {
  auto decls = parse_grammar("(morph-rule v-psfix-perf-3-sg-f (\"\" (+s \"at\")))");
  ASSERT_EQ(decls.size(), 1u);
  const auto& rule = as<MorphRule>(decls[0]);
  EXPECT_EQ(rule.name, "v-psfix-perf-3-sg-f");
  ASSERT_EQ(rule.clauses.size(), 1u);
  EXPECT_EQ(rule.clauses[0].pattern, "");
  EXPECT_EQ(rule.clauses[0].operators, std::vector{Operator::add_suffix("at")});
}

TEST(GrammarDsl, ParsesOperatorsInOrder) {
  auto decls = parse_grammar(R"g(
    (morph-rule r
      ("0$" (rs "0" "aAtM"))
      ("^(a)(b)" (+p "Alo") (+s "uwna") (-p "x") (-s "y") (-i *2*)
                 (rp "p" "q") (ri *1* "i")))
  )g");
  const auto& rule = as<MorphRule>(decls[0]);
  ASSERT_EQ(rule.clauses.size(), 2u);
  EXPECT_EQ(rule.clauses[0].operators, std::vector{Operator::replace_suffix("0", "aAtM")});
  std::vector<Operator> expected{
      Operator::add_prefix("Alo"),     Operator::add_suffix("uwna"),
      Operator::delete_prefix("x"),    Operator::delete_suffix("y"),
      Operator::delete_group(2),       Operator::replace_prefix("p", "q"),
      Operator::replace_group(1, "i"),
  };
  EXPECT_EQ(rule.clauses[1].operators, expected);
}

TEST(GrammarDsl, ParsesAllomorphEquivalenceAndClass) {
  auto decls = parse_grammar(R"(
    (morph-allomorph n-stem-pl bpstem)
    (morph-equivalence n-psfix-sg-def--nom (n-psfix-pl-def--nom))
    (morph-class emph "SDTZ")
  )");
  ASSERT_EQ(decls.size(), 3u);
  EXPECT_EQ(as<MorphAllomorph>(decls[0]).node, "n-stem-pl");
  EXPECT_EQ(as<MorphAllomorph>(decls[0]).feature, "bpstem");
  EXPECT_EQ(as<MorphEquivalence>(decls[1]).source, "n-psfix-sg-def--nom");
  EXPECT_EQ(as<MorphEquivalence>(decls[1]).targets,
            std::vector<std::string>{"n-psfix-pl-def--nom"});
  EXPECT_EQ(as<CharClass>(decls[2]).members, (std::vector<std::string>{"S", "D", "T", "Z"}));
}

TEST(GrammarDsl, ParsesConditionCombinations) {
  auto decls = parse_grammar(R"(
    (morph-form a * (gen psfix) (number pl))
    (morph-form b * (or (case acc) (case gen)))
    (morph-form c * (not (cat v)))
    (morph-form d * ((subject agr person) 3))
  )");
  EXPECT_EQ(as<MorphForm>(decls[0]).condition,
            Condition::all({Condition::fvp("gen", "psfix"), Condition::fvp("number", "pl")}));
  EXPECT_EQ(as<MorphForm>(decls[1]).condition,
            Condition::any({Condition::fvp("case", "acc"), Condition::fvp("case", "gen")}));
  EXPECT_EQ(as<MorphForm>(decls[2]).condition, Condition::negate(Condition::fvp("cat", "v")));
  EXPECT_EQ(as<MorphForm>(decls[3]).condition,
            Condition::fvp(FeaturePath{"subject", "agr", "person"}, Atom::symbol("3")));
}

TEST(GrammarDsl, RejectsMalformedDeclarations) {
  EXPECT_THROW(parse_grammar("(morph-form x)"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-form n+plur (number pl))"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-frob x y)"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-rule r)"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-rule r (\"\"))"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-rule r ((+s \"a\")))"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-rule r (\"\" (+x \"a\")))"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-rule r (\"\" (+s)))"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-rule r (\"(a)\" (ri 1 \"i\")))"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-rule r (\"(a)\" (ri *x* \"i\")))"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-rule r (\"(a)\" (ri *0* \"i\")))"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-equivalence a ())"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-equivalence a b)"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-allomorph a)"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-class c \"\")"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-class c \"abca\")"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-form a * (not (x y) (z w)))"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-form a * (and))"), ParseError);
  EXPECT_THROW(parse_grammar("(morph-form a * (x y z))"), ParseError);
}

TEST(GrammarDsl, UnknownOperatorReportsPosition) {
  try {
    parse_grammar("(morph-rule r\n  (\"\" (zz \"a\")))");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.loc().line, 2u);
    EXPECT_NE(std::string(e.what()).find("unknown operator 'zz'"), std::string::npos);
  }
}

TEST(GrammarDsl, EveryMnemonicParses) {
  for (std::string op : {"+p", "+s", "-p", "-s", "rp", "rs"}) {
    std::string args = op[0] == 'r' ? " \"a\" \"b\"" : " \"a\"";
    EXPECT_NO_THROW(parse_grammar("(morph-rule r (\"\" (" + op + args + ")))")) << op;
  }
  EXPECT_NO_THROW(parse_grammar("(morph-rule r (\"(a)\" (-i *1*)))"));
  EXPECT_NO_THROW(parse_grammar("(morph-rule r (\"(a)\" (ri *1* \"b\")))"));
  for (std::string op : {"+i", "-x", "r", "ra", "++s", "s"})
    EXPECT_THROW(parse_grammar("(morph-rule r (\"\" (" + op + " \"a\")))"), ParseError) << op;
}

TEST(GrammarDsl, CommentsAndInterleavingAreAllowed) {
  auto decls = parse_grammar(R"(
    ; rules may precede the forms they attach to
    (morph-rule n+plur ("" (+s "s")))  ; trailing comment
    (morph-form n * (cat n))
    (morph-form n+plur n (number pl))
  )");
  EXPECT_EQ(decls.size(), 3u);
  EXPECT_TRUE(parse_grammar("; only a comment\n").empty());
}

TEST(DefaultClasses, ConsonantMembership) {
  auto classes = default_char_classes();
  auto cons = std::find_if(classes.begin(), classes.end(),
                           [](const CharClass& c) { return c.name == "cons"; });
  ASSERT_NE(cons, classes.end());
  auto has = [&](const std::string& m) {
    return std::find(cons->members.begin(), cons->members.end(), m) != cons->members.end();
  };
  EXPECT_TRUE(has("b"));
  for (std::string d : {"a", "i", "u", "F", "K", "M", "o", "G", "A", "Y"})
    EXPECT_FALSE(has(d)) << d;
  for (std::string c : {"0", "w", "y", "@", "^", "ç", "V", "v", "~", "š", "`"})
    EXPECT_TRUE(has(c)) << c;
  EXPECT_EQ(cons->members.size(), 34u);
}

TEST(DefaultClasses, ConsonantClassMatchesSingleLetters) {
  auto classes = default_char_classes();
  std::regex re(expand_classes("^%{cons}$", classes));
  EXPECT_TRUE(std::regex_search(std::string("b"), re));
  EXPECT_TRUE(std::regex_search(std::string("š"), re));
  EXPECT_TRUE(std::regex_search(std::string("^"), re));
  EXPECT_FALSE(std::regex_search(std::string("a"), re));
  EXPECT_FALSE(std::regex_search(std::string("bb"), re));
}
