#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "morphgen/commands.hpp"

using namespace morphgen;
namespace fs = std::filesystem;

namespace {

const std::string kData = MORPHGEN_DATA_DIR;
const std::string kLexicon = kData + "/lexicon.tsv";
const std::string kGold = kData + "/gold.tsv";
const std::string kArabic(cli::kBuiltinArabic);

struct Captured {
  int status;
  std::string out;
  std::string err;
};

template <typename Fn>
Captured capture(Fn&& fn) {
  std::ostringstream out, err;
  int status = fn(cli::Io{out, err});
  return {status, out.str(), err.str()};
}

// Writes `text` to a fresh file under the test temp directory.
std::string temp_file(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / "morphgen_commands_test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

// Runs the built tool through the shell; stdout is captured, stderr dropped.
Captured run_cli(const std::string& args) {
  std::string cmd = std::string("'") + MORPHGEN_CLI_PATH + "' " + args + " 2>/dev/null";
  Captured c{-1, {}, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  int raw = pclose(pipe);
  c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return c;
}

std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

const char* kRajulPlNom =
    "((stem \"rajul\") (bpstem \"rijaAl\") (cat n) (number pl) (case nom) (def -))";
const char* kMudarrisPlNomDef =
    "((stem \"mudarGis\") (sp uwna) (cat n) (number pl) (case nom) (def +))";

}  // namespace

TEST(Compile, ShippedGrammarIsValid) {
  auto r = capture([](cli::Io io) { return cli::cmd_compile(kArabic, {}, io); });
  EXPECT_EQ(r.status, cli::kOk);
  EXPECT_NE(r.out.find("41 nodes"), std::string::npos) << r.out;
  auto file = capture([](cli::Io io) {
    return cli::cmd_compile(kData + "/arabic_nouns.mfh", {}, io);
  });
  EXPECT_EQ(file.status, cli::kOk);
}

TEST(Compile, EquivalenceToInternalNodeFails) {
  std::string path = temp_file("internal.mfh", R"~(
(morph-form top * (x 1))
(morph-form mid top (y 1))
(morph-form leaf mid (z 1))
(morph-form src * (x 2))
(morph-rule src ("" (+s "s")))
(morph-equivalence src (top))
)~");
  auto r = capture([&](cli::Io io) { return cli::cmd_compile(path, {}, io); });
  EXPECT_EQ(r.status, cli::kFormatError);
  EXPECT_NE(r.err.find("only leaf and pre-leaf nodes"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find(path), std::string::npos) << r.err;
}

TEST(Compile, ParseErrorsCarryPosition) {
  std::string path = temp_file("bad.mfh", "(morph-form n * (cat n))\n(morph-form x)\n");
  auto r = capture([&](cli::Io io) { return cli::cmd_compile(path, {}, io); });
  EXPECT_EQ(r.status, cli::kFormatError);
  EXPECT_NE(r.err.find(path + ":2:"), std::string::npos) << r.err;
}

TEST(Compile, EmptyGrammarWarns) {
  std::string path = temp_file("empty.mfh", "");
  auto r = capture([&](cli::Io io) { return cli::cmd_compile(path, {}, io); });
  EXPECT_EQ(r.status, cli::kOk);
  EXPECT_NE(r.err.find("no declarations"), std::string::npos);
}

TEST(Compile, MissingFileIsFormatError) {
  auto r = capture([](cli::Io io) { return cli::cmd_compile("/no/such/file.mfh", {}, io); });
  EXPECT_EQ(r.status, cli::kFormatError);
}

TEST(Compile, AssimilationNeedsBuiltinGrammar) {
  cli::Options opts;
  opts.assimilation = true;
  auto r = capture([&](cli::Io io) {
    return cli::cmd_compile(kData + "/arabic_nouns.mfh", opts, io);
  });
  EXPECT_EQ(r.status, cli::kFormatError);
}

TEST(Gen, BrokenAndSoundPlurals) {
  auto a = capture([](cli::Io io) { return cli::cmd_gen(kArabic, kRajulPlNom, {}, io); });
  EXPECT_EQ(a.status, cli::kOk);
  EXPECT_EQ(a.out, "rijaAlM\n");
  auto b = capture([](cli::Io io) { return cli::cmd_gen(kArabic, kMudarrisPlNomDef, {}, io); });
  EXPECT_EQ(b.out, "AlomudarGisuwna\n");
}

TEST(Gen, ReadsFeatureStructureFromFile) {
  std::string path = temp_file("rajul.fs", kRajulPlNom);
  auto r = capture([&](cli::Io io) { return cli::cmd_gen(kArabic, path, {}, io); });
  EXPECT_EQ(r.status, cli::kOk);
  EXPECT_EQ(r.out, "rijaAlM\n");
}

TEST(Gen, ExitCodes) {
  auto unclassifiable =
      capture([](cli::Io io) { return cli::cmd_gen(kArabic, "((stem \"k\") (cat v))", {}, io); });
  EXPECT_EQ(unclassifiable.status, cli::kUnclassifiable);

  auto malformed = capture([](cli::Io io) { return cli::cmd_gen(kArabic, "((stem", {}, io); });
  EXPECT_EQ(malformed.status, cli::kFormatError);

  std::string g = temp_file("narrow.mfh", "(morph-form a * (x 1)) (morph-rule a (\"^k\" (+s \"a\")))");
  auto no_clause = capture([&](cli::Io io) {
    return cli::cmd_gen(g, "((stem \"b\") (x 1))", cli::Options{.once = true}, io);
  });
  EXPECT_EQ(no_clause.status, cli::kRuleFailure);
}

TEST(Gen, StrictTurnsIdentityIntoFailure) {
  std::string sg = "((stem \"rajul\") (cat n) (number sg) (case nom) (def -))";
  auto lenient = capture([&](cli::Io io) { return cli::cmd_gen(kArabic, sg, {}, io); });
  EXPECT_EQ(lenient.status, cli::kOk);
  EXPECT_EQ(lenient.out, "rajulM\n");
  EXPECT_NE(lenient.err.find("warning"), std::string::npos);

  auto strict = capture([&](cli::Io io) {
    return cli::cmd_gen(kArabic, sg, cli::Options{.strict = true}, io);
  });
  EXPECT_EQ(strict.status, cli::kRuleFailure);
}

TEST(Gen, TraceNamesRealNodes) {
  cli::Options opts;
  opts.trace = true;
  auto r = capture([&](cli::Io io) {
    return cli::cmd_gen(kArabic,
                        "((stem \"rajul\") (bpstem \"rijaAl\") (cat n) (number pl) "
                        "(case acc) (def -))",
                        opts, io);
  });
  ASSERT_EQ(r.status, cli::kOk);
  EXPECT_NE(r.out.find("pass stem:"), std::string::npos);
  EXPECT_NE(r.out.find("node n-stem-pl, allomorph bpstem: rajul -> rijaAl"), std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("node n-psfix-pl-def--acc, rule n-psfix-sg-def--acc clause 0: "
                       "rijaAl -> rijaAlF"),
            std::string::npos)
      << r.out;

  auto h = arabic::build_arabic_hierarchy();
  std::istringstream lines(r.out);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.starts_with("pass ")) continue;
    std::istringstream words(line.substr(line.find(':') + 1));
    std::string w;
    while (words >> w) {
      if (w == ">") continue;
      EXPECT_NE(h.find(w), nullptr) << w;
    }
  }
}

TEST(Gen, OnePassEnglish) {
  auto r = capture([](cli::Io io) {
    return cli::cmd_gen(kData + "/english_toy.mfh", "((stem \"apple\") (cat n) (number pl))",
                        cli::Options{.once = true}, io);
  });
  EXPECT_EQ(r.status, cli::kOk);
  EXPECT_EQ(r.out, "apples\n");
}

TEST(Paradigm, RajulTable) {
  auto r = capture([](cli::Io io) {
    return cli::cmd_paradigm(kArabic, kLexicon, "RAJUL", cli::Options{.tsv = true}, io);
  });
  ASSERT_EQ(r.status, cli::kOk);
  EXPECT_EQ(r.out,
            "def\tcase\tsg\tdual\tpl\n"
            "-\tnom\trajulM\trajulaAni\trijaAlM\n"
            "-\tacc\trajulF\trajulayoni\trijaAlF\n"
            "-\tgen\trajulK\trajulayoni\trijaAlK\n"
            "+\tnom\tAlorajulu\tAlorajulaAni\tAlorijaAlu\n"
            "+\tacc\tAlorajula\tAlorajulayoni\tAlorijaAla\n"
            "+\tgen\tAlorajuli\tAlorajulayoni\tAlorijaAli\n");
}

TEST(Paradigm, AlignedTableAndDuals) {
  auto r = capture([](cli::Io io) {
    return cli::cmd_paradigm(kArabic, kLexicon, "MUDARRISA", {}, io);
  });
  ASSERT_EQ(r.status, cli::kOk);
  EXPECT_TRUE(r.out.starts_with("MUDARRISA\n")) << r.out;
  EXPECT_NE(r.out.find("mudarGisataAni"), std::string::npos);
  EXPECT_NE(r.out.find("mudarGisatayoni"), std::string::npos);
}

TEST(Paradigm, UnknownLemma) {
  auto r = capture([](cli::Io io) {
    return cli::cmd_paradigm(kArabic, kLexicon, "NO-SUCH", {}, io);
  });
  EXPECT_EQ(r.status, cli::kLookupFailure);
}

TEST(TestCommand, ShippedCorpusPasses) {
  auto r = capture([](cli::Io io) { return cli::cmd_test(kArabic, kLexicon, kGold, {}, io); });
  EXPECT_EQ(r.status, cli::kOk) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("failed 0"), std::string::npos);
}

TEST(TestCommand, WrongExpectationIsReported) {
  std::string gold = temp_file("wrong.tsv",
                               "RAJUL\tpl\tnom\t-\trijaAlM\n"
                               "RAJUL\tpl\tacc\t-\trijaAlK\n");
  auto r = capture([&](cli::Io io) { return cli::cmd_test(kArabic, kLexicon, gold, {}, io); });
  EXPECT_NE(r.status, cli::kOk);
  EXPECT_EQ(r.status, cli::kTestFailures);
  EXPECT_NE(r.out.find("FAIL RAJUL pl acc -: expected rijaAlK, got rijaAlF"), std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("total 2, passed 1, failed 1"), std::string::npos) << r.out;
}

TEST(TestCommand, EmptyCorpus) {
  std::string gold = temp_file("empty.tsv", "# nothing here\n");
  auto r = capture([&](cli::Io io) { return cli::cmd_test(kArabic, kLexicon, gold, {}, io); });
  EXPECT_EQ(r.status, cli::kOk);
  EXPECT_NE(r.out.find("total 0"), std::string::npos);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(TestCommand, MalformedCorpus) {
  std::string gold = temp_file("malformed.tsv", "RAJUL\tpl\n");
  auto r = capture([&](cli::Io io) { return cli::cmd_test(kArabic, kLexicon, gold, {}, io); });
  EXPECT_EQ(r.status, cli::kFormatError);
}

TEST(RunReport, CountsAddUp) {
  auto h = arabic::build_arabic_hierarchy();
  auto lexicon = arabic::load_lexicon(cli::read_file(kLexicon));
  auto rows = arabic::load_gold_corpus(cli::read_file(kGold));
  rows.push_back({"GHOST", {}, "x", 0});
  auto report = cli::run_gold_corpus(h, lexicon, rows);
  EXPECT_EQ(report.total, rows.size());
  EXPECT_EQ(report.passed + report.failures.size(), report.total);
  ASSERT_EQ(report.failures.size(), 1u);
  EXPECT_EQ(report.failures[0].actual, "<unknown lemma>");
}

TEST(Binary, ExitStatusesMatchCommands) {
  EXPECT_EQ(run_cli("compile @arabic").status, 0);
  EXPECT_EQ(run_cli("gen @arabic " + shell_quote(kRajulPlNom)).out, "rijaAlM\n");
  EXPECT_EQ(run_cli("gen @arabic " + shell_quote("((stem \"k\") (cat v))")).status, 2);
  EXPECT_EQ(run_cli("gen @arabic " + shell_quote("((stem")).status, 1);
  EXPECT_EQ(run_cli("paradigm @arabic " + shell_quote(kLexicon) + " NO-SUCH").status, 4);
  EXPECT_EQ(run_cli("test @arabic " + shell_quote(kLexicon) + " " + shell_quote(kGold)).status, 0);
  std::string gold = temp_file("wrong_bin.tsv", "RAJUL\tpl\tacc\t-\trijaAlK\n");
  EXPECT_EQ(run_cli("test @arabic " + shell_quote(kLexicon) + " " + shell_quote(gold)).status, 5);
  EXPECT_NE(run_cli("no-such-command").status, 0);
}

TEST(Binary, OutputIsDeterministic) {
  std::string args = "paradigm @arabic " + shell_quote(kLexicon) + " HAYAWAAN";
  auto first = run_cli(args);
  auto second = run_cli(args);
  EXPECT_EQ(first.status, 0);
  EXPECT_EQ(first.out, second.out);
  EXPECT_FALSE(first.out.empty());
}

TEST(Binary, GrammarCommandMatchesShippedFile) {
  EXPECT_EQ(run_cli("grammar").out, cli::read_file(kData + "/arabic_nouns.mfh"));
}
