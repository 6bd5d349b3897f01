// morphgen: compile grammars, generate word forms, print paradigms and
// run gold-corpus regressions. See include/morphgen/commands.hpp for exit
// codes.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "morphgen/commands.hpp"

int main(int argc, char** argv) {
  using namespace morphgen::cli;

  CLI::App app{"Morphological rule compiler and word-form generator"};
  app.require_subcommand(1);

  Options opts;
  std::string grammar, fs, lexicon, lemma, gold;
  const std::string grammar_help = "grammar file, or @arabic for the built-in noun grammar";

  auto* compile = app.add_subcommand("compile", "Parse and validate a grammar");
  compile->add_option("grammar", grammar, grammar_help)->required();
  compile->add_flag("--assimilation", opts.assimilation, "Sun-letter assimilation (@arabic)");

  auto* gen = app.add_subcommand("gen", "Generate the surface form for a feature structure");
  gen->add_option("grammar", grammar, grammar_help)->required();
  gen->add_option("fs", fs, "Feature structure text, or a file containing one")->required();
  gen->add_flag("--trace", opts.trace, "Print the classified node and rule of each pass");
  gen->add_flag("--once", opts.once, "Single pass, without stem selection");
  gen->add_flag("--strict", opts.strict, "Fail when a node has nothing attached");
  gen->add_flag("--assimilation", opts.assimilation, "Sun-letter assimilation (@arabic)");

  auto* para = app.add_subcommand("paradigm", "Print the 18-cell paradigm of a lemma");
  para->add_option("grammar", grammar, grammar_help)->required();
  para->add_option("lexicon", lexicon, "Lexicon file")->required();
  para->add_option("lemma", lemma, "Lemma to inflect")->required();
  para->add_flag("--tsv", opts.tsv, "Tab-separated output");
  para->add_flag("--strict", opts.strict, "Fail when a node has nothing attached");
  para->add_flag("--assimilation", opts.assimilation, "Sun-letter assimilation (@arabic)");

  auto* test = app.add_subcommand("test", "Check a gold corpus against generated forms");
  test->add_option("grammar", grammar, grammar_help)->required();
  test->add_option("lexicon", lexicon, "Lexicon file")->required();
  test->add_option("gold", gold, "Gold corpus file")->required();
  test->add_flag("--strict", opts.strict, "Fail when a node has nothing attached");
  test->add_flag("--assimilation", opts.assimilation, "Sun-letter assimilation (@arabic)");

  auto* dump = app.add_subcommand("grammar", "Print the built-in Arabic noun grammar");
  dump->add_flag("--assimilation", opts.assimilation, "Sun-letter assimilation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kFormatError;
  }

  Io io{std::cout, std::cerr};
  if (*compile) return cmd_compile(grammar, opts, io);
  if (*gen) return cmd_gen(grammar, fs, opts, io);
  if (*para) return cmd_paradigm(grammar, lexicon, lemma, opts, io);
  if (*test) return cmd_test(grammar, lexicon, gold, opts, io);
  return cmd_grammar(opts, io);
}
