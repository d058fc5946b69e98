#include "avoid/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "avoid/dzn_io.hpp"
#include "avoid/matching.hpp"
#include "avoid/oracle.hpp"
#include "avoid/patterns.hpp"
#include "avoid/search.hpp"
#include "avoid/words.hpp"

namespace avoid {

namespace {

constexpr int kExitFound = 0;
constexpr int kExitExhausted = 1;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 64;

Semantics parse_mode(const std::string& mode) {
  if (mode == "plain") return Semantics::PlainWithReversal;
  if (mode == "abelian") return Semantics::Abelian;
  if (mode == "perm" || mode == "permutations") return Semantics::UnderPermutations;
  throw CLI::ValidationError("--mode", "expected plain, abelian or perm");
}

BaseWord parse_base(const std::string& base) {
  if (base == "t") return BaseWord::ThueMorse;
  if (base == "h") return BaseWord::Hall;
  throw CLI::ValidationError("--base", "expected t or h");
}

Formula build_formula(const std::vector<std::string>& texts, Semantics mode) {
  std::vector<Pattern> patterns;
  patterns.reserve(texts.size());
  for (const std::string& t : texts) patterns.push_back(parse_pattern(t));
  return Formula(std::move(patterns), mode);
}

std::vector<int> parse_int_list(const std::string& csv, const char* what) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw CLI::ValidationError(what, "expected a comma-separated integer list");
    }
  }
  if (out.empty()) throw CLI::ValidationError(what, "expected a comma-separated integer list");
  return out;
}

// Flags fall back to AVOID_MAX_NODES / AVOID_MAX_SECONDS.
SearchBudget resolve_budget(std::optional<std::uint64_t> nodes, std::optional<double> seconds) {
  SearchBudget b;
  b.max_nodes = nodes;
  b.max_seconds = seconds;
  if (!b.max_nodes) {
    if (const char* env = std::getenv("AVOID_MAX_NODES")) b.max_nodes = std::strtoull(env, nullptr, 10);
  }
  if (!b.max_seconds) {
    if (const char* env = std::getenv("AVOID_MAX_SECONDS")) b.max_seconds = std::strtod(env, nullptr);
  }
  return b;
}

std::string format_word(const Word& w, const std::string& format) {
  if (format == "digits") return to_digits(w);
  return to_bracketed(w);
}

int report_outcome(const SearchOutcome& outcome, const std::string& format, bool show_morphism,
                   std::ostream& out, std::ostream& err) {
  if (const auto* found = std::get_if<FoundResult>(&outcome)) {
    const Word& result = found->final_word ? *found->final_word : found->word;
    out << format_word(result, format) << "\n";
    if (show_morphism && found->morphism) {
      err << "template: " << format_word(found->word, format) << "\n";
      for (size_t i = 0; i < found->morphism->images().size(); ++i)
        err << i << " -> " << format_word(found->morphism->images()[i], format) << "\n";
    }
    return kExitFound;
  }
  if (std::holds_alternative<ExhaustedResult>(outcome)) {
    err << "exhausted: no word satisfies the constraints\n";
    return kExitExhausted;
  }
  const auto& b = std::get<BudgetExceededResult>(outcome);
  err << "budget exceeded after " << b.nodes << " nodes, " << b.seconds << " s\n";
  return kExitBudget;
}

struct SearchFlags {
  int sigma = 0;
  std::vector<std::string> patterns;
  std::string mode = "plain";
  std::optional<std::uint64_t> max_nodes;
  std::optional<double> max_seconds;
  bool symmetry_break = false;
  bool parallel = false;
  std::optional<std::uint64_t> seed;
  std::string format = "bracketed";

  void attach(CLI::App* cmd) {
    cmd->add_option("--sigma", sigma, "alphabet size")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--pattern", patterns, "pattern text (repeatable)")->required();
    cmd->add_option("--mode", mode, "plain | abelian | perm")
        ->check(CLI::IsMember({"plain", "abelian", "perm", "permutations"}));
    cmd->add_option_function<std::uint64_t>(
        "--max-nodes", [this](const std::uint64_t& v) { max_nodes = v; }, "node budget");
    cmd->add_option_function<double>(
        "--max-seconds", [this](const double& v) { max_seconds = v; }, "time budget");
    cmd->add_flag("--symmetry-break", symmetry_break, "fix the first letter to the smallest");
    cmd->add_flag("--parallel", parallel, "split the search by first-letter branches");
    cmd->add_option_function<std::uint64_t>(
        "--seed", [this](const std::uint64_t& v) { seed = v; }, "seed-driven letter order");
    cmd->add_option("--format", format, "bracketed | digits")
        ->check(CLI::IsMember({"bracketed", "digits"}));
  }

  SearchOptions options() const { return SearchOptions{symmetry_break, parallel, seed}; }
};

int cmd_generate(const SearchFlags& flags, int length, std::ostream& out, std::ostream& err) {
  Formula f = build_formula(flags.patterns, parse_mode(flags.mode));
  SearchOutcome outcome = find_avoiding_word(Alphabet(flags.sigma), length, f,
                                             resolve_budget(flags.max_nodes, flags.max_seconds),
                                             flags.options());
  return report_outcome(outcome, flags.format, false, out, err);
}

int cmd_generate_morphic(const SearchFlags& flags, const std::string& base, int prefix,
                         const std::string& image_lengths_csv, bool show_morphism,
                         std::ostream& out, std::ostream& err) {
  Formula f = build_formula(flags.patterns, parse_mode(flags.mode));
  MorphicSpec spec;
  spec.base = parse_base(base);
  spec.prefix_length = prefix;
  spec.image_lengths = parse_int_list(image_lengths_csv, "--image-lengths");
  SearchOutcome outcome = find_morphic_avoiding_word(
      Alphabet(flags.sigma), spec, f, resolve_budget(flags.max_nodes, flags.max_seconds),
      flags.options());
  return report_outcome(outcome, flags.format, show_morphism, out, err);
}

int run_check(const std::string& word_text, int sigma, const std::vector<std::string>& patterns,
              Semantics mode, std::ostream& out) {
  Word w = parse_solution_word(word_text, sigma);
  Formula f = build_formula(patterns, mode);
  bool all_avoided = true;
  for (const Pattern& p : f.patterns()) {
    auto occ = oracle_contains_instance(w, p, mode);
    if (!occ) {
      out << "pattern " << to_text(p) << ": avoided\n";
      continue;
    }
    all_avoided = false;
    out << "pattern " << to_text(p) << ": instance at start=" << occ->start << ", lengths=[";
    for (size_t i = 0; i < occ->lengths.size(); ++i)
      out << (i ? ", " : "") << occ->lengths[i];
    out << "], images=[";
    for (size_t i = 0; i < occ->substitution.size(); ++i)
      out << (i ? ", " : "") << to_bracketed(occ->substitution[i]);
    out << "]\n";
  }
  return all_avoided ? kExitFound : kExitExhausted;
}

int cmd_check(const std::string& word, const std::vector<std::string>& rest, bool paper_args,
              int sigma, const std::vector<std::string>& patterns, const std::string& mode,
              std::ostream& out, std::ostream& err) {
  if (paper_args) {
    // solution sigma wordLength pattern1 [pattern2 ...]
    if (word.empty() || rest.size() < 3) {
      err << "usage: check --paper-args <solution> <sigma> <wordLength> <pattern>...\n";
      return kExitUsage;
    }
    const int s = std::stoi(rest[0]);
    const int word_length = std::stoi(rest[1]);
    std::vector<std::string> pats(rest.begin() + 2, rest.end());
    Word w = parse_solution_word(word, s);
    if (w.size() != word_length) {
      err << "word has " << w.size() << " letters, expected " << word_length << "\n";
      return kExitUsage;
    }
    Semantics m = Semantics::PlainWithReversal;
    for (const std::string& t : pats)
      if (parse_pattern(t).nr_perms() > 0) m = Semantics::UnderPermutations;
    return run_check(word, s, pats, m, out);
  }
  if (word.empty() || !rest.empty() || sigma < 1 || patterns.empty()) {
    err << "usage: check <word> --sigma N --pattern P...\n";
    return kExitUsage;
  }
  return run_check(word, sigma, patterns, parse_mode(mode), out);
}

int cmd_export(const std::vector<std::string>& positionals, bool paper_args,
               const std::string& output, int sigma, int length,
               const std::vector<std::string>& patterns, const std::string& mode,
               const std::string& base, int prefix, const std::string& image_lengths_csv,
               std::ostream& err) {
  std::string path = output;
  DataFileSpec spec;
  if (paper_args) {
    // t/h morphicWordLength imageLengths... sigma fileName pattern...
    if (positionals.size() < 2) {
      err << "usage: export --paper-args t|h <prefixLength> <imageLengths...> <sigma> <file> "
             "<pattern>...\n";
      return kExitUsage;
    }
    BaseWord bw = parse_base(positionals[0]);
    const int prefix_length = std::stoi(positionals[1]);
    const size_t nr_images = base_alphabet(bw).size;
    if (positionals.size() < 2 + nr_images + 2 + 1) {
      err << "export --paper-args: not enough arguments\n";
      return kExitUsage;
    }
    std::vector<int> image_lengths;
    for (size_t i = 0; i < nr_images; ++i)
      image_lengths.push_back(std::stoi(positionals[2 + i]));
    const int s = std::stoi(positionals[2 + nr_images]);
    path = positionals[3 + nr_images];
    std::vector<std::string> pats(positionals.begin() + 4 + static_cast<long>(nr_images),
                                  positionals.end());
    Semantics m = Semantics::PlainWithReversal;
    for (const std::string& t : pats)
      if (parse_pattern(t).nr_perms() > 0) m = Semantics::UnderPermutations;
    Formula f = build_formula(pats, m);
    MorphicBlock block;
    const Word base = base_prefix(bw, prefix_length);
    block.morphic_word.assign(base.letters().begin(), base.letters().end());
    block.image_lengths = image_lengths;
    int word_length = 0;
    for (int v : image_lengths) word_length += v;
    spec = make_data_file_spec(s, word_length, f, std::move(block));
  } else {
    if (!positionals.empty()) {
      err << "export takes no positional arguments without --paper-args\n";
      return kExitUsage;
    }
    Formula f = build_formula(patterns, parse_mode(mode));
    std::optional<MorphicBlock> block;
    int word_length = length;
    if (!base.empty()) {
      BaseWord bw = parse_base(base);
      MorphicBlock m;
      const Word base_word = base_prefix(bw, prefix);
      m.morphic_word.assign(base_word.letters().begin(), base_word.letters().end());
      m.image_lengths = parse_int_list(image_lengths_csv, "--image-lengths");
      word_length = 0;
      for (int v : m.image_lengths) word_length += v;
      block = std::move(m);
    }
    spec = make_data_file_spec(sigma, word_length, f, std::move(block));
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "cannot open '" << path << "' for writing\n";
    return kExitUsage;
  }
  file << write_data_file(spec);
  file.close();
  if (!file) {
    err << "write to '" << path << "' failed\n";
    return kExitUsage;
  }
  return kExitFound;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"construct, check and export words avoiding pattern formulas"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "search for an avoiding word");
  SearchFlags gen_flags;
  int gen_length = 0;
  gen_flags.attach(generate);
  generate->add_option("--length", gen_length, "word length")->required()->check(CLI::PositiveNumber);

  // generate-morphic
  auto* morphic = app.add_subcommand("generate-morphic",
                                     "search for an avoiding morphic image of t or h");
  SearchFlags mor_flags;
  std::string mor_base;
  int mor_prefix = 0;
  std::string mor_lengths;
  bool mor_show = false;
  mor_flags.attach(morphic);
  morphic->add_option("--base", mor_base, "base word: t | h")->required();
  morphic->add_option("--prefix", mor_prefix, "base prefix length")->required()
      ->check(CLI::PositiveNumber);
  morphic->add_option("--image-lengths", mor_lengths, "image length per base letter, e.g. 3,2")
      ->required();
  morphic->add_flag("--show-morphism", mor_show, "print template and images to stderr");

  // check
  auto* check = app.add_subcommand("check", "verify a word with the brute-force checker");
  std::string check_word;
  std::vector<std::string> check_rest;
  bool check_paper_args = false;
  int check_sigma = 0;
  std::vector<std::string> check_patterns;
  std::string check_mode = "plain";
  check->add_option("word", check_word, "word in the bracketed 1-based form");
  check->add_option("rest", check_rest, "positional checker arguments");
  check->add_flag("--paper-args", check_paper_args,
                  "positional form: solution sigma wordLength pattern...");
  check->add_option("--sigma", check_sigma, "alphabet size");
  check->add_option("--pattern", check_patterns, "pattern text (repeatable)");
  check->add_option("--mode", check_mode, "plain | abelian | perm")
      ->check(CLI::IsMember({"plain", "abelian", "perm", "permutations"}));

  // export
  auto* exp = app.add_subcommand("export", "write the constraint-model data file");
  std::vector<std::string> exp_positionals;
  bool exp_paper_args = false;
  std::string exp_output;
  int exp_sigma = 0;
  int exp_length = 0;
  std::vector<std::string> exp_patterns;
  std::string exp_mode = "plain";
  std::string exp_base;
  int exp_prefix = 0;
  std::string exp_lengths;
  exp->add_option("args", exp_positionals, "generator-style positional arguments");
  exp->add_flag("--paper-args", exp_paper_args,
                "positional form: t|h prefixLength imageLengths... sigma file pattern...");
  exp->add_option("--output,-o", exp_output, "output path");
  exp->add_option("--sigma", exp_sigma, "alphabet size");
  exp->add_option("--length", exp_length, "word length");
  exp->add_option("--pattern", exp_patterns, "pattern text (repeatable)");
  exp->add_option("--mode", exp_mode, "plain | abelian | perm")
      ->check(CLI::IsMember({"plain", "abelian", "perm", "permutations"}));
  exp->add_option("--base", exp_base, "base word for the morphic block: t | h");
  exp->add_option("--prefix", exp_prefix, "base prefix length");
  exp->add_option("--image-lengths", exp_lengths, "image length per base letter");

  // words
  auto* words_cmd = app.add_subcommand("words", "print a base-word prefix");
  std::string words_base;
  int words_length = -1;
  words_cmd->add_option("--base", words_base, "base word: t | h")->required();
  words_cmd->add_option("--length", words_length, "prefix length")->required()
      ->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitFound;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen_flags, gen_length, out, err);
    if (morphic->parsed())
      return cmd_generate_morphic(mor_flags, mor_base, mor_prefix, mor_lengths, mor_show, out,
                                  err);
    if (check->parsed())
      return cmd_check(check_word, check_rest, check_paper_args, check_sigma, check_patterns,
                       check_mode, out, err);
    if (exp->parsed())
      return cmd_export(exp_positionals, exp_paper_args, exp_output, exp_sigma, exp_length,
                        exp_patterns, exp_mode, exp_base, exp_prefix, exp_lengths, err);
    if (words_cmd->parsed()) {
      out << to_digits(base_prefix(parse_base(words_base), words_length)) << "\n";
      return kExitFound;
    }
  } catch (const CLI::Error& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  err << "no subcommand selected\n";
  return kExitUsage;
}

}  // namespace avoid
