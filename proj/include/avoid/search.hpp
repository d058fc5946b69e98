#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "avoid/matching.hpp"
#include "avoid/patterns.hpp"
#include "avoid/words.hpp"

namespace avoid {

/// Resource bounds for a search. Default-constructed = unlimited.
struct SearchBudget {
  std::optional<std::uint64_t> max_nodes;
  std::optional<double> max_seconds;

  static SearchBudget unlimited() { return {}; }
  static SearchBudget nodes(std::uint64_t n) { return {n, std::nullopt}; }
  static SearchBudget seconds(double s) { return {std::nullopt, s}; }
};

struct SearchOptions {
  /// Fix the first letter to the smallest one. Ignored in morphic mode.
  bool symmetry_break = false;
  /// Split the tree at the root, one branch per first letter.
  bool parallel = false;
  /// Deterministic seed-driven letter order; ascending order when unset.
  std::optional<std::uint64_t> seed;
};

/// Morphic-template search input: which base word, how long a prefix, and
/// the image length of each base letter.
struct MorphicSpec {
  BaseWord base = BaseWord::ThueMorse;
  int prefix_length = 1;
  std::vector<int> image_lengths;
};

struct FoundResult {
  Word word;
  std::optional<Morphism> morphism;
  std::optional<Word> final_word;
};
struct ExhaustedResult {};
struct BudgetExceededResult {
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};
/// Exhausted is reported only after the full tree was explored; a budget
/// hit never claims unavoidability.
using SearchOutcome = std::variant<FoundResult, ExhaustedResult, BudgetExceededResult>;

/// Depth-first construction of a length-`length` word over the alphabet
/// avoiding `f`. Letters are tried in ascending order; after each placement
/// only instances ending at the new position are re-checked.
SearchOutcome find_avoiding_word(Alphabet alphabet, int length, const Formula& f,
                                 const SearchBudget& budget = {},
                                 const SearchOptions& options = {});

/// Searches a template word whose segments are the images of the base
/// letters. Both the template and the image of the base prefix (the final
/// word) must avoid `f`; Found carries (template, morphism, final word).
SearchOutcome find_morphic_avoiding_word(Alphabet alphabet, const MorphicSpec& spec,
                                         const Formula& f, const SearchBudget& budget = {},
                                         const SearchOptions& options = {});

/// Incremental check the search runs after each placement: does the prefix
/// contain an instance of some pattern of `f` ending exactly at 1-based
/// position `end_pos`?
bool prefix_has_instance_ending_at(std::span<const int> prefix, int sigma, int end_pos,
                                   const Formula& f);

/// Is `final_word` the image of the length-`prefix_length` prefix of the
/// base word under some morphism whose letter images have the given lengths?
bool is_morphic_image(const Word& final_word, BaseWord base, int prefix_length,
                      std::span<const int> image_lengths);

}  // namespace avoid
