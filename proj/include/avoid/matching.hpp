#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "avoid/patterns.hpp"
#include "avoid/words.hpp"

namespace avoid {

/// One assignment of image lengths to all variables of a pattern, packed
/// into a single integer `label` in 1..word_length^nr_vars.
struct LengthAssignment {
  std::int64_t label = 1;
  int word_length = 1;
  int nr_vars = 1;
};

/// Image length of variable `var_idx` (1-based) under the assignment:
/// ceil(label / word_length^(nr_vars - var_idx)) mod word_length, with a
/// result of 0 standing for word_length itself.
int var_length(int var_idx, const LengthAssignment& a);

/// All variable lengths of the assignment, in variable order.
std::vector<int> decode_lengths(const LengthAssignment& a);

/// Image table of a letter permutation on 0..sigma-1.
using LetterPermutation = std::vector<int>;
/// One letter permutation per function variable of a pattern.
using PermAssignment = std::vector<LetterPermutation>;

/// Witness that a pattern instance occurs in a word. `start` is 1-based;
/// `substitution` holds the base image of each variable (function
/// applications undone), so applying each item's function and reversal to
/// its variable's base image and concatenating reproduces the matched
/// factor (up to letter counts in the abelian case).
struct Occurrence {
  int start = 1;
  std::vector<int> lengths;
  std::vector<Word> substitution;
  std::optional<PermAssignment> perm_assignment;
};

int image_length(const Pattern& p, const LengthAssignment& a);
int image_length(const Pattern& p, std::span<const int> lengths);

/// Offset of item `item_index` (0-based) within the pattern's image: the
/// sum of the variable lengths of all earlier items.
int item_offset(const Pattern& p, int item_index, const LengthAssignment& a);
int item_offset(const Pattern& p, int item_index, std::span<const int> lengths);

/// Does an instance of `p` with the given variable lengths occur in `w` at
/// 1-based position `start`? The image must fit: start + image length - 1
/// <= |w|. In permutation mode a full PermAssignment is required whenever
/// the pattern has function variables.
bool matches_at(const Word& w, int start, const Pattern& p, const LengthAssignment& a,
                Semantics mode, const PermAssignment* perm = nullptr);
bool matches_at(const Word& w, int start, const Pattern& p, std::span<const int> lengths,
                Semantics mode, const PermAssignment* perm = nullptr);
bool matches_at(std::span<const int> letters, int sigma, int start, const Pattern& p,
                std::span<const int> lengths, Semantics mode,
                const PermAssignment* perm = nullptr);

/// First instance of `p` in `w` under the enumeration order: ascending
/// start, ascending label, lexicographic permutation assignment. Variables
/// map to non-empty words only.
std::optional<Occurrence> contains_instance(const Word& w, const Pattern& p, Semantics mode);

/// True iff no pattern of the formula has an instance in `w`.
bool avoids(const Word& w, const Formula& f);

namespace detail {

/// First (lexicographic) permutation assignment under which p matches at
/// `start` with the given lengths, or nullopt. `all_perms` must hold the
/// alphabet's permutation tables in lexicographic order.
std::optional<PermAssignment> find_perm_match(std::span<const int> letters, int sigma,
                                              int start, const Pattern& p,
                                              std::span<const int> lengths,
                                              const std::vector<LetterPermutation>& all_perms);

/// Necessary condition for any permutation assignment to match: pairs of
/// power-0 items of the same variable relate independently of the chosen
/// permutations.
bool power_free_pairs_consistent(std::span<const int> letters, int start, const Pattern& p,
                                 std::span<const int> lengths);

}  // namespace detail

}  // namespace avoid
