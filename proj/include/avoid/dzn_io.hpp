#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "avoid/patterns.hpp"
#include "avoid/words.hpp"

namespace avoid {

/// Signed-integer pattern table, used by the plain/reversal and abelian
/// models: occurrence of variable i is +i, of its mirror -i, rows 0-padded.
struct SignedPatternTable {
  std::vector<std::vector<int>> rows;
  std::vector<int> nr_vars_in_pattern;
  int max_pattern_length = 0;
  int max_nr_vars = 0;

  bool operator==(const SignedPatternTable&) const = default;
};

/// 4-tuple pattern table plus letter-permutation tables, used by the
/// permutation model. permutation_rows[p * nr_permutations + z][occ] is the
/// 1-based letter map applied at pattern position occ when the governing
/// permutation takes its z-th value; identity at positions no function
/// governs.
struct TuplePatternTable {
  std::vector<std::vector<std::array<int, 4>>> rows;
  std::vector<int> nr_vars_in_pattern;
  std::vector<int> nr_perms_in_pattern;
  int max_nr_occs = 0;
  int max_nr_vars = 0;
  int nr_permutations = 0;
  std::vector<std::vector<std::vector<int>>> permutation_rows;

  bool operator==(const TuplePatternTable&) const = default;
};

/// Morphic-image constraint data: the base-word prefix (0-based letters,
/// exactly as written to the file) and the image length of each base letter.
struct MorphicBlock {
  std::vector<int> morphic_word;
  std::vector<int> image_lengths;

  bool operator==(const MorphicBlock&) const = default;
};

struct DataFileSpec {
  int sigma = 1;
  int word_length = 1;
  std::variant<SignedPatternTable, TuplePatternTable> table;
  std::optional<MorphicBlock> morphic;

  bool operator==(const DataFileSpec&) const = default;
};

class DznError : public std::runtime_error {
 public:
  DznError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Encodes a formula as data-file content: signed rows for plain and
/// abelian semantics, 4-tuples plus sigma! permutation-table rows per
/// pattern for permutation semantics.
DataFileSpec make_data_file_spec(int sigma, int word_length, const Formula& f,
                                 std::optional<MorphicBlock> morphic = std::nullopt);

/// Canonical text of the data file. Field order and whitespace are fixed;
/// see the format notes in the README. Rejects inconsistent specs.
std::string write_data_file(const DataFileSpec& spec);

/// Inverse of write_data_file: read_data_file(write_data_file(s)) == s.
DataFileSpec read_data_file(std::string_view text);

/// Parses a solver-style word "[1, 2, 3]" (1-based letters) into a Word
/// with 0-based letters; validates the range when sigma is given.
Word parse_solution_word(std::string_view text, std::optional<int> sigma = std::nullopt);

}  // namespace avoid
