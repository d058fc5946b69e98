#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace avoid {

/// One position of a pattern: word variable `var_index`, under the
/// `power`-th iterate of function variable `perm_index`, mirrored when
/// `reversed` is set. A plain variable occurrence carries (1, 0, i, b):
/// power 0 means the identity is applied and no function is involved.
struct OccurrenceItem {
  int perm_index = 1;
  int power = 0;
  int var_index = 1;
  bool reversed = false;

  bool operator==(const OccurrenceItem&) const = default;
};

/// Error raised by the pattern parser; `position` is the 0-based offset of
/// the offending character in the input text.
class PatternParseError : public std::runtime_error {
 public:
  PatternParseError(const std::string& message, size_t position)
      : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

/// Terminal-free pattern: a non-empty sequence of occurrence items with
/// variables and function variables numbered 1.. by first occurrence.
class Pattern {
 public:
  static Pattern from_items(std::vector<OccurrenceItem> items);

  const std::vector<OccurrenceItem>& items() const { return items_; }
  int length() const { return static_cast<int>(items_.size()); }
  int nr_vars() const { return nr_vars_; }
  /// Number of distinct function variables applied with power > 0.
  int nr_perms() const { return nr_perms_; }

  bool operator==(const Pattern&) const = default;

 private:
  Pattern() = default;
  std::vector<OccurrenceItem> items_;
  int nr_vars_ = 0;
  int nr_perms_ = 0;
};

/// Parses the textual pattern grammar:
///
///   pattern  := atom+
///   atom     := fn_atom | var_atom
///   var_atom := var_name ['r']
///   var_name := 'x' digits | letter other than 'p' and 'r'
///   fn_atom  := 'p' [digits] ['^' digits] '(' var_name ['r'] ')' ['r']
///
/// An omitted function power means 1. Variables and function variables are
/// renumbered by first occurrence of their written name. The 'r' suffix
/// inside and outside the parentheses both mark the occurrence as reversed;
/// writing both is an error, as is nesting function applications.
Pattern parse_pattern(std::string_view text);

/// Canonical text for a pattern; parse_pattern(to_text(p)) == p.
std::string to_text(const Pattern& p);

/// Signed encoding of a function-free pattern: occurrence of variable i
/// maps to +i, of its mirror to -i.
std::vector<int> encode_signed(const Pattern& p);

enum class Semantics { PlainWithReversal, Abelian, UnderPermutations };

/// Non-empty set of patterns matched under a common semantics.
/// Abelian formulas admit neither reversals nor function powers;
/// plain-with-reversal formulas admit no function powers.
class Formula {
 public:
  Formula(std::vector<Pattern> patterns, Semantics semantics);

  const std::vector<Pattern>& patterns() const { return patterns_; }
  Semantics semantics() const { return semantics_; }
  int max_pattern_length() const;
  int max_nr_vars() const;
  int max_nr_perms() const;

  bool operator==(const Formula&) const = default;

 private:
  std::vector<Pattern> patterns_;
  Semantics semantics_;
};

/// Signed rows padded with 0 to the formula's maximum pattern length.
std::vector<std::vector<int>> padded_signed_rows(const Formula& f);

/// 4-tuple rows (perm, power, var, reversed) padded with (0,0,0,0); a
/// padding entry is recognized by its zero variable position.
std::vector<std::vector<std::array<int, 4>>> padded_tuple_rows(const Formula& f);

}  // namespace avoid
