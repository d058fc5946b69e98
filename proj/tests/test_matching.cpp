#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "avoid/dzn_io.hpp"
#include "avoid/matching.hpp"
#include "avoid/words.hpp"
#include "fixtures.hpp"
#include "testutil.hpp"

using namespace avoid;
using testutil::w;

TEST_SUITE_BEGIN("matching");

TEST_CASE("var_length decodes the label") {
  CHECK(var_length(1, {5, 5, 1}) == 5);
  CHECK(var_length(1, {1, 5, 1}) == 1);
  CHECK(var_length(1, {4, 3, 2}) == 2);
  CHECK(var_length(2, {4, 3, 2}) == 1);
}

TEST_CASE("label bijection onto length vectors") {
  for (int L = 1; L <= 6; ++L) {
    for (int v = 1; v <= 3; ++v) {
      std::int64_t range = 1;
      for (int i = 0; i < v; ++i) range *= L;
      std::set<std::vector<int>> seen;
      for (std::int64_t label = 1; label <= range; ++label) {
        std::vector<int> lengths = decode_lengths({label, L, v});
        for (int len : lengths) {
          CHECK(len >= 1);
          CHECK(len <= L);
        }
        seen.insert(std::move(lengths));
      }
      CHECK(static_cast<std::int64_t>(seen.size()) == range);
    }
  }
}

TEST_CASE("ascending labels enumerate length vectors lexicographically") {
  const int L = 4, v = 2;
  std::vector<int> prev;
  for (std::int64_t label = 1; label <= L * L; ++label) {
    std::vector<int> cur = decode_lengths({label, L, v});
    if (!prev.empty())
      CHECK(std::lexicographical_compare(prev.begin(), prev.end(), cur.begin(), cur.end()));
    prev = std::move(cur);
  }
}

TEST_CASE("image_length and item_offset") {
  Pattern xx = parse_pattern("xx");
  CHECK(image_length(xx, std::vector<int>{3}) == 6);
  CHECK(item_offset(xx, 0, std::vector<int>{3}) == 0);
  CHECK(item_offset(xx, 1, std::vector<int>{3}) == 3);

  Pattern rev = parse_pattern("x1x2x2x1r");
  CHECK(image_length(rev, std::vector<int>{2, 3}) == 10);
  CHECK(item_offset(rev, 3, std::vector<int>{2, 3}) == 8);

  Pattern zimin = parse_pattern("x1x2x1x3x1x2x1");
  CHECK(image_length(zimin, std::vector<int>{1, 1, 1}) == 7);
}

TEST_CASE("matches_at in plain mode") {
  // h(xyy) = bcaca with h(x) = b, h(y) = ca  (a=0, b=1, c=2)
  Pattern xyy = parse_pattern("xyy");
  CHECK(decode_lengths({2, 5, 2}) == std::vector<int>{1, 2});
  CHECK(matches_at(w("12020", 3), 1, xyy, {2, 5, 2}, Semantics::PlainWithReversal));
  // g(x) = a, g(y) = aa
  CHECK(matches_at(w("00000", 1), 1, xyy, {2, 5, 2}, Semantics::PlainWithReversal));

  Pattern xx = parse_pattern("xx");
  CHECK(matches_at(w("0101", 2), 1, xx, {2, 4, 1}, Semantics::PlainWithReversal));
  CHECK_FALSE(matches_at(w("0110", 2), 1, xx, {2, 4, 1}, Semantics::PlainWithReversal));
}

TEST_CASE("matches_at with reversal") {
  // u v v u^r with u = 01, v = 2
  Pattern p = parse_pattern("x1x2x2x1r");
  CHECK(matches_at(w("012210", 3), 1, p, std::vector<int>{2, 1},
                   Semantics::PlainWithReversal));
  CHECK_FALSE(matches_at(w("012201", 3), 1, p, std::vector<int>{2, 1},
                         Semantics::PlainWithReversal));
}

TEST_CASE("matches_at in abelian mode") {
  Pattern xx = parse_pattern("xx");
  CHECK(matches_at(w("010010", 2), 1, xx, std::vector<int>{3}, Semantics::Abelian));
  CHECK(matches_at(w("010100", 2), 1, xx, std::vector<int>{3}, Semantics::Abelian));
  CHECK_FALSE(matches_at(w("000011", 2), 1, xx, std::vector<int>{3}, Semantics::Abelian));
}

TEST_CASE("matches_at under permutations") {
  Pattern p = parse_pattern("x1p1(x1)");
  // 01 . 12 = image under the cycle 0->1->2->0
  PermAssignment cycle{{1, 2, 0}};
  CHECK(matches_at(w("0112", 3), 1, p, std::vector<int>{2}, Semantics::UnderPermutations,
                   &cycle));
  PermAssignment identity{{0, 1, 2}};
  CHECK_FALSE(matches_at(w("0112", 3), 1, p, std::vector<int>{2},
                         Semantics::UnderPermutations, &identity));
  CHECK_THROWS_AS(matches_at(w("0112", 3), 1, p, std::vector<int>{2},
                             Semantics::UnderPermutations, nullptr),
                  std::invalid_argument);

  // antimorphic: x1 . p1(x1)r = u . reverse(pi(u))
  Pattern anti = parse_pattern("x1p1(x1)r");
  CHECK(matches_at(w("0121", 3), 1, anti, std::vector<int>{2}, Semantics::UnderPermutations,
                   &cycle));

  // power composition: the cycle squared maps 0 -> 2
  Pattern sq = parse_pattern("x1p1^2(x1)");
  CHECK(matches_at(w("02", 3), 1, sq, std::vector<int>{1}, Semantics::UnderPermutations,
                   &cycle));
}

TEST_CASE("contains_instance basics") {
  CHECK_FALSE(contains_instance(thue_morse_prefix(64), parse_pattern("xxx"),
                                Semantics::PlainWithReversal));
  CHECK_FALSE(contains_instance(hall_prefix(81), parse_pattern("xx"),
                                Semantics::PlainWithReversal));
  CHECK_FALSE(contains_instance(thue_morse_prefix(32), parse_pattern("xyxyx"),
                                Semantics::PlainWithReversal));

  auto occ = contains_instance(w("0110", 2), parse_pattern("xx"), Semantics::PlainWithReversal);
  REQUIRE(occ.has_value());
  CHECK(occ->start == 2);
  CHECK(occ->lengths == std::vector<int>{1});
  CHECK(occ->substitution[0] == w("1", 2));
}

TEST_CASE("contains_instance abelian") {
  auto occ = contains_instance(w("010010", 2), parse_pattern("xx"), Semantics::Abelian);
  REQUIRE(occ.has_value());
  CHECK(occ->start == 1);
  CHECK_FALSE(contains_instance(w("0102010", 3), parse_pattern("xx"), Semantics::Abelian));
}

TEST_CASE("contains_instance on the known length-54 permutation witness") {
  Word word = parse_solution_word(fixtures::kPerm54, 4);
  CHECK_FALSE(contains_instance(word, parse_pattern("x1x1"), Semantics::UnderPermutations));
  CHECK_FALSE(
      contains_instance(word, parse_pattern("x1p1(x1)x1r"), Semantics::UnderPermutations));
}

TEST_CASE("avoids on known fixture words") {
  CHECK(avoids(parse_solution_word(fixtures::kReversal30, 4),
               Formula({parse_pattern("x1x2x2x1r")}, Semantics::PlainWithReversal)));
  CHECK(avoids(parse_solution_word(fixtures::kAbelian33, 5),
               Formula({parse_pattern("xx")}, Semantics::Abelian)));
  CHECK(avoids(Word(Alphabet(3), {}),
               Formula({parse_pattern("xx"), parse_pattern("x1")},
                       Semantics::PlainWithReversal)));
}

TEST_CASE("factor monotonicity") {
  std::mt19937_64 rng(31);
  Formula f({parse_pattern("xx")}, Semantics::PlainWithReversal);
  int avoiding = 0;
  while (avoiding < 10) {
    Word word = testutil::random_word(rng, 9, 3);
    if (!avoids(word, f)) continue;
    ++avoiding;
    for (int start = 0; start < word.size(); ++start) {
      for (int len = 0; start + len <= word.size(); ++len) {
        Word factor(word.alphabet(),
                    std::vector<int>(word.letters().begin() + start,
                                     word.letters().begin() + start + len));
        CHECK(avoids(factor, f));
      }
    }
  }
}

TEST_CASE("reversal coherence: x x^r instances are even palindromes") {
  std::mt19937_64 rng(37);
  Pattern p = parse_pattern("x1x1r");
  for (int round = 0; round < 300; ++round) {
    Word word = testutil::random_word(rng, 14, 3);
    bool has_even_palindrome = false;
    for (int centre = 0; centre + 1 < word.size(); ++centre)
      if (word[centre] == word[centre + 1]) has_even_palindrome = true;
    CHECK(contains_instance(word, p, Semantics::PlainWithReversal).has_value() ==
          has_even_palindrome);
  }
}

TEST_CASE("permutation mode degenerates to plain mode on a unary alphabet") {
  std::mt19937_64 rng(41);
  int compared = 0;
  for (int round = 0; round < 200; ++round) {
    Word word = testutil::random_word(rng, 10, 1);
    Pattern p = testutil::random_pattern(rng, 4, 2, Semantics::UnderPermutations);
    bool reversal_free = true;
    for (const OccurrenceItem& it : p.items())
      if (it.reversed) reversal_free = false;
    if (!reversal_free) continue;
    std::vector<OccurrenceItem> plain_items;
    for (OccurrenceItem it : p.items()) {
      it.perm_index = 1;
      it.power = 0;
      plain_items.push_back(it);
    }
    Pattern plain_p = Pattern::from_items(std::move(plain_items));
    CHECK(contains_instance(word, p, Semantics::UnderPermutations).has_value() ==
          contains_instance(word, plain_p, Semantics::PlainWithReversal).has_value());
    ++compared;
  }
  CHECK(compared > 50);
}

TEST_CASE("alphabet renaming invariance") {
  std::mt19937_64 rng(43);
  const Semantics modes[] = {Semantics::PlainWithReversal, Semantics::Abelian,
                             Semantics::UnderPermutations};
  for (int round = 0; round < 200; ++round) {
    const int sigma = std::uniform_int_distribution<int>(1, 3)(rng);
    Semantics mode = modes[static_cast<size_t>(round % 3)];
    Word word = testutil::random_word(rng, 10, sigma);
    Pattern p = testutil::random_pattern(rng, 4, 3, mode);
    std::vector<int> rho(static_cast<size_t>(sigma));
    std::iota(rho.begin(), rho.end(), 0);
    std::shuffle(rho.begin(), rho.end(), rng);
    std::vector<int> renamed(word.letters().begin(), word.letters().end());
    for (int& a : renamed) a = rho[static_cast<size_t>(a)];
    Word renamed_word(word.alphabet(), std::move(renamed));
    CHECK(contains_instance(word, p, mode).has_value() ==
          contains_instance(renamed_word, p, mode).has_value());
  }
}

TEST_CASE("witnesses are valid occurrences") {
  std::mt19937_64 rng(47);
  const Semantics modes[] = {Semantics::PlainWithReversal, Semantics::Abelian,
                             Semantics::UnderPermutations};
  int witnesses = 0;
  for (int round = 0; round < 400; ++round) {
    const int sigma = std::uniform_int_distribution<int>(1, 3)(rng);
    Semantics mode = modes[static_cast<size_t>(round % 3)];
    Word word = testutil::random_word(rng, 10, sigma);
    Pattern p = testutil::random_pattern(rng, 4, 3, mode);
    auto occ = contains_instance(word, p, mode);
    if (!occ) continue;
    ++witnesses;
    CHECK(testutil::occurrence_is_valid(word, p, *occ, mode));
  }
  CHECK(witnesses > 50);
}

TEST_SUITE_END();
