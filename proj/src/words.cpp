#include "avoid/words.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace avoid {

Alphabet base_alphabet(BaseWord base) {
  return Alphabet(base == BaseWord::ThueMorse ? 2 : 3);
}

Morphism thue_morse_morphism() {
  Alphabet sigma2(2);
  return Morphism(sigma2, sigma2,
                  {Word(sigma2, {0, 1}), Word(sigma2, {1, 0})});
}

Morphism hall_morphism() {
  Alphabet sigma3(3);
  return Morphism(sigma3, sigma3,
                  {Word(sigma3, {0, 1, 2}), Word(sigma3, {0, 2}), Word(sigma3, {1})});
}

namespace {

// Iterate the morphism from its fixed-point seed 0 until the prefix is
// covered, then truncate.
Word fixed_point_prefix(const Morphism& m, int n) {
  if (n < 0) throw std::invalid_argument("prefix length must be >= 0");
  if (n == 0) return Word(m.target(), {});
  Word w(m.source(), {0});
  while (w.size() < n) w = apply_morphism(m, w);
  std::vector<int> letters(w.letters().begin(), w.letters().begin() + n);
  return Word(m.target(), std::move(letters));
}

}  // namespace

Word thue_morse_prefix(int n) { return fixed_point_prefix(thue_morse_morphism(), n); }

Word hall_prefix(int n) { return fixed_point_prefix(hall_morphism(), n); }

Word base_prefix(BaseWord base, int n) {
  return base == BaseWord::ThueMorse ? thue_morse_prefix(n) : hall_prefix(n);
}

ParikhVector parikh(const Word& w) {
  ParikhVector counts(w.sigma(), 0);
  for (int a : w.letters()) ++counts[a];
  return counts;
}

bool abelian_equivalent(const Word& u, const Word& v) {
  if (!(u.alphabet() == v.alphabet()))
    throw std::invalid_argument("abelian comparison needs a common alphabet");
  return parikh(u) == parikh(v);
}

Word apply_morphism(const Morphism& m, const Word& w) {
  if (!(w.alphabet() == m.source()))
    throw std::invalid_argument("word not over the morphism's source alphabet");
  std::vector<int> out;
  size_t total = 0;
  for (int a : w.letters()) total += m.image(a).size();
  out.reserve(total);
  for (int a : w.letters()) {
    auto img = m.image(a).letters();
    out.insert(out.end(), img.begin(), img.end());
  }
  return Word(m.target(), std::move(out));
}

Word reverse(const Word& w) {
  std::vector<int> letters(w.letters().rbegin(), w.letters().rend());
  return Word(w.alphabet(), std::move(letters));
}

Word concat(const Word& u, const Word& v) {
  if (!(u.alphabet() == v.alphabet()))
    throw std::invalid_argument("concat needs a common alphabet");
  std::vector<int> letters(u.letters().begin(), u.letters().end());
  letters.insert(letters.end(), v.letters().begin(), v.letters().end());
  return Word(u.alphabet(), std::move(letters));
}

std::vector<std::vector<int>> all_letter_permutations(int sigma) {
  if (sigma < 1) throw std::invalid_argument("alphabet size must be >= 1");
  std::vector<int> table(sigma);
  std::iota(table.begin(), table.end(), 0);
  std::vector<std::vector<int>> all;
  do {
    all.push_back(table);
  } while (std::next_permutation(table.begin(), table.end()));
  return all;
}

std::string to_bracketed(const Word& w) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < w.size(); ++i) {
    if (i > 0) os << ", ";
    os << w[i] + 1;
  }
  os << ']';
  return os.str();
}

std::string to_digits(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (int a : w.letters()) s += static_cast<char>('0' + a);
  return s;
}

}  // namespace avoid
