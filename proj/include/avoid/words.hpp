#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace avoid {

/// Alphabet of `size` letters, represented internally as 0..size-1.
struct Alphabet {
  int size = 0;

  explicit Alphabet(int sigma) : size(sigma) {
    if (sigma < 1) throw std::invalid_argument("alphabet size must be >= 1");
  }

  bool operator==(const Alphabet&) const = default;
};

/// Finite word over an Alphabet. Immutable after construction; the empty
/// word is representable.
class Word {
 public:
  Word(Alphabet alphabet, std::vector<int> letters)
      : alphabet_(alphabet), letters_(std::move(letters)) {
    for (int a : letters_) {
      if (a < 0 || a >= alphabet_.size)
        throw std::invalid_argument("letter out of alphabet range");
    }
  }

  const Alphabet& alphabet() const { return alphabet_; }
  int sigma() const { return alphabet_.size; }
  int size() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  /// 0-based access.
  int operator[](int i) const { return letters_[static_cast<size_t>(i)]; }
  std::span<const int> letters() const { return letters_; }

  bool operator==(const Word&) const = default;

 private:
  Alphabet alphabet_;
  std::vector<int> letters_;
};

using ParikhVector = std::vector<int>;

/// Letter-to-word morphism. Every image is non-empty and over the target
/// alphabet; there is one image per source letter.
class Morphism {
 public:
  Morphism(Alphabet source, Alphabet target, std::vector<Word> images)
      : source_(source), target_(target), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != source_.size)
      throw std::invalid_argument("morphism needs one image per source letter");
    for (const Word& w : images_) {
      if (w.empty()) throw std::invalid_argument("morphism image must be non-empty");
      if (!(w.alphabet() == target_))
        throw std::invalid_argument("morphism image over wrong alphabet");
    }
  }

  const Alphabet& source() const { return source_; }
  const Alphabet& target() const { return target_; }
  const Word& image(int letter) const { return images_[static_cast<size_t>(letter)]; }
  const std::vector<Word>& images() const { return images_; }

  bool operator==(const Morphism&) const = default;

 private:
  Alphabet source_;
  Alphabet target_;
  std::vector<Word> images_;
};

/// Selector for the two built-in base words.
enum class BaseWord { ThueMorse, Hall };

Alphabet base_alphabet(BaseWord base);

/// 0 -> 01, 1 -> 10 over the binary alphabet.
Morphism thue_morse_morphism();
/// 0 -> 012, 1 -> 02, 2 -> 1 over the ternary alphabet.
Morphism hall_morphism();

/// Length-n prefix of the fixed point of the Thue-Morse morphism, t = 0110100110...
Word thue_morse_prefix(int n);
/// Length-n prefix of the fixed point of the Hall morphism, h = 012021012102...
Word hall_prefix(int n);
Word base_prefix(BaseWord base, int n);

ParikhVector parikh(const Word& w);
bool abelian_equivalent(const Word& u, const Word& v);
Word apply_morphism(const Morphism& m, const Word& w);
Word reverse(const Word& w);
Word concat(const Word& u, const Word& v);

/// All permutations of 0..sigma-1 as image tables, in lexicographic order.
std::vector<std::vector<int>> all_letter_permutations(int sigma);

/// Display form "[a+1, b+1, ...]" (letters shifted to the 1..sigma convention).
std::string to_bracketed(const Word& w);
/// Display form "abc..." of the raw 0-based letters, one digit per letter.
std::string to_digits(const Word& w);

}  // namespace avoid
