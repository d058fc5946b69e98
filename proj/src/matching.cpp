#include "avoid/matching.hpp"

#include <algorithm>
#include <numeric>

#include "avoid/detail/length_enum.hpp"

namespace avoid {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > (std::int64_t{1} << 62) / std::max<std::int64_t>(base, 1))
      throw std::overflow_error("label range overflow");
    r *= base;
  }
  return r;
}

void check_assignment(const LengthAssignment& a) {
  if (a.word_length < 1 || a.nr_vars < 1)
    throw std::invalid_argument("length assignment needs positive word length and variable count");
  if (a.label < 1 || a.label > ipow(a.word_length, a.nr_vars))
    throw std::invalid_argument("label out of range");
}

std::vector<int> item_offsets(const Pattern& p, std::span<const int> lengths, int* total_out) {
  const auto& items = p.items();
  std::vector<int> off(items.size());
  int total = 0;
  for (size_t i = 0; i < items.size(); ++i) {
    off[i] = total;
    total += lengths[items[i].var_index - 1];
  }
  if (total_out) *total_out = total;
  return off;
}

std::vector<int> perm_power_table(const LetterPermutation& pi, int power, int sigma) {
  std::vector<int> t(sigma);
  std::iota(t.begin(), t.end(), 0);
  for (int i = 0; i < power; ++i)
    for (int x = 0; x < sigma; ++x) t[x] = pi[t[x]];
  return t;
}

std::vector<int> inverse_table(const LetterPermutation& pi, int sigma) {
  std::vector<int> inv(sigma);
  for (int x = 0; x < sigma; ++x) inv[pi[x]] = x;
  return inv;
}

// Base image of the variable of `item`, obtained by undoing the item's
// function application and reversal on the factor at word position pos.
std::vector<int> invert_item_block(std::span<const int> w, int pos, int len,
                                   const OccurrenceItem& item, int sigma,
                                   const PermAssignment* perm) {
  std::vector<int> u(len);
  for (int l = 0; l < len; ++l)
    u[l] = item.reversed ? w[pos + len - 1 - l] : w[pos + l];
  if (item.power > 0) {
    const LetterPermutation& pi = (*perm)[item.perm_index - 1];
    std::vector<int> invpow = perm_power_table(inverse_table(pi, sigma), item.power, sigma);
    for (int& a : u) a = invpow[a];
  }
  return u;
}

}  // namespace

int var_length(int var_idx, const LengthAssignment& a) {
  check_assignment(a);
  if (var_idx < 1 || var_idx > a.nr_vars) throw std::invalid_argument("variable index out of range");
  std::int64_t div = ipow(a.word_length, a.nr_vars - var_idx);
  std::int64_t q = (a.label + div - 1) / div;  // ceil(label / div)
  int r = static_cast<int>(q % a.word_length);
  return r == 0 ? a.word_length : r;
}

std::vector<int> decode_lengths(const LengthAssignment& a) {
  std::vector<int> lengths(a.nr_vars);
  for (int i = 1; i <= a.nr_vars; ++i) lengths[i - 1] = var_length(i, a);
  return lengths;
}

int image_length(const Pattern& p, std::span<const int> lengths) {
  if (static_cast<int>(lengths.size()) != p.nr_vars())
    throw std::invalid_argument("one length per pattern variable required");
  int total = 0;
  for (const OccurrenceItem& it : p.items()) total += lengths[it.var_index - 1];
  return total;
}

int image_length(const Pattern& p, const LengthAssignment& a) {
  std::vector<int> lengths = decode_lengths(a);
  return image_length(p, lengths);
}

int item_offset(const Pattern& p, int item_index, std::span<const int> lengths) {
  if (item_index < 0 || item_index >= p.length())
    throw std::invalid_argument("item index out of range");
  int off = 0;
  for (int i = 0; i < item_index; ++i)
    off += lengths[p.items()[i].var_index - 1];
  return off;
}

int item_offset(const Pattern& p, int item_index, const LengthAssignment& a) {
  std::vector<int> lengths = decode_lengths(a);
  return item_offset(p, item_index, lengths);
}

bool matches_at(std::span<const int> letters, int sigma, int start, const Pattern& p,
                std::span<const int> lengths, Semantics mode, const PermAssignment* perm) {
  const auto& items = p.items();
  const int m = p.length();
  if (static_cast<int>(lengths.size()) != p.nr_vars())
    throw std::invalid_argument("one length per pattern variable required");
  int total = 0;
  std::vector<int> off = item_offsets(p, lengths, &total);
  if (start < 1 || start - 1 + total > static_cast<int>(letters.size()))
    throw std::invalid_argument("pattern image does not fit at this position");
  const int base = start - 1;

  if (mode == Semantics::PlainWithReversal || mode == Semantics::Abelian) {
    std::vector<int> counts(sigma, 0);
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        if (items[a].var_index != items[b].var_index)
          continue;
        const int len = lengths[items[a].var_index - 1];
        const int pa = base + off[a];
        const int pb = base + off[b];
        if (mode == Semantics::Abelian) {
          std::fill(counts.begin(), counts.end(), 0);
          for (int l = 0; l < len; ++l) {
            ++counts[letters[pa + l]];
            --counts[letters[pb + l]];
          }
          for (int c : counts)
            if (c != 0) return false;
        } else if (items[a].reversed == items[b].reversed) {
          for (int l = 0; l < len; ++l)
            if (letters[pa + l] != letters[pb + l])
              return false;
        } else {
          for (int l = 0; l < len; ++l)
            if (letters[pa + l] != letters[pb + len - 1 - l])
              return false;
        }
      }
    }
    return true;
  }

  // Permutation mode: reconstruct each variable's base image from its first
  // occurrence, then require every other occurrence to equal the base image
  // under its own function application.
  if (p.nr_perms() > 0 && (!perm || static_cast<int>(perm->size()) != p.nr_perms()))
    throw std::invalid_argument("permutation mode requires one permutation per function variable");
  std::vector<std::vector<int>> bases(p.nr_vars());
  std::vector<char> have(p.nr_vars(), 0);
  for (int i = 0; i < m; ++i) {
    const OccurrenceItem& it = items[i];
    const int v = it.var_index - 1;
    const int len = lengths[v];
    const int pos = base + off[i];
    if (!have[v]) {
      bases[v] = invert_item_block(letters, pos, len, it, sigma, perm);
      have[v] = 1;
      continue;
    }
    const std::vector<int>& u = bases[v];
    std::vector<int> table;
    if (it.power > 0)
      table = perm_power_table((*perm)[it.perm_index - 1], it.power, sigma);
    for (int l = 0; l < len; ++l) {
      int expected = u[l];
      if (it.power > 0) expected = table[expected];
      const int wpos = it.reversed ? pos + len - 1 - l : pos + l;
      if (letters[wpos] != expected) return false;
    }
  }
  return true;
}

bool matches_at(const Word& w, int start, const Pattern& p, const LengthAssignment& a,
                Semantics mode, const PermAssignment* perm) {
  if (a.nr_vars != p.nr_vars())
    throw std::invalid_argument("assignment variable count does not match the pattern");
  std::vector<int> lengths = decode_lengths(a);
  return matches_at(w.letters(), w.sigma(), start, p, lengths, mode, perm);
}

bool matches_at(const Word& w, int start, const Pattern& p, std::span<const int> lengths,
                Semantics mode, const PermAssignment* perm) {
  return matches_at(w.letters(), w.sigma(), start, p, lengths, mode, perm);
}

namespace detail {

bool power_free_pairs_consistent(std::span<const int> letters, int start, const Pattern& p,
                                 std::span<const int> lengths) {
  const auto& items = p.items();
  const int m = p.length();
  std::vector<int> off = item_offsets(p, lengths, nullptr);
  const int base = start - 1;
  for (int a = 0; a < m; ++a) {
    if (items[a].power != 0) continue;
    for (int b = a + 1; b < m; ++b) {
      if (items[b].power != 0) continue;
      if (items[a].var_index != items[b].var_index)
        continue;
      const int len = lengths[items[a].var_index - 1];
      const int pa = base + off[a];
      const int pb = base + off[b];
      if (items[a].reversed == items[b].reversed) {
        for (int l = 0; l < len; ++l)
          if (letters[pa + l] != letters[pb + l])
            return false;
      } else {
        for (int l = 0; l < len; ++l)
          if (letters[pa + l] != letters[pb + len - 1 - l])
            return false;
      }
    }
  }
  return true;
}

std::optional<PermAssignment> find_perm_match(std::span<const int> letters, int sigma,
                                              int start, const Pattern& p,
                                              std::span<const int> lengths,
                                              const std::vector<LetterPermutation>& all_perms) {
  const int nfn = p.nr_perms();
  const int np = static_cast<int>(all_perms.size());
  std::vector<int> idx(nfn, 0);
  PermAssignment pa(nfn);
  for (;;) {
    for (int k = 0; k < nfn; ++k) pa[k] = all_perms[idx[k]];
    if (matches_at(letters, sigma, start, p, lengths, Semantics::UnderPermutations, &pa))
      return pa;
    int k = nfn - 1;
    while (k >= 0 && ++idx[k] == np) {
      idx[k] = 0;
      --k;
    }
    if (k < 0) return std::nullopt;
  }
}

}  // namespace detail

namespace {

Occurrence make_occurrence(const Word& w, int start, const Pattern& p,
                           std::span<const int> lengths, Semantics mode,
                           const PermAssignment* perm) {
  Occurrence o;
  o.start = start;
  o.lengths.assign(lengths.begin(), lengths.end());
  std::vector<int> off = item_offsets(p, lengths, nullptr);
  const int base = start - 1;
  for (int v = 1; v <= p.nr_vars(); ++v) {
    for (size_t i = 0; i < p.items().size(); ++i) {
      const OccurrenceItem& it = p.items()[i];
      if (it.var_index != v) continue;
      const int len = lengths[v - 1];
      std::vector<int> u;
      if (mode == Semantics::UnderPermutations) {
        u = invert_item_block(w.letters(), base + off[i], len, it, w.sigma(), perm);
      } else {
        u.resize(len);
        for (int l = 0; l < len; ++l) {
          const bool rev = mode == Semantics::PlainWithReversal && it.reversed;
          u[l] =
              w[base + off[i] + (rev ? len - 1 - l : l)];
        }
      }
      o.substitution.emplace_back(w.alphabet(), std::move(u));
      break;
    }
  }
  if (mode == Semantics::UnderPermutations)
    o.perm_assignment = perm ? *perm : PermAssignment{};
  return o;
}

}  // namespace

std::optional<Occurrence> contains_instance(const Word& w, const Pattern& p, Semantics mode) {
  const int L = w.size();
  if (L == 0) return std::nullopt;
  const int sigma = w.sigma();
  auto letters = w.letters();
  std::vector<int> occ(p.nr_vars(), 0);
  for (const OccurrenceItem& it : p.items()) ++occ[it.var_index - 1];
  const int min_total = p.length();
  std::vector<LetterPermutation> all_perms;
  const bool has_fn_vars = mode == Semantics::UnderPermutations && p.nr_perms() > 0;
  if (has_fn_vars) all_perms = all_letter_permutations(sigma);

  std::optional<Occurrence> found;
  for (int start = 1; start + min_total - 1 <= L; ++start) {
    const int budget = L - start + 1;
    bool hit = detail::for_each_length_vector(occ, budget, [&](std::span<const int> lengths, int) {
      if (has_fn_vars) {
        if (!detail::power_free_pairs_consistent(letters, start, p, lengths)) return false;
        auto pa = detail::find_perm_match(letters, sigma, start, p, lengths, all_perms);
        if (!pa) return false;
        found = make_occurrence(w, start, p, lengths, mode, &*pa);
        return true;
      }
      PermAssignment empty;
      const PermAssignment* pa = mode == Semantics::UnderPermutations ? &empty : nullptr;
      if (!matches_at(letters, sigma, start, p, lengths, mode, pa)) return false;
      found = make_occurrence(w, start, p, lengths, mode, pa);
      return true;
    });
    if (hit) return found;
  }
  return std::nullopt;
}

bool avoids(const Word& w, const Formula& f) {
  for (const Pattern& p : f.patterns())
    if (contains_instance(w, p, f.semantics())) return false;
  return true;
}

}  // namespace avoid
