#include "avoid/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace avoid {

namespace {

std::vector<int> table_power(const std::vector<int>& pi, int k, int sigma) {
  std::vector<int> t(sigma);
  for (int x = 0; x < sigma; ++x) t[x] = x;
  for (int i = 0; i < k; ++i)
    for (int x = 0; x < sigma; ++x)
      t[x] = pi[t[x]];
  return t;
}

std::vector<int> table_inverse(const std::vector<int>& pi, int sigma) {
  std::vector<int> inv(sigma);
  for (int x = 0; x < sigma; ++x) inv[pi[x]] = x;
  return inv;
}

// One backtracking run over the cut positions that split the factor at
// `start` into one non-empty block per pattern item. The defining (first)
// block of each variable is remembered by position only; later blocks are
// compared letter by letter against it, composing the two items' function
// applications into a single letter table.
struct Backtracker {
  std::span<const int> w;
  int sigma;
  const Pattern& p;
  Semantics mode;
  const std::vector<std::vector<int>>* perms = nullptr;

  struct BlockRef {
    int pos = -1;
    int len = 0;
    int item = -1;
  };
  std::vector<BlockRef> first;

  Backtracker(std::span<const int> word, int sigma_, const Pattern& pat, Semantics m)
      : w(word), sigma(sigma_), p(pat), mode(m),
        first(pat.nr_vars()) {}

  bool consistent(const OccurrenceItem& item, int pos, int len) const {
    const BlockRef& ref = first[item.var_index - 1];
    if (ref.len != len) return false;
    if (mode == Semantics::Abelian) {
      std::vector<int> counts(sigma, 0);
      for (int l = 0; l < len; ++l) {
        ++counts[w[pos + l]];
        --counts[w[ref.pos + l]];
      }
      return std::all_of(counts.begin(), counts.end(), [](int c) { return c == 0; });
    }
    const OccurrenceItem& def = p.items()[ref.item];
    const bool mirrored = item.reversed != def.reversed;
    std::vector<int> combined;
    if (item.power > 0 || def.power > 0) {
      // this block = item's application of the base, the base = the inverse
      // of def's application of the defining block
      std::vector<int> t(sigma);
      for (int x = 0; x < sigma; ++x) t[x] = x;
      if (def.power > 0) {
        const std::vector<int> inv =
            table_inverse((*perms)[def.perm_index - 1], sigma);
        t = table_power(inv, def.power, sigma);
      }
      if (item.power > 0) {
        const std::vector<int> fwd =
            table_power((*perms)[item.perm_index - 1], item.power, sigma);
        for (int x = 0; x < sigma; ++x)
          t[x] = fwd[t[x]];
      }
      combined = std::move(t);
    }
    for (int l = 0; l < len; ++l) {
      int e = w[ref.pos + (mirrored ? len - 1 - l : l)];
      if (!combined.empty()) e = combined[e];
      if (w[pos + l] != e) return false;
    }
    return true;
  }

  int min_remaining(int item_idx) const {
    int need = 0;
    for (int i = item_idx; i < p.length(); ++i) {
      const BlockRef& ref = first[p.items()[i].var_index - 1];
      need += ref.len > 0 ? ref.len : 1;
    }
    return need;
  }

  bool place(int item_idx, int pos) {
    if (item_idx == p.length()) return true;
    const OccurrenceItem& item = p.items()[item_idx];
    BlockRef& ref = first[item.var_index - 1];
    const int avail = static_cast<int>(w.size()) - pos;
    if (ref.len > 0) {
      if (ref.len > avail - min_remaining(item_idx + 1)) return false;
      if (!consistent(item, pos, ref.len)) return false;
      return place(item_idx + 1, pos + ref.len);
    }
    const int max_len = avail - min_remaining(item_idx + 1);
    for (int len = 1; len <= max_len; ++len) {
      ref = BlockRef{pos, len, item_idx};
      if (place(item_idx + 1, pos + len)) return true;
    }
    ref = BlockRef{};
    return false;
  }

  // Materializes the base image of each variable from its defining block.
  std::vector<std::vector<int>> bases() const {
    std::vector<std::vector<int>> out;
    out.reserve(first.size());
    for (const BlockRef& ref : first) {
      const OccurrenceItem& def = p.items()[ref.item];
      std::vector<int> u(w.begin() + ref.pos, w.begin() + ref.pos + ref.len);
      if (def.reversed) std::reverse(u.begin(), u.end());
      if (def.power > 0) {
        const std::vector<int> inv =
            table_inverse((*perms)[def.perm_index - 1], sigma);
        const std::vector<int> t = table_power(inv, def.power, sigma);
        for (int& a : u) a = t[a];
      }
      out.push_back(std::move(u));
    }
    return out;
  }
};

Occurrence witness_from(const Backtracker& bt, const Word& w, int start, Semantics mode,
                        const std::vector<std::vector<int>>* perms) {
  Occurrence o;
  o.start = start;
  std::vector<std::vector<int>> bases = bt.bases();
  for (std::vector<int>& u : bases) {
    o.lengths.push_back(static_cast<int>(u.size()));
    o.substitution.emplace_back(w.alphabet(), std::move(u));
  }
  if (mode == Semantics::UnderPermutations)
    o.perm_assignment = perms ? *perms : std::vector<std::vector<int>>{};
  return o;
}

}  // namespace

std::optional<Occurrence> oracle_contains_instance(const Word& w, const Pattern& p,
                                                   Semantics mode) {
  const int L = w.size();
  if (L == 0) return std::nullopt;
  const int sigma = w.sigma();

  if (mode == Semantics::UnderPermutations && p.nr_perms() > 0) {
    std::vector<int> perm(sigma);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> tables;
    do {
      tables.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    const int nfn = p.nr_perms();
    for (int start = 1; start + p.length() - 1 <= L; ++start) {
      std::vector<int> idx(nfn, 0);
      for (;;) {
        std::vector<std::vector<int>> assignment;
        assignment.reserve(nfn);
        for (int k = 0; k < nfn; ++k)
          assignment.push_back(tables[idx[k]]);
        Backtracker bt(w.letters(), sigma, p, mode);
        bt.perms = &assignment;
        if (bt.place(0, start - 1)) return witness_from(bt, w, start, mode, &assignment);
        int k = nfn - 1;
        while (k >= 0 && ++idx[k] == static_cast<int>(tables.size())) {
          idx[k] = 0;
          --k;
        }
        if (k < 0) break;
      }
    }
    return std::nullopt;
  }

  for (int start = 1; start + p.length() - 1 <= L; ++start) {
    Backtracker bt(w.letters(), sigma, p, mode);
    if (bt.place(0, start - 1))
      return witness_from(bt, w, start, mode, nullptr);
  }
  return std::nullopt;
}

bool oracle_avoids(const Word& w, const Formula& f) {
  for (const Pattern& p : f.patterns())
    if (oracle_contains_instance(w, p, f.semantics())) return false;
  return true;
}

}  // namespace avoid
