#pragma once

#include <span>
#include <vector>

namespace avoid::detail {

// Enumerates variable-length vectors in {1,2,...}^v in lexicographic order,
// keeping the weighted total sum(occ_count[i] * len[i]) within budget.
// Calls fn(lengths, total); stops and returns true as soon as fn does.
template <class Fn>
bool for_each_length_vector_rec(std::span<const int> occ_count, int budget,
                                std::vector<int>& len, int i, int used, Fn&& fn) {
  const int v = static_cast<int>(len.size());
  if (i == v) return fn(std::span<const int>(len), used);
  int rest_min = 0;
  for (int j = i + 1; j < v; ++j) rest_min += occ_count[j];
  for (len[i] = 1; used + occ_count[i] * len[i] + rest_min <= budget; ++len[i]) {
    if (for_each_length_vector_rec(occ_count, budget, len, i + 1,
                                   used + occ_count[i] * len[i], fn))
      return true;
  }
  return false;
}

template <class Fn>
bool for_each_length_vector(std::span<const int> occ_count, int budget, Fn&& fn) {
  std::vector<int> len(occ_count.size(), 1);
  return for_each_length_vector_rec(occ_count, budget, len, 0, 0, fn);
}

}  // namespace avoid::detail
