#include "avoid/search.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <limits>
#include <numeric>
#include <random>

#include "avoid/detail/length_enum.hpp"

namespace avoid {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Per-formula state for the end-anchored instance check. Built once per
// search so the permutation tables are not regenerated at every node.
struct EndAnchoredChecker {
  const Formula* formula;
  int sigma;
  std::vector<std::vector<int>> occ_counts;  // per pattern, per variable
  std::vector<LetterPermutation> all_perms;  // permutation mode only

  EndAnchoredChecker(const Formula& f, int sigma_) : formula(&f), sigma(sigma_) {
    bool needs_perms = false;
    for (const Pattern& p : f.patterns()) {
      std::vector<int> occ(p.nr_vars(), 0);
      for (const OccurrenceItem& it : p.items()) ++occ[it.var_index - 1];
      occ_counts.push_back(std::move(occ));
      if (f.semantics() == Semantics::UnderPermutations && p.nr_perms() > 0) needs_perms = true;
    }
    if (needs_perms) all_perms = all_letter_permutations(sigma);
  }

  bool instance_ending_at(std::span<const int> prefix, int end_pos) const {
    const Semantics mode = formula->semantics();
    for (size_t pi = 0; pi < formula->patterns().size(); ++pi) {
      const Pattern& p = formula->patterns()[pi];
      if (end_pos < p.length()) continue;
      const bool has_fn_vars = mode == Semantics::UnderPermutations && p.nr_perms() > 0;
      bool hit = detail::for_each_length_vector(
          occ_counts[pi], end_pos, [&](std::span<const int> lengths, int total) {
            const int start = end_pos - total + 1;
            if (has_fn_vars) {
              if (!detail::power_free_pairs_consistent(prefix, start, p, lengths)) return false;
              return detail::find_perm_match(prefix, sigma, start, p, lengths, all_perms)
                  .has_value();
            }
            PermAssignment empty;
            const PermAssignment* pa = mode == Semantics::UnderPermutations ? &empty : nullptr;
            return matches_at(prefix, sigma, start, p, lengths, mode, pa);
          });
      if (hit) return true;
    }
    return false;
  }
};

struct BudgetClock {
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
  double max_seconds = std::numeric_limits<double>::infinity();
  Clock::time_point t0 = Clock::now();
  std::uint64_t nodes = 0;
  bool hit = false;

  explicit BudgetClock(const SearchBudget& b) {
    if (b.max_nodes) max_nodes = *b.max_nodes;
    if (b.max_seconds) max_seconds = *b.max_seconds;
  }

  // One search node = one attempted letter placement.
  bool tick() {
    if (hit) return false;
    if (nodes >= max_nodes) {
      hit = true;
      return false;
    }
    ++nodes;
    if ((nodes & 1023) == 0 && seconds_since(t0) > max_seconds) hit = true;
    return !hit;
  }
};

// Ascending by default; a seed yields a per-depth deterministic shuffle.
struct LetterOrder {
  int sigma;
  std::optional<std::uint64_t> seed;
  std::vector<std::vector<int>> cache;

  std::span<const int> at(int depth) {
    while (static_cast<int>(cache.size()) <= depth) {
      std::vector<int> order(sigma);
      std::iota(order.begin(), order.end(), 0);
      if (seed) {
        std::mt19937_64 rng(*seed + 0x9e3779b97f4a7c15ULL *
                                        (static_cast<std::uint64_t>(cache.size()) + 1));
        std::shuffle(order.begin(), order.end(), rng);
      }
      cache.push_back(std::move(order));
    }
    return cache[depth];
  }
};

struct PlainDfs {
  int sigma;
  int length;
  const EndAnchoredChecker& checker;
  BudgetClock& budget;
  LetterOrder& order;
  int forced_first;  // -1 = unrestricted
  std::vector<int> prefix;

  bool extend(int pos) {
    if (pos == length) return true;
    for (int letter : order.at(pos)) {
      if (pos == 0 && forced_first >= 0 && letter != forced_first) continue;
      if (!budget.tick()) return false;
      prefix.push_back(letter);
      if (!checker.instance_ending_at(prefix, pos + 1) && extend(pos + 1)) return true;
      prefix.pop_back();
      if (budget.hit) return false;
    }
    return false;
  }
};

// Template positions are assigned left to right; final-word positions are
// checked as soon as every earlier final position is determined.
struct MorphicDfs {
  int sigma;
  const EndAnchoredChecker& checker;
  BudgetClock& budget;
  LetterOrder& order;
  int forced_first;

  int template_length = 0;
  std::vector<int> final_to_template;  // final position -> template position
  std::vector<int> determined;         // determined[p] = final prefix length once
                                       // p template positions are assigned
  std::vector<int> prefix;             // template under construction
  std::vector<int> final_letters;

  bool extend(int pos) {
    if (pos == template_length) return true;
    for (int letter : order.at(pos)) {
      if (pos == 0 && forced_first >= 0 && letter != forced_first) continue;
      if (!budget.tick()) return false;
      prefix.push_back(letter);
      bool ok = !checker.instance_ending_at(prefix, pos + 1);
      for (int q = determined[pos];
           ok && q < determined[pos + 1]; ++q) {
        final_letters[q] =
            prefix[final_to_template[q]];
        if (checker.instance_ending_at(
                std::span<const int>(final_letters.data(), q + 1), q + 1))
          ok = false;
      }
      if (ok && extend(pos + 1)) return true;
      prefix.pop_back();
      if (budget.hit) return false;
    }
    return false;
  }
};

void validate_morphic_spec(const MorphicSpec& spec) {
  if (spec.prefix_length < 1)
    throw std::invalid_argument("morphic prefix length must be >= 1");
  const int expected = base_alphabet(spec.base).size;
  if (static_cast<int>(spec.image_lengths.size()) != expected)
    throw std::invalid_argument("one image length per base letter required");
  for (int len : spec.image_lengths)
    if (len < 1) throw std::invalid_argument("image lengths must be >= 1");
}

SearchOutcome run_plain_branch(Alphabet alphabet, int length, const Formula& f,
                               const SearchBudget& budget, const SearchOptions& options,
                               int forced_first) {
  EndAnchoredChecker checker(f, alphabet.size);
  BudgetClock clock(budget);
  LetterOrder order{alphabet.size, options.seed, {}};
  PlainDfs dfs{alphabet.size, length, checker, clock, order, forced_first, {}};
  dfs.prefix.reserve(length);
  const bool found = dfs.extend(0);
  const double secs = seconds_since(clock.t0);
  if (found) {
    Word w(alphabet, dfs.prefix);
    if (!avoids(w, f)) throw std::logic_error("search produced an invalid witness");
    return FoundResult{std::move(w), std::nullopt, std::nullopt};
  }
  if (clock.hit) return BudgetExceededResult{clock.nodes, secs};
  return ExhaustedResult{};
}

SearchOutcome run_morphic_branch(Alphabet alphabet, const MorphicSpec& spec, const Formula& f,
                                 const SearchBudget& budget, const SearchOptions& options,
                                 int forced_first) {
  const Word base = base_prefix(spec.base, spec.prefix_length);
  const int nr_images = static_cast<int>(spec.image_lengths.size());
  std::vector<int> seg_start(nr_images, 0);
  int template_length = 0;
  for (int b = 0; b < nr_images; ++b) {
    seg_start[b] = template_length;
    template_length += spec.image_lengths[b];
  }

  EndAnchoredChecker checker(f, alphabet.size);
  BudgetClock clock(budget);
  LetterOrder order{alphabet.size, options.seed, {}};
  MorphicDfs dfs{alphabet.size, checker, clock, order, forced_first};
  dfs.template_length = template_length;
  for (int i = 0; i < base.size(); ++i) {
    const int b = base[i];
    for (int j = 0; j < spec.image_lengths[b]; ++j)
      dfs.final_to_template.push_back(seg_start[b] + j);
  }
  const int final_length = static_cast<int>(dfs.final_to_template.size());
  // determined[p]: length of the final-word prefix whose template references
  // all lie below p, i.e. what is known once p template positions are set.
  dfs.determined.assign(template_length + 1, 0);
  {
    std::vector<int> prefix_max(final_length, 0);
    int mx = -1;
    for (int q = 0; q < final_length; ++q) {
      mx = std::max(mx, dfs.final_to_template[q]);
      prefix_max[q] = mx;
    }
    int q = 0;
    for (int p = 0; p <= template_length; ++p) {
      while (q < final_length && prefix_max[q] < p) ++q;
      dfs.determined[p] = q;
    }
  }
  dfs.final_letters.assign(final_length, 0);
  dfs.prefix.reserve(template_length);

  const bool found = dfs.extend(0);
  const double secs = seconds_since(clock.t0);
  if (found) {
    Word tmpl(alphabet, dfs.prefix);
    std::vector<Word> images;
    for (int b = 0; b < nr_images; ++b) {
      auto begin = dfs.prefix.begin() + seg_start[b];
      images.emplace_back(alphabet,
                          std::vector<int>(begin, begin + spec.image_lengths[b]));
    }
    Morphism m(base_alphabet(spec.base), alphabet, std::move(images));
    Word final_word = apply_morphism(m, base);
    if (!(final_word.letters().size() == dfs.final_letters.size()) ||
        !std::equal(final_word.letters().begin(), final_word.letters().end(),
                    dfs.final_letters.begin()) ||
        !avoids(tmpl, f) || !avoids(final_word, f))
      throw std::logic_error("morphic search produced an invalid witness");
    return FoundResult{std::move(tmpl), std::move(m), std::move(final_word)};
  }
  if (clock.hit) return BudgetExceededResult{clock.nodes, secs};
  return ExhaustedResult{};
}

template <class RunBranch>
SearchOutcome parallel_over_first_letters(int sigma, bool symmetry_break, RunBranch run) {
  const int branches = symmetry_break ? 1 : sigma;
  std::vector<std::future<SearchOutcome>> futures;
  futures.reserve(branches);
  for (int letter = 0; letter < branches; ++letter)
    futures.push_back(std::async(std::launch::async, run, letter));
  std::vector<SearchOutcome> outcomes;
  outcomes.reserve(futures.size());
  for (auto& fut : futures) outcomes.push_back(fut.get());
  for (SearchOutcome& o : outcomes)
    if (std::holds_alternative<FoundResult>(o)) return std::move(o);
  std::uint64_t nodes = 0;
  double secs = 0.0;
  bool exceeded = false;
  for (const SearchOutcome& o : outcomes) {
    if (const auto* b = std::get_if<BudgetExceededResult>(&o)) {
      exceeded = true;
      nodes += b->nodes;
      secs = std::max(secs, b->seconds);
    }
  }
  if (exceeded) return BudgetExceededResult{nodes, secs};
  return ExhaustedResult{};
}

}  // namespace

SearchOutcome find_avoiding_word(Alphabet alphabet, int length, const Formula& f,
                                 const SearchBudget& budget, const SearchOptions& options) {
  if (length < 1) throw std::invalid_argument("word length must be >= 1");
  if (options.parallel) {
    return parallel_over_first_letters(alphabet.size, options.symmetry_break, [&](int letter) {
      return run_plain_branch(alphabet, length, f, budget, options, letter);
    });
  }
  const int forced = options.symmetry_break ? 0 : -1;
  return run_plain_branch(alphabet, length, f, budget, options, forced);
}

SearchOutcome find_morphic_avoiding_word(Alphabet alphabet, const MorphicSpec& spec,
                                         const Formula& f, const SearchBudget& budget,
                                         const SearchOptions& options) {
  validate_morphic_spec(spec);
  // Symmetry breaking is switched off in morphic mode.
  if (options.parallel) {
    return parallel_over_first_letters(alphabet.size, /*symmetry_break=*/false, [&](int letter) {
      return run_morphic_branch(alphabet, spec, f, budget, options, letter);
    });
  }
  return run_morphic_branch(alphabet, spec, f, budget, options, -1);
}

bool prefix_has_instance_ending_at(std::span<const int> prefix, int sigma, int end_pos,
                                   const Formula& f) {
  if (end_pos < 1 || end_pos > static_cast<int>(prefix.size()))
    throw std::invalid_argument("end position out of range");
  EndAnchoredChecker checker(f, sigma);
  return checker.instance_ending_at(prefix.first(end_pos), end_pos);
}

bool is_morphic_image(const Word& final_word, BaseWord base, int prefix_length,
                      std::span<const int> image_lengths) {
  if (prefix_length < 0) throw std::invalid_argument("prefix length must be >= 0");
  const int nr_images = base_alphabet(base).size;
  if (static_cast<int>(image_lengths.size()) != nr_images)
    throw std::invalid_argument("one image length per base letter required");
  const Word prefix = base_prefix(base, prefix_length);
  std::vector<std::vector<int>> images(nr_images);
  std::vector<char> have(nr_images, 0);
  int pos = 0;
  for (int i = 0; i < prefix.size(); ++i) {
    const int b = prefix[i];
    const int len = image_lengths[b];
    if (pos + len > final_word.size()) return false;
    std::vector<int> block(final_word.letters().begin() + pos,
                           final_word.letters().begin() + pos + len);
    if (!have[b]) {
      images[b] = std::move(block);
      have[b] = 1;
    } else if (images[b] != block) {
      return false;
    }
    pos += len;
  }
  return pos == final_word.size();
}

}  // namespace avoid
