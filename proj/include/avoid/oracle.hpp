#pragma once

#include <optional>

#include "avoid/matching.hpp"
#include "avoid/patterns.hpp"
#include "avoid/words.hpp"

namespace avoid {

/// Brute-force instance detector used for differential testing and final
/// validation of search output. It backtracks over the cut positions that
/// split a factor into one non-empty block per pattern item, checking block
/// consistency as it goes, and shares no detection machinery with the
/// label-based matcher. Deliberately naive; may be exponentially slower.
std::optional<Occurrence> oracle_contains_instance(const Word& w, const Pattern& p,
                                                   Semantics mode);

/// True iff oracle_contains_instance is empty for every pattern of f.
bool oracle_avoids(const Word& w, const Formula& f);

}  // namespace avoid
