#pragma once

#include <string>

#include "poslog/poset.hpp"

namespace poslog {

struct BatteryReport {
  bool pass = true;
  long long cases = 0;
  std::string witness;
};

// Unit, counit, and the adjunction equivalence for exists_along/restrict_along
// on every monotone map between posets of size <= bound.
BatteryReport adjunction_battery(int bound);

// beck_chevalley_check agrees with is_exact_square on lax squares with
// components of size <= bound. Both verdicts only depend on the two
// weakening-closed relations carried by a square, and every such pair of
// relations is realized by a bipartite cospan with a discrete span, so the
// sweep is over those realizations; comma squares are checked as the
// always-exact baseline.
BatteryReport bc_exact_battery(int bound);

// The four split-coinserter laws on every parallel pair with a common
// monotone left inverse over posets of size <= bound.
BatteryReport split_coins_battery(int bound);

// eval_pos agrees with eval_bool after beta translation on discrete models
// with <= max_states states over two atoms and modal depth <= depth. Formula
// classes are deduplicated per model by their semantics; both sides are
// recomputed by an independent mask calculus on every model, and the real
// parser/translator/evaluators are re-run on all small models plus a
// deterministic stride of the larger ones.
BatteryReport adequacy_battery(int max_states, int depth);

// The two ordered-model inequations  [](p|q) <= []p | <>q  and
// []p & <>q <= <>(p & q)  on every ordered model with <= max_states states.
BatteryReport dunn_battery(int max_states);

}  // namespace poslog
