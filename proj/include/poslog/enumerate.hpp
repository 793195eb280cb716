#pragma once

#include <vector>

#include "poslog/poset.hpp"

namespace poslog {

// All partial orders on the labeled carrier {s0,...,s{k-1}}.
const std::vector<Poset>& all_posets(int k);

// One representative per isomorphism class of posets with k elements.
const std::vector<Poset>& poset_shapes(int k);

// Every function table dom -> {0,...,m-1}.
std::vector<std::vector<int>> all_fn_tabs(int n, int m);

// Every monotone table dom -> cod.
std::vector<std::vector<int>> all_monotone_tabs(const Poset& dom,
                                                const Poset& cod);

}  // namespace poslog
