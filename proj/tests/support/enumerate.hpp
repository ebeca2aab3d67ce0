#pragma once

// Exhaustive enumeration of non-isomorphic graphs on up to ~10 vertices via
// vertex augmentation + canonical-form dedup (backtracking minimum adjacency
// string). Test harness machinery, not part of the toolkit.

#include <cstdint>
#include <vector>

#include "pfk/graph.hpp"

namespace enumerate {

// Canonical form: the minimum, over all vertex relabelings, of the
// column-major upper-triangle adjacency bits read as one integer (first bit
// = most significant). Requires n <= 10.
std::uint64_t canonical_form(int n, const std::vector<std::uint64_t>& adj_masks);

// All non-isomorphic graphs on exactly n vertices (n <= 9 is practical).
std::vector<pfk::graph> all_graphs(int n);

// The connected ones.
std::vector<pfk::graph> connected_graphs(int n);

bool is_connected(const pfk::graph& g);

}  // namespace enumerate
