#pragma once

#include "graph.hpp"
#include "weights.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace slising {

/// Edge subset as a bitmask over edge ids; subset enumeration is limited to
/// graphs with at most 64 edges.
using EdgeSet = std::uint64_t;

/// Default enumeration cap (edges, or cycle-space dimension when the basis
/// enumeration is used). 24 unless overridden by SLISING_MAX_EDGES.
int default_enumeration_cap();

int cycle_space_dimension(const EmbeddedGraph& g);

bool is_even_subset(const EmbeddedGraph& g, EdgeSet f);

/// Number of unordered crossing pairs of edges inside f.
int crossing_count(const EmbeddedGraph& g, EdgeSet f);
/// Same, taking explicit edge ids; throws InputError on unknown ids.
int crossing_count(const EmbeddedGraph& g, const std::vector<int>& edge_ids);

EdgeSet edge_ids_to_set(const EmbeddedGraph& g, const std::vector<int>& edge_ids);

/// Visit every even edge subset of g exactly once, starting with the empty
/// set. Uses the spanning-forest cycle basis (2^dim combinations) when that
/// is markedly smaller than 2^|E|, otherwise filters all subsets. Throws
/// CapError when the iteration count exceeds the cap.
void enumerate_even_subsets(const EmbeddedGraph& g, const std::function<void(EdgeSet)>& yield,
                            int cap = -1);

/// Even-subgraph generating function by brute force:
///   Z(x) = sum over even F of (-1)^{C_F} prod_{uv in F} x_uv.
double generating_function_bruteforce(const EmbeddedGraph& g, const EdgeWeightVector& x,
                                      int cap = -1);

} // namespace slising
