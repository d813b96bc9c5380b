#pragma once

#include "graph.hpp"
#include "weights.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace slising {

/// Canonical loop: a closed non-backtracking walk stored as the
/// lexicographically smallest of its 2n representations (all rotations of
/// the sequence and of its reversal). Vertex ids compare like coordinates,
/// so seq[0] is the smallest vertex the loop visits.
struct Loop {
    std::vector<int> seq;
    int multiplicity = 1; // steps divided by the smallest period
    int length = 0;       // steps along representative edges only
    double winding = 0.0; // cyclic sum of turning angles, a multiple of 2*pi
    int sign = 1;         // -exp(i*winding/2) snapped to +-1

    int steps() const { return static_cast<int>(seq.size()); }

    bool operator==(const Loop& o) const { return seq == o.seq; }
    bool operator<(const Loop& o) const { return seq < o.seq; }
};

/// Validate a closed non-backtracking path and reduce it to its canonical
/// Loop. Throws InputError on non-edges or backtracking. Idempotent.
Loop canonicalize(const EmbeddedGraph& g, const std::vector<int>& closed_path);

/// sgn(l)/m(l) times the product of the weights of all n steps. Steps along
/// additional edges contribute their weight factors even though they do not
/// count towards the length.
double loop_weight(const EmbeddedGraph& g, const Loop& loop, const EdgeWeightVector& x);

/// True when no undirected edge is traversed twice.
bool loop_edge_disjoint(const EmbeddedGraph& g, const Loop& loop);

/// Number of steps the loop takes on edges of the given set (with
/// multiplicity); used for the parity filters.
int steps_on_edges(const EmbeddedGraph& g, const Loop& loop, const std::vector<bool>& edge_mark);

using LoopFilter = std::function<bool(const Loop&)>;
using LoopSink = std::function<void(const Loop&)>;

/// Enumerate every canonical loop with at most max_steps steps exactly once
/// (and at most max_length representative steps when max_length >= 0).
/// A non-negative anchor restricts to loops whose smallest vertex is the
/// anchor. Loops are generated by depth-first search over non-backtracking
/// closed walks that never visit a vertex below the anchor; a walk is
/// emitted only when it coincides with its own canonical form.
void enumerate_loops(const EmbeddedGraph& g, int max_steps, const LoopFilter& filter,
                     const LoopSink& yield, int max_length = -1, int anchor = -1);

/// Per-length sums f_r(x) of signed loop weights, plus the exact tail of
/// the norm-bound majorant sum_{r>r_max} 2|V| r^{-1} ((sqrt2+1)||x||_inf)^r
/// when that certifies (rectangle, no additional edges, ratio < 1);
/// +infinity otherwise.
struct LoopSeriesAccumulator {
    std::map<int, double> per_length;
    int r_max = 0;
    double tail_bound = 0.0;

    double sum() const;
    double at(int r) const;
};

LoopSeriesAccumulator length_sums(const EmbeddedGraph& g, const EdgeWeightVector& x, int r_max,
                                  const LoopFilter& filter = nullptr, int anchor = -1);

/// Census of loops with at most max_steps steps as CSV rows
/// (n, r, m, sign, sequence), ordered by step count then canonical sequence.
std::string loop_census_csv(const EmbeddedGraph& g, int max_steps);

/// Step budget that cannot cut off any loop of length <= r_max: every run
/// of consecutive additional-edge steps is a simple path in the additional
/// forest, and such runs are separated by representative steps.
int step_budget_for_length(const EmbeddedGraph& g, int r_max);

} // namespace slising
