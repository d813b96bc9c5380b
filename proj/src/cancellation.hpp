#pragma once

#include "graph.hpp"
#include "loops.hpp"
#include "weights.hpp"

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace slising {

/// All edge-disjoint loop decompositions of an even edge subset, one per
/// pairing of the edge endpoints around each vertex of degree >= 4 (the
/// correspondence is bijective). Each decomposition is a sorted collection
/// of canonical loops covering f exactly.
std::vector<std::vector<Loop>> decompose_even_subset(const EmbeddedGraph& g,
                                                     const std::vector<int>& edge_ids);

/// Number of vertex self-crossings of an edge-disjoint loop: pairs of
/// visits to a common vertex whose strands separate each other angularly.
int vertex_self_crossings(const EmbeddedGraph& g, const Loop& loop);
/// Number of pairs of steps whose edges cross in the embedding.
int edge_self_crossings(const EmbeddedGraph& g, const Loop& loop);

/// Exhaustive census of pairings of 2k clockwise-ordered endpoints by the
/// parity of their interleaving count: (even, odd). The counts satisfy
/// N+ = k N+' + (k-1) N-' against the census one size down.
std::pair<long long, long long> pairing_parity_census(int k);

struct SignedDecompositionReport {
    long long decompositions = 0;
    long long sign_sum = 0;
    int expected = 1; // (-1)^{C_F}
    bool pass = false;
};

/// Checks sum over Decomps(F) of prod sgn(loop) == (-1)^{C_F}.
SignedDecompositionReport verify_signed_decomposition(const EmbeddedGraph& g,
                                                      const std::vector<int>& edge_ids);

/// Every loop of the graph with length <= max_length, sorted canonically.
std::vector<Loop> loop_census(const EmbeddedGraph& g, int max_length);

struct LoopConfiguration {
    std::vector<int> loops; // indices into a census, in order
    int total_length = 0;
    bool edge_disjoint = false;
};

/// Ordered loop sequences with total length exactly r (repetition allowed).
std::vector<LoopConfiguration> enumerate_configurations(const EmbeddedGraph& g,
                                                        const std::vector<Loop>& census, int r,
                                                        int cap = 10);

struct CancellationReport {
    long long configurations = 0; // non-edge-disjoint multisets counted
    double signed_sum = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Checks that sum over Configs_r minus Configs*_r of (1/s!) prod w
/// vanishes.
CancellationReport verify_cancellation(const EmbeddedGraph& g, int r, const EdgeWeightVector& x);

/// Loop with one distinct positive integer label per step. The base is
/// canonical; for periodic bases the label rotation with the smallest
/// first-step label among the period shifts is stored.
struct LabelledLoop {
    Loop base;
    std::vector<int> labels;

    bool operator==(const LabelledLoop& o) const {
        return base == o.base && labels == o.labels;
    }
    bool operator<(const LabelledLoop& o) const {
        if (!(base == o.base)) return base < o.base;
        return labels < o.labels;
    }
};

struct LabelledStep {
    int from;
    int to;
    int label;
};

/// Canonical labelled form of a closed labelled walk.
LabelledLoop canonical_labelled(const EmbeddedGraph& g, const std::vector<LabelledStep>& steps);

/// The sign-reversing involution on labelled loop configurations: locate
/// the smallest label a on a multiply-labelled edge and the second-smallest
/// label b on the same edge, then merge (two loops), split (same loop, same
/// direction) or reverse-splice (same loop, opposite directions).
struct BijectionStep {
    std::vector<LabelledLoop> image;
    int case_id = 0; // 1, 2 or 3
};

BijectionStep bijection_map(const EmbeddedGraph& g, const std::vector<LabelledLoop>& config);

struct BijectionReport {
    long long configs = 0;
    long long case1 = 0;
    long long case2 = 0;
    long long case3 = 0;
    bool involution_ok = true;
    bool sign_flips_ok = true;
    bool weight_matches = true;
    bool counts_match = true;
    bool pass() const {
        return involution_ok && sign_flips_ok && weight_matches && counts_match;
    }
};

/// Exhaustive audit over every labelled configuration with n_total steps
/// whose underlying loops are not an edge-disjoint collection: the mapping
/// must be an involution, flip the sign product, preserve the absolute
/// weight, and the number of labellings of each loop multiset must equal
/// n! / (prod m(l_i) prod k_i!).
BijectionReport bijection_audit(const EmbeddedGraph& g, int n_total);

} // namespace slising
