#include "even_subsets.hpp"

#include "errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <string>

namespace slising {

int default_enumeration_cap() {
    if (const char* env = std::getenv("SLISING_MAX_EDGES")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return 24;
}

int cycle_space_dimension(const EmbeddedGraph& g) {
    std::vector<int> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int components = g.vertex_count();
    for (int e = 0; e < g.edge_count(); ++e) {
        int ru = find(g.edge(e).u), rv = find(g.edge(e).v);
        if (ru != rv) {
            parent[ru] = rv;
            --components;
        }
    }
    return g.edge_count() - g.vertex_count() + components;
}

bool is_even_subset(const EmbeddedGraph& g, EdgeSet f) {
    std::vector<int> deg(g.vertex_count(), 0);
    for (int e = 0; e < g.edge_count(); ++e)
        if (f >> e & 1) {
            ++deg[g.edge(e).u];
            ++deg[g.edge(e).v];
        }
    for (int d : deg)
        if (d % 2) return false;
    return true;
}

int crossing_count(const EmbeddedGraph& g, EdgeSet f) {
    int c = 0;
    for (const auto& [e1, e2] : g.crossings())
        if ((f >> e1 & 1) && (f >> e2 & 1)) ++c;
    return c;
}

EdgeSet edge_ids_to_set(const EmbeddedGraph& g, const std::vector<int>& edge_ids) {
    if (g.edge_count() > 64) throw CapError("edge subsets limited to graphs with <= 64 edges");
    EdgeSet f = 0;
    for (int e : edge_ids) {
        if (e < 0 || e >= g.edge_count())
            throw InputError("unknown edge id " + std::to_string(e));
        f |= EdgeSet{1} << e;
    }
    return f;
}

int crossing_count(const EmbeddedGraph& g, const std::vector<int>& edge_ids) {
    return crossing_count(g, edge_ids_to_set(g, edge_ids));
}

namespace {

// Fundamental cycles of the non-tree edges over a BFS spanning forest.
std::vector<EdgeSet> cycle_basis(const EmbeddedGraph& g) {
    const int n = g.vertex_count();
    std::vector<int> parent_vertex(n, -1), parent_edge(n, -1), depth(n, -1);
    std::vector<bool> tree_edge(g.edge_count(), false);
    for (int root = 0; root < n; ++root) {
        if (depth[root] >= 0) continue;
        depth[root] = 0;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& [nb, eid] : g.neighbors(v))
                if (depth[nb] < 0) {
                    depth[nb] = depth[v] + 1;
                    parent_vertex[nb] = v;
                    parent_edge[nb] = eid;
                    tree_edge[eid] = true;
                    stack.push_back(nb);
                }
        }
    }
    std::vector<EdgeSet> basis;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (tree_edge[e]) continue;
        EdgeSet cyc = EdgeSet{1} << e;
        int a = g.edge(e).u, b = g.edge(e).v;
        while (a != b) {
            if (depth[a] < depth[b]) std::swap(a, b);
            cyc ^= EdgeSet{1} << parent_edge[a];
            a = parent_vertex[a];
        }
        basis.push_back(cyc);
    }
    return basis;
}

} // namespace

void enumerate_even_subsets(const EmbeddedGraph& g, const std::function<void(EdgeSet)>& yield,
                            int cap) {
    if (cap < 0) cap = default_enumeration_cap();
    const int E = g.edge_count();
    if (E > 64) throw CapError("edge subsets limited to graphs with <= 64 edges");
    const int dim = cycle_space_dimension(g);

    const bool use_basis = dim < E - 8 || E > cap;
    if (use_basis) {
        if (dim > cap)
            throw CapError("even-subset enumeration refused: cycle-space dimension " +
                           std::to_string(dim) + " exceeds cap " + std::to_string(cap));
        auto basis = cycle_basis(g);
        // Gray-code walk: one basis cycle is toggled per step.
        EdgeSet cur = 0;
        yield(cur);
        for (std::uint64_t k = 1; k < (std::uint64_t{1} << dim); ++k) {
            cur ^= basis[std::countr_zero(k)];
            yield(cur);
        }
    } else {
        if (E > cap)
            throw CapError("even-subset enumeration refused: " + std::to_string(E) +
                           " edges exceeds cap " + std::to_string(cap));
        for (EdgeSet f = 0; f < (EdgeSet{1} << E); ++f)
            if (is_even_subset(g, f)) yield(f);
    }
}

double generating_function_bruteforce(const EmbeddedGraph& g, const EdgeWeightVector& x, int cap) {
    if (x.size() != g.edge_count()) throw InputError("weight vector does not match graph");
    double z = 0.0;
    enumerate_even_subsets(
        g,
        [&](EdgeSet f) {
            double term = 1.0;
            for (EdgeSet rest = f; rest; rest &= rest - 1)
                term *= x[std::countr_zero(rest)];
            if (crossing_count(g, f) % 2) term = -term;
            z += term;
        },
        cap);
    return z;
}

} // namespace slising
