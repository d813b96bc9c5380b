#pragma once

#include "graph.hpp"

#include <string>
#include <vector>

namespace slising {

/// Real weight per edge of a fixed graph, the x of the generating function.
/// Immutable use after construction is assumed throughout; copies are cheap.
class EdgeWeightVector {
public:
    EdgeWeightVector() = default;
    explicit EdgeWeightVector(std::vector<double> w) : w_(std::move(w)) {}

    static EdgeWeightVector uniform(const EmbeddedGraph& g, double x) {
        return EdgeWeightVector(std::vector<double>(g.edge_count(), x));
    }

    /// Weights JSON: {"default": f, "overrides": [{"u":id,"v":id,"w":f}]}
    /// with u, v the vertex ids used by the graph JSON.
    static EdgeWeightVector from_json(const EmbeddedGraph& g, const std::string& text);

    double operator[](int e) const { return w_[e]; }
    double& operator[](int e) { return w_[e]; }
    int size() const { return static_cast<int>(w_.size()); }

    double sup_norm() const;

private:
    std::vector<double> w_;
};

} // namespace slising
