#pragma once

#include "geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace slising {

enum class EdgeKind { representative, additional };

struct Edge {
    int u;
    int v;
    EdgeKind kind;
};

struct RectangleInfo {
    int width;  // number of vertex columns
    int height; // number of vertex rows
    Coord origin;
};

/// Finite graph embedded in the plane with straight-line edges. Immutable
/// after construction. Vertices are stored sorted in lexicographic
/// coordinate order, so comparing vertex ids compares coordinates.
///
/// Construction validates the geometric invariants: no duplicate vertices
/// or edges, no vertex interior to an edge segment, and the additional-edge
/// subgraph free of cycles. The crossing registry (all unordered pairs of
/// edges that properly cross) is computed once by the quadratic
/// segment-pair test; graphs here are small.
class EmbeddedGraph {
public:
    struct VertexSpec {
        std::int64_t ext_id;
        Coord pos;
    };
    struct EdgeSpec {
        std::int64_t u;
        std::int64_t v;
        EdgeKind kind;
    };

    static EmbeddedGraph build(std::vector<VertexSpec> vertices, const std::vector<EdgeSpec>& edges);

    int vertex_count() const { return static_cast<int>(coords_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Coord& coord(int v) const { return coords_[v]; }
    const Edge& edge(int e) const { return edges_[e]; }
    std::int64_t external_id(int v) const { return ext_ids_[v]; }

    /// Neighbors of v as (vertex, edge id), sorted by neighbor id.
    const std::vector<std::pair<int, int>>& neighbors(int v) const { return adj_[v]; }

    /// Edge id between u and v, or -1.
    int find_edge(int u, int v) const;
    /// Vertex id at the given position, or -1.
    int find_vertex(const Coord& c) const;
    int vertex_by_external(std::int64_t ext_id) const;

    const std::vector<std::pair<int, int>>& crossings() const { return crossings_; }
    bool edges_cross(int e, int f) const;

    int representative_edge_count() const { return rep_edges_; }
    bool has_additional_edges() const { return rep_edges_ != edge_count(); }

    /// Longest simple path (in edges) inside the additional-edge forest.
    int additional_forest_diameter() const;

    /// Set when the graph is exactly a width x height grid of unit-spaced
    /// vertices with all grid edges representative and nothing else.
    const std::optional<RectangleInfo>& rectangle() const { return rect_; }

    std::string to_json() const;
    static EmbeddedGraph from_json(const std::string& text);

private:
    EmbeddedGraph() = default;
    void detect_rectangle();

    std::vector<Coord> coords_;
    std::vector<std::int64_t> ext_ids_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    std::vector<std::pair<int, int>> crossings_; // sorted (e < f)
    int rep_edges_ = 0;
    std::optional<RectangleInfo> rect_;
};

/// Grid graph with width x height vertices at unit spacing from origin,
/// all edges representative, no crossings.
EmbeddedGraph build_rectangle(int width, int height, const Coord& origin = Coord(0, 0));

/// Weak dual of a rectangle: the (width-1) x (height-1) rectangle whose
/// vertices are the face centres, at half-integer offsets from origin.
/// Throws InputError when the input is not a rectangle or has no faces.
EmbeddedGraph build_weak_dual(const EmbeddedGraph& g);

/// Vertices of a rectangle adjacent to the complement of the rectangle in
/// the infinite lattice.
std::vector<int> boundary_vertices(const EmbeddedGraph& g);

} // namespace slising
