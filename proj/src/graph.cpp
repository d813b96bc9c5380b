#include "graph.hpp"

#include "errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>

namespace slising {

EmbeddedGraph EmbeddedGraph::build(std::vector<VertexSpec> vertices, const std::vector<EdgeSpec>& edges) {
    std::sort(vertices.begin(), vertices.end(),
              [](const VertexSpec& a, const VertexSpec& b) { return a.pos < b.pos; });
    for (std::size_t i = 1; i < vertices.size(); ++i)
        if (vertices[i].pos == vertices[i - 1].pos)
            throw InputError("duplicate vertex coordinate " + vertices[i].pos.str());

    EmbeddedGraph g;
    std::map<std::int64_t, int> by_ext;
    for (const auto& vs : vertices) {
        if (!by_ext.emplace(vs.ext_id, g.vertex_count()).second)
            throw InputError("duplicate vertex id " + std::to_string(vs.ext_id));
        g.coords_.push_back(vs.pos);
        g.ext_ids_.push_back(vs.ext_id);
    }

    g.adj_.resize(g.coords_.size());
    for (const auto& es : edges) {
        auto iu = by_ext.find(es.u), iv = by_ext.find(es.v);
        if (iu == by_ext.end() || iv == by_ext.end())
            throw InputError("edge endpoint refers to unknown vertex id");
        int u = iu->second, v = iv->second;
        if (u == v) throw InputError("self-loop edge rejected");
        if (g.find_edge(u, v) >= 0) throw InputError("multiple edge rejected");
        int eid = g.edge_count();
        g.edges_.push_back(Edge{u, v, es.kind});
        g.adj_[u].emplace_back(v, eid);
        g.adj_[v].emplace_back(u, eid);
        if (es.kind == EdgeKind::representative) ++g.rep_edges_;
    }
    for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());

    // No vertex may lie in the interior of an edge segment.
    for (int e = 0; e < g.edge_count(); ++e) {
        const Coord& a = g.coords_[g.edges_[e].u];
        const Coord& b = g.coords_[g.edges_[e].v];
        for (int v = 0; v < g.vertex_count(); ++v)
            if (point_in_segment_interior(g.coords_[v], a, b))
                throw InputError("vertex " + g.coords_[v].str() + " lies inside an edge segment");
    }

    // The additional-edge subgraph must be free of cycles.
    {
        std::vector<int> parent(g.vertex_count());
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const Edge& e : g.edges_) {
            if (e.kind != EdgeKind::additional) continue;
            int ru = find(e.u), rv = find(e.v);
            if (ru == rv) throw InputError("cycle among additional edges");
            parent[ru] = rv;
        }
    }

    for (int e = 0; e < g.edge_count(); ++e)
        for (int f = e + 1; f < g.edge_count(); ++f) {
            const Edge &ee = g.edges_[e], &ff = g.edges_[f];
            if (segments_cross(g.coords_[ee.u], g.coords_[ee.v], g.coords_[ff.u], g.coords_[ff.v]))
                g.crossings_.emplace_back(e, f);
        }

    g.detect_rectangle();
    return g;
}

int EmbeddedGraph::find_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) return -1;
    for (const auto& [nb, eid] : adj_[u])
        if (nb == v) return eid;
    return -1;
}

int EmbeddedGraph::find_vertex(const Coord& c) const {
    auto it = std::lower_bound(coords_.begin(), coords_.end(), c);
    if (it != coords_.end() && *it == c) return static_cast<int>(it - coords_.begin());
    return -1;
}

int EmbeddedGraph::vertex_by_external(std::int64_t ext_id) const {
    for (int v = 0; v < vertex_count(); ++v)
        if (ext_ids_[v] == ext_id) return v;
    return -1;
}

bool EmbeddedGraph::edges_cross(int e, int f) const {
    if (e > f) std::swap(e, f);
    return std::binary_search(crossings_.begin(), crossings_.end(), std::make_pair(e, f));
}

int EmbeddedGraph::additional_forest_diameter() const {
    // Two BFS passes per tree give the longest path of a forest.
    auto bfs = [&](int src, std::vector<int>& dist) {
        std::queue<int> q;
        q.push(src);
        dist.assign(vertex_count(), -1);
        dist[src] = 0;
        int far = src;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            if (dist[v] > dist[far]) far = v;
            for (const auto& [nb, eid] : adj_[v])
                if (edges_[eid].kind == EdgeKind::additional && dist[nb] < 0) {
                    dist[nb] = dist[v] + 1;
                    q.push(nb);
                }
        }
        return far;
    };
    std::vector<bool> seen(vertex_count(), false);
    std::vector<int> dist;
    int diam = 0;
    for (int v = 0; v < vertex_count(); ++v) {
        if (seen[v]) continue;
        int a = bfs(v, dist);
        for (int u = 0; u < vertex_count(); ++u)
            if (dist[u] >= 0) seen[u] = true;
        int b = bfs(a, dist);
        diam = std::max(diam, dist[b]);
    }
    return diam;
}

void EmbeddedGraph::detect_rectangle() {
    rect_.reset();
    if (vertex_count() == 0 || has_additional_edges() || !crossings_.empty()) return;
    const Coord origin = coords_[0]; // minimum in lexicographic order
    std::int64_t w = 0, h = 0;
    for (const Coord& c : coords_) {
        const Coord d = c - origin;
        if (d.den != 1 || d.xn < 0 || d.yn < 0) return;
        w = std::max(w, d.xn + 1);
        h = std::max(h, d.yn + 1);
    }
    if (w * h != vertex_count()) return;
    // Vertices are lex-sorted, so the full grid has a predictable layout.
    for (std::int64_t i = 0; i < w; ++i)
        for (std::int64_t j = 0; j < h; ++j)
            if (coords_[i * h + j] != origin + Coord(i, j)) return;
    const std::int64_t expect_edges = 2 * w * h - w - h;
    if (edge_count() != expect_edges) return;
    for (const Edge& e : edges_) {
        const Coord d = coords_[e.v] - coords_[e.u];
        const std::int64_t l1 = std::abs(d.xn) + std::abs(d.yn);
        if (d.den != 1 || l1 != 1) return;
    }
    rect_ = RectangleInfo{static_cast<int>(w), static_cast<int>(h), origin};
}

std::string EmbeddedGraph::to_json() const {
    std::int64_t den = 1;
    for (const Coord& c : coords_) den = std::max(den, c.den);
    nlohmann::ordered_json j;
    j["denominator"] = den;
    auto& vs = j["vertices"] = nlohmann::ordered_json::array();
    for (int v = 0; v < vertex_count(); ++v) {
        const Coord& c = coords_[v];
        vs.push_back({{"id", ext_ids_[v]}, {"x", c.xn * (den / c.den)}, {"y", c.yn * (den / c.den)}});
    }
    auto& es = j["edges"] = nlohmann::ordered_json::array();
    for (const Edge& e : edges_)
        es.push_back({{"u", ext_ids_[e.u]},
                      {"v", ext_ids_[e.v]},
                      {"kind", e.kind == EdgeKind::representative ? "representative" : "additional"}});
    return j.dump(2);
}

EmbeddedGraph EmbeddedGraph::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("graph JSON parse error: ") + e.what());
    }
    try {
        const std::int64_t den = j.value("denominator", std::int64_t{1});
        std::vector<VertexSpec> vs;
        for (const auto& v : j.at("vertices"))
            vs.push_back({v.at("id").get<std::int64_t>(),
                          Coord(v.at("x").get<std::int64_t>(), v.at("y").get<std::int64_t>(), den)});
        std::vector<EdgeSpec> es;
        for (const auto& e : j.at("edges")) {
            const std::string kind = e.value("kind", "representative");
            if (kind != "representative" && kind != "additional")
                throw InputError("unknown edge kind '" + kind + "'");
            es.push_back({e.at("u").get<std::int64_t>(), e.at("v").get<std::int64_t>(),
                          kind == "representative" ? EdgeKind::representative : EdgeKind::additional});
        }
        return build(std::move(vs), es);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("graph JSON schema error: ") + e.what());
    }
}

EmbeddedGraph build_rectangle(int width, int height, const Coord& origin) {
    if (width < 1 || height < 1) throw InputError("rectangle dimensions must be >= 1");
    std::vector<EmbeddedGraph::VertexSpec> vs;
    std::vector<EmbeddedGraph::EdgeSpec> es;
    auto id = [&](int i, int j) { return static_cast<std::int64_t>(i) * height + j; };
    for (int i = 0; i < width; ++i)
        for (int j = 0; j < height; ++j) {
            vs.push_back({id(i, j), origin + Coord(i, j)});
            if (j + 1 < height) es.push_back({id(i, j), id(i, j + 1), EdgeKind::representative});
            if (i + 1 < width) es.push_back({id(i, j), id(i + 1, j), EdgeKind::representative});
        }
    return EmbeddedGraph::build(std::move(vs), es);
}

EmbeddedGraph build_weak_dual(const EmbeddedGraph& g) {
    const auto& rect = g.rectangle();
    if (!rect) throw InputError("weak dual is only defined here for rectangles");
    if (rect->width < 2 || rect->height < 2)
        throw InputError("degenerate rectangle has no faces: empty dual");
    return build_rectangle(rect->width - 1, rect->height - 1, rect->origin + Coord::half(1, 1));
}

std::vector<int> boundary_vertices(const EmbeddedGraph& g) {
    const auto& rect = g.rectangle();
    if (!rect) throw InputError("boundary is only defined here for rectangles");
    std::vector<int> out;
    for (int v = 0; v < g.vertex_count(); ++v) {
        const Coord d = g.coord(v) - rect->origin;
        if (d.xn == 0 || d.yn == 0 || d.xn == rect->width - 1 || d.yn == rect->height - 1)
            out.push_back(v);
    }
    return out;
}

} // namespace slising
