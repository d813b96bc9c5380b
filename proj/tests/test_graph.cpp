#include "graph.hpp"

#include "errors.hpp"
#include "weights.hpp"

#include <doctest.h>

using namespace slising;

TEST_CASE("rectangle construction") {
    const EmbeddedGraph g22 = build_rectangle(2, 2);
    CHECK(g22.vertex_count() == 4);
    CHECK(g22.edge_count() == 4);
    CHECK(g22.crossings().empty());
    CHECK(g22.rectangle().has_value());

    const EmbeddedGraph g33 = build_rectangle(3, 3);
    CHECK(g33.vertex_count() == 9);
    CHECK(g33.edge_count() == 12);

    const EmbeddedGraph g11 = build_rectangle(1, 1);
    CHECK(g11.vertex_count() == 1);
    CHECK(g11.edge_count() == 0);

    CHECK_THROWS_AS(build_rectangle(0, 3), InputError);
}

TEST_CASE("vertex ids follow lexicographic coordinate order") {
    const EmbeddedGraph g = build_rectangle(3, 2);
    for (int v = 0; v + 1 < g.vertex_count(); ++v) CHECK(g.coord(v) < g.coord(v + 1));
    CHECK(g.coord(0) == Coord(0, 0));
    CHECK(g.coord(g.vertex_count() - 1) == Coord(2, 1));
}

TEST_CASE("weak dual of rectangles") {
    const EmbeddedGraph d22 = build_weak_dual(build_rectangle(2, 2));
    CHECK(d22.vertex_count() == 1);
    CHECK(d22.edge_count() == 0);
    CHECK(d22.coord(0) == Coord(1, 1, 2));

    const EmbeddedGraph d33 = build_weak_dual(build_rectangle(3, 3));
    CHECK(d33.vertex_count() == 4);
    CHECK(d33.edge_count() == 4);
    CHECK(d33.rectangle().has_value());

    const EmbeddedGraph d43 = build_weak_dual(build_rectangle(4, 3));
    CHECK(d43.rectangle()->width == 3);
    CHECK(d43.rectangle()->height == 2);

    CHECK_THROWS_AS(build_weak_dual(build_rectangle(1, 5)), InputError);
}

TEST_CASE("boundary vertices of a rectangle") {
    const EmbeddedGraph g = build_rectangle(3, 3);
    CHECK(boundary_vertices(g).size() == 8);
    const EmbeddedGraph g15 = build_rectangle(1, 5);
    CHECK(boundary_vertices(g15).size() == 5); // every vertex is boundary
}

TEST_CASE("construction validates the embedding") {
    using VS = EmbeddedGraph::VertexSpec;
    using ES = EmbeddedGraph::EdgeSpec;
    // duplicate coordinate
    CHECK_THROWS_AS(EmbeddedGraph::build({VS{0, Coord(0, 0)}, VS{1, Coord(0, 0)}}, {}),
                    InputError);
    // multiple edge
    CHECK_THROWS_AS(EmbeddedGraph::build({VS{0, Coord(0, 0)}, VS{1, Coord(1, 0)}},
                                         {ES{0, 1, EdgeKind::representative},
                                          ES{1, 0, EdgeKind::representative}}),
                    InputError);
    // vertex interior to an edge
    CHECK_THROWS_AS(EmbeddedGraph::build({VS{0, Coord(0, 0)}, VS{1, Coord(2, 0)}, VS{2, Coord(1, 0)}},
                                         {ES{0, 1, EdgeKind::representative}}),
                    InputError);
    // cycle among additional edges
    CHECK_THROWS_AS(EmbeddedGraph::build({VS{0, Coord(0, 0)}, VS{1, Coord(1, 0)}, VS{2, Coord(0, 1)}},
                                         {ES{0, 1, EdgeKind::additional},
                                          ES{1, 2, EdgeKind::additional},
                                          ES{2, 0, EdgeKind::additional}}),
                    InputError);
}

TEST_CASE("crossing registry on a crossed embedding") {
    using VS = EmbeddedGraph::VertexSpec;
    using ES = EmbeddedGraph::EdgeSpec;
    const EmbeddedGraph g = EmbeddedGraph::build(
        {VS{0, Coord(0, 0)}, VS{1, Coord(1, 1)}, VS{2, Coord(0, 1)}, VS{3, Coord(1, 0)}},
        {ES{0, 1, EdgeKind::representative}, ES{2, 3, EdgeKind::representative}});
    CHECK(g.crossings().size() == 1);
    CHECK(g.edges_cross(0, 1));
    CHECK(g.edges_cross(1, 0));
    CHECK_FALSE(g.rectangle().has_value());
}

TEST_CASE("graph JSON round trip") {
    const EmbeddedGraph g = build_weak_dual(build_rectangle(3, 4));
    const EmbeddedGraph h = EmbeddedGraph::from_json(g.to_json());
    REQUIRE(h.vertex_count() == g.vertex_count());
    REQUIRE(h.edge_count() == g.edge_count());
    for (int v = 0; v < g.vertex_count(); ++v) CHECK(h.coord(v) == g.coord(v));
    CHECK(h.rectangle().has_value());

    CHECK_THROWS_AS(EmbeddedGraph::from_json("{not json"), InputError);
    CHECK_THROWS_AS(EmbeddedGraph::from_json("{\"vertices\": []}"), InputError);
}

TEST_CASE("weights JSON with overrides") {
    const EmbeddedGraph g = build_rectangle(2, 2);
    const auto w = EdgeWeightVector::from_json(
        g, R"({"default": 0.25, "overrides": [{"u": 0, "v": 1, "w": -0.5}]})");
    const int e = g.find_edge(g.vertex_by_external(0), g.vertex_by_external(1));
    CHECK(w[e] == -0.5);
    CHECK(w.sup_norm() == 0.5);
    CHECK_THROWS_AS(
        EdgeWeightVector::from_json(g, R"({"default": 1, "overrides": [{"u": 0, "v": 3, "w": 2}]})"),
        InputError);
}

TEST_CASE("additional forest diameter") {
    using VS = EmbeddedGraph::VertexSpec;
    using ES = EmbeddedGraph::EdgeSpec;
    const EmbeddedGraph g = EmbeddedGraph::build(
        {VS{0, Coord(0, 0)}, VS{1, Coord(1, 0)}, VS{2, Coord(2, 0)}, VS{3, Coord(3, 0)}},
        {ES{0, 1, EdgeKind::additional}, ES{1, 2, EdgeKind::additional},
         ES{2, 3, EdgeKind::representative}});
    CHECK(g.additional_forest_diameter() == 2);
    CHECK(build_rectangle(3, 3).additional_forest_diameter() == 0);
}
