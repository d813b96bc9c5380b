#include "even_subsets.hpp"

#include "errors.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

using namespace slising;

namespace {

std::set<EdgeSet> collect(const EmbeddedGraph& g, int cap = -1) {
    std::set<EdgeSet> out;
    enumerate_even_subsets(g, [&](EdgeSet f) { out.insert(f); }, cap);
    return out;
}

} // namespace

TEST_CASE("even subsets of the 4-cycle") {
    const EmbeddedGraph g = build_rectangle(2, 2);
    const auto subsets = collect(g);
    CHECK(subsets.size() == 2);
    CHECK(subsets.count(0) == 1);
    CHECK(subsets.count((EdgeSet{1} << 4) - 1) == 1);
}

TEST_CASE("3x3 rectangle has 16 even subsets matching the cycle-space dimension") {
    const EmbeddedGraph g = build_rectangle(3, 3);
    CHECK(cycle_space_dimension(g) == 4);
    const auto subsets = collect(g);
    CHECK(subsets.size() == 16);
    for (EdgeSet f : subsets) CHECK(is_even_subset(g, f));

    // Size histogram: 1 empty, 4 faces, 4 adjacent pairs, 7 eight-edge sets.
    std::map<int, int> hist;
    for (EdgeSet f : subsets) ++hist[__builtin_popcountll(f)];
    CHECK(hist[0] == 1);
    CHECK(hist[4] == 4);
    CHECK(hist[6] == 4);
    CHECK(hist[8] == 7);
}

TEST_CASE("basis enumeration agrees with the subset filter") {
    const EmbeddedGraph g = build_rectangle(3, 3);
    // A small cap forces the cycle-basis route; the default route on this
    // graph is the plain filter.
    CHECK(collect(g, 10) == collect(g, 24));
}

TEST_CASE("trees have only the empty even subset") {
    const EmbeddedGraph g = build_rectangle(1, 6);
    const auto subsets = collect(g);
    CHECK(subsets.size() == 1);
    CHECK(subsets.count(0) == 1);
}

TEST_CASE("enumeration caps") {
    const EmbeddedGraph g = build_rectangle(5, 5); // 40 edges, dimension 16
    CHECK_THROWS_AS(collect(g, 10), CapError);
    CHECK(collect(g, 16).size() == (1u << 16));
}

TEST_CASE("crossing counts") {
    const EmbeddedGraph rect = build_rectangle(3, 3);
    std::vector<int> all;
    for (int e = 0; e < rect.edge_count(); ++e) all.push_back(e);
    CHECK(crossing_count(rect, all) == 0);
    CHECK(crossing_count(rect, std::vector<int>{}) == 0);
    CHECK_THROWS_AS(crossing_count(rect, std::vector<int>{99}), InputError);

    using VS = EmbeddedGraph::VertexSpec;
    using ES = EmbeddedGraph::EdgeSpec;
    const EmbeddedGraph cross = EmbeddedGraph::build(
        {VS{0, Coord(0, 0)}, VS{1, Coord(1, 1)}, VS{2, Coord(0, 1)}, VS{3, Coord(1, 0)}},
        {ES{0, 1, EdgeKind::representative}, ES{2, 3, EdgeKind::representative}});
    CHECK(crossing_count(cross, {0, 1}) == 1);
}

TEST_CASE("generating function on the 4-cycle is 1 + x^4") {
    const EmbeddedGraph g = build_rectangle(2, 2);
    for (double x : {0.0, 0.3, -0.7}) {
        const double z = generating_function_bruteforce(g, EdgeWeightVector::uniform(g, x));
        CHECK(z == doctest::Approx(1.0 + std::pow(x, 4)).epsilon(1e-14));
    }
}

TEST_CASE("generating function of the 3x3 rectangle (oracle polynomial)") {
    const EmbeddedGraph g = build_rectangle(3, 3);
    // From the even-subset census: Z = 1 + 4x^4 + 4x^6 + 7x^8.
    for (double x : {0.2, 0.5}) {
        const double z = generating_function_bruteforce(g, EdgeWeightVector::uniform(g, x));
        const double expect = 1.0 + 4.0 * std::pow(x, 4) + 4.0 * std::pow(x, 6) +
                              7.0 * std::pow(x, 8);
        CHECK(z == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("zero weights leave only the empty subset") {
    const EmbeddedGraph g = build_rectangle(3, 4);
    CHECK(generating_function_bruteforce(g, EdgeWeightVector::uniform(g, 0.0)) == 1.0);
}

TEST_CASE("Z is multiplicative over disjoint components") {
    // Two unit squares far apart inside one embedded graph.
    std::vector<EmbeddedGraph::VertexSpec> vs;
    std::vector<EmbeddedGraph::EdgeSpec> es;
    int id = 0;
    for (const Coord base : {Coord(0, 0), Coord(10, 0)}) {
        const int o = id;
        for (const Coord d : {Coord(0, 0), Coord(0, 1), Coord(1, 0), Coord(1, 1)})
            vs.push_back({id++, base + d});
        es.push_back({o + 0, o + 1, EdgeKind::representative});
        es.push_back({o + 1, o + 3, EdgeKind::representative});
        es.push_back({o + 3, o + 2, EdgeKind::representative});
        es.push_back({o + 2, o + 0, EdgeKind::representative});
    }
    const EmbeddedGraph both = EmbeddedGraph::build(vs, es);
    const EmbeddedGraph one = build_rectangle(2, 2);

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(-0.8, 0.8);
    std::vector<double> w(both.edge_count());
    for (double& x : w) x = dist(rng);
    const EdgeWeightVector wb{std::vector<double>(w)};

    // Split the weights by component (edges 0..3 vs 4..7 after build).
    std::vector<double> w1, w2;
    for (int e = 0; e < both.edge_count(); ++e) {
        if (both.coord(both.edge(e).u) < Coord(5, 0))
            w1.push_back(wb[e]);
        else
            w2.push_back(wb[e]);
    }
    REQUIRE(w1.size() == 4);
    REQUIRE(w2.size() == 4);

    // Map each component's weights onto the standalone square. Z of a
    // 4-cycle depends only on the product of its edge weights.
    const double z_both = generating_function_bruteforce(both, wb);
    const double p1 = w1[0] * w1[1] * w1[2] * w1[3];
    const double p2 = w2[0] * w2[1] * w2[2] * w2[3];
    CHECK(z_both == doctest::Approx((1.0 + p1) * (1.0 + p2)).epsilon(1e-12));
    CHECK(generating_function_bruteforce(one, EdgeWeightVector::uniform(one, 0.5)) ==
          doctest::Approx(1.0 + std::pow(0.5, 4)));
}
