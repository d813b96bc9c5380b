#include "verify.hpp"

#include "cancellation.hpp"
#include "errors.hpp"
#include "even_subsets.hpp"
#include "ising.hpp"
#include "kac_ward.hpp"
#include "loops.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

namespace slising {

namespace {

constexpr double SQRT2 = 1.4142135623730950488;

using nlohmann::ordered_json;

struct SuiteBuilder {
    ordered_json checks = ordered_json::array();
    bool pass = true;

    void add(const std::string& name, bool ok, ordered_json extra = {}) {
        ordered_json c;
        c["name"] = name;
        c["pass"] = ok;
        if (!extra.is_null()) c["detail"] = std::move(extra);
        checks.push_back(std::move(c));
        pass = pass && ok;
    }
};

EdgeWeightVector random_weights(const EmbeddedGraph& g, std::mt19937& rng, double sup) {
    std::uniform_real_distribution<double> dist(-sup, sup);
    std::vector<double> w(g.edge_count());
    for (double& x : w) x = dist(rng);
    return EdgeWeightVector(std::move(w));
}

// Five-vertex fixture with one pair of crossing edges: a quadrilateral
// traversed in the "bowtie" order plus a triangle hanging off one side.
EmbeddedGraph crossing_fixture() {
    std::vector<EmbeddedGraph::VertexSpec> vs{
        {0, Coord(0, 0)}, {1, Coord(2, 2)}, {2, Coord(2, 0)}, {3, Coord(0, 2)}, {4, Coord(4, 1)},
    };
    std::vector<EmbeddedGraph::EdgeSpec> es{
        {0, 1, EdgeKind::representative}, // crosses {2,3}
        {1, 2, EdgeKind::representative},
        {2, 3, EdgeKind::representative},
        {3, 0, EdgeKind::representative},
        {1, 4, EdgeKind::representative},
        {2, 4, EdgeKind::representative},
    };
    return EmbeddedGraph::build(std::move(vs), es);
}

void suite_identities(SuiteBuilder& b) {
    std::mt19937 rng(12345);

    { // determinant identity against the even-subset oracle
        double worst = 0.0;
        for (const auto [w, h] : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
            const EmbeddedGraph g = build_rectangle(w, h);
            for (int i = 0; i < 20; ++i) {
                const EdgeWeightVector x = random_weights(g, rng, 0.4);
                const double z_enum = generating_function_bruteforce(g, x);
                const double z_det = determinant_evaluation(build_transition_matrix(g, x));
                worst = std::max(worst, std::fabs(z_det - z_enum) / std::fabs(z_enum));
            }
        }
        b.add("determinant_equals_bruteforce", worst < 1e-10, {{"worst_rel_err", worst}});
    }

    { // partition-function triangle
        double worst_free = 0.0, worst_plus = 0.0;
        for (const double beta : {0.2, 0.44, 0.7, 1.0}) {
            for (const auto [w, h] : {std::pair{2, 2}, {3, 3}, {4, 4}}) {
                const EmbeddedGraph g = build_rectangle(w, h);
                const double a = gibbs_partition({g, beta, Boundary::free_bc});
                const double c = high_temp_partition(g, beta, Backend::enumeration);
                worst_free = std::max(worst_free, std::fabs(a - c) / a);
            }
            for (const auto [w, h] : {std::pair{3, 3}, {4, 4}, {4, 5}}) {
                const EmbeddedGraph g = build_rectangle(w, h);
                const double a = gibbs_partition({g, beta, Boundary::plus_bc});
                const double c = low_temp_partition(g, beta, Backend::enumeration);
                worst_plus = std::max(worst_plus, std::fabs(a - c) / a);
            }
        }
        b.add("high_temp_expansion_matches_gibbs", worst_free < 1e-9,
              {{"worst_rel_err", worst_free}});
        b.add("low_temp_expansion_matches_gibbs", worst_plus < 1e-9,
              {{"worst_rel_err", worst_plus}});
    }

    { // trace identity on the 3x3 rectangle and on the 2x2 torus
        const EmbeddedGraph g = build_rectangle(3, 3);
        const EdgeWeightVector x = EdgeWeightVector::uniform(g, 0.3);
        const auto census = length_sums(g, x, 10);
        const auto rep = trace_identity_check(build_transition_matrix(g, x), census, 10);
        b.add("trace_identity_rectangle", rep.pass);

        const Torus torus = build_torus({2, 2});
        EdgeWeightVector xt = torus.weights;
        for (int e = 0; e < torus.graph.edge_count(); ++e)
            if (torus.graph.edge(e).kind == EdgeKind::representative) xt[e] = 0.25;
        const auto tcensus = length_sums(torus.graph, xt, 4);
        const auto trep =
            trace_identity_check(build_transition_matrix(torus.graph, xt), tcensus, 4);
        b.add("trace_identity_torus", trep.pass);
    }

    { // Fourier product formula
        double worst = 0.0;
        for (int m = 2; m <= 4; ++m)
            for (int n = 2; n <= 4; ++n) {
                const Torus torus = build_torus({m, n});
                for (const double x : {0.1, 0.2, 0.3, 0.4}) {
                    Eigen::MatrixXcd a =
                        Eigen::MatrixXcd::Identity(torus.lambda.dim(), torus.lambda.dim()) -
                        x * torus.lambda.m;
                    const double det = Eigen::PartialPivLU<Eigen::MatrixXcd>(a).determinant().real();
                    const double prod = torus_fourier_determinant({m, n}, x);
                    worst = std::max(worst, std::fabs(det - prod) / std::fabs(prod));
                }
            }
        b.add("torus_fourier_product", worst < 1e-9, {{"worst_rel_err", worst}});
    }

    { // correlation equivalences on the 3x3 rectangle
        const EmbeddedGraph g = build_rectangle(3, 3);
        const int center = g.find_vertex(Coord(1, 1));
        const int corner = g.find_vertex(Coord(2, 2));
        double worst = 0.0, worst_indep = 0.0;
        for (const double beta : {0.3, 0.7}) {
            const double gp = gibbs_two_point({g, beta, Boundary::plus_bc}, center, corner);
            const double rp = two_point_plus(g, beta, center, corner, Backend::enumeration);
            worst = std::max(worst, std::fabs(gp - rp));
            worst_indep = std::max(
                worst_indep,
                std::fabs(rp - two_point_plus(g, beta, center, corner, Backend::enumeration,
                                              GammaRoute::vertical_first)));

            const double gf = gibbs_two_point({g, beta, Boundary::free_bc}, center, corner);
            const double tf = two_point_free(g, beta, center, corner, Backend::enumeration);
            worst = std::max(worst, std::fabs(gf - tf));
            worst_indep = std::max(
                worst_indep, std::fabs(tf - two_point_free(g, beta, center, corner,
                                                           Backend::enumeration,
                                                           GammaRoute::vertical_first, 1)));
        }
        b.add("correlations_match_gibbs", worst < 1e-9, {{"worst_abs_err", worst}});
        b.add("gamma_and_star_choice_independence", worst_indep < 1e-12,
              {{"worst_abs_err", worst_indep}});
    }

    { // affinity of Z_gamma in t
        const EmbeddedGraph g = build_rectangle(3, 3);
        const auto cfg = make_dual_path(g, g.find_vertex(Coord(0, 0)), g.find_vertex(Coord(2, 1)));
        const auto aug = build_augmented(g, cfg);
        const double z0 = z_gamma(aug, 0.4, 0.0, Backend::enumeration);
        const double zh = z_gamma(aug, 0.4, 0.5, Backend::enumeration);
        const double z1 = z_gamma(aug, 0.4, 1.0, Backend::enumeration);
        const double resid = std::fabs(zh - 0.5 * (z0 + z1));
        b.add("z_gamma_affine_in_t", resid < 1e-12, {{"residual", resid}});
    }

    { // self-dual point
        const double root = beta_critical_bisect();
        const double closed = beta_critical();
        const bool ok = std::fabs(root - closed) < 1e-12 &&
                        std::fabs(std::tanh(closed) - (SQRT2 - 1.0)) < 1e-12 &&
                        std::fabs(std::exp(-2.0 * closed) - (SQRT2 - 1.0)) < 1e-12;
        b.add("self_dual_point", ok, {{"bisection", root}, {"closed_form", closed}});
    }
}

void suite_cancellation(SuiteBuilder& b) {
    { // pairing parity census and its recursion
        bool ok = true;
        long long prev_even = 0, prev_odd = 0;
        for (int k = 1; k <= 5; ++k) {
            const auto [even, odd] = pairing_parity_census(k);
            ok = ok && (even - odd == 1);
            if (k > 1)
                ok = ok && even == k * prev_even + (k - 1) * prev_odd &&
                     odd == k * prev_odd + (k - 1) * prev_even;
            prev_even = even;
            prev_odd = odd;
        }
        b.add("pairing_parity", ok);
    }

    { // signed decompositions on planar and crossing fixtures
        const EmbeddedGraph sq = build_rectangle(2, 2);
        std::vector<int> all(sq.edge_count());
        for (int e = 0; e < sq.edge_count(); ++e) all[e] = e;
        const auto r1 = verify_signed_decomposition(sq, all);

        const EmbeddedGraph g33 = build_rectangle(3, 3);
        // Two unit squares sharing the centre vertex: a degree-4 pinch.
        std::vector<int> eight;
        auto add_edge = [&](int x1, int y1, int x2, int y2) {
            eight.push_back(
                g33.find_edge(g33.find_vertex(Coord(x1, y1)), g33.find_vertex(Coord(x2, y2))));
        };
        add_edge(0, 0, 0, 1);
        add_edge(0, 1, 1, 1);
        add_edge(1, 0, 0, 0);
        add_edge(1, 1, 1, 0);
        add_edge(1, 1, 1, 2);
        add_edge(1, 2, 2, 2);
        add_edge(2, 2, 2, 1);
        add_edge(2, 1, 1, 1);
        const auto r2 = verify_signed_decomposition(g33, eight);

        const EmbeddedGraph cf = crossing_fixture();
        const auto r3 = verify_signed_decomposition(cf, {0, 1, 2, 3});
        b.add("signed_decomposition_square", r1.pass && r1.decompositions == 1);
        b.add("signed_decomposition_pinch", r2.pass && r2.decompositions == 3);
        b.add("signed_decomposition_crossing", r3.pass && r3.expected == -1);
    }

    { // Whitney's formula on enumerated edge-disjoint loops
        bool ok = true;
        for (const EmbeddedGraph& g : {build_rectangle(3, 3), crossing_fixture()}) {
            enumerate_loops(g, 8, nullptr, [&](const Loop& l) {
                if (!loop_edge_disjoint(g, l)) return;
                const int whitney =
                    (vertex_self_crossings(g, l) + edge_self_crossings(g, l)) % 2 == 0 ? 1 : -1;
                ok = ok && whitney == l.sign;
            });
        }
        b.add("whitney_sign_formula", ok);
    }

    { // Z as a finite sum over edge-disjoint decompositions
        std::mt19937 rng(777);
        double worst = 0.0;
        for (const auto [w, h] : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
            const EmbeddedGraph g = build_rectangle(w, h);
            const EdgeWeightVector x = random_weights(g, rng, 0.5);
            double total = 0.0;
            enumerate_even_subsets(g, [&](EdgeSet f) {
                if (f == 0) {
                    total += 1.0;
                    return;
                }
                std::vector<int> ids;
                for (int e = 0; e < g.edge_count(); ++e)
                    if (f >> e & 1) ids.push_back(e);
                for (const auto& loops : decompose_even_subset(g, ids)) {
                    double w_prod = 1.0;
                    for (const Loop& l : loops) w_prod *= loop_weight(g, l, x);
                    total += w_prod;
                }
            });
            const double z = generating_function_bruteforce(g, x);
            worst = std::max(worst, std::fabs(total - z));
        }
        b.add("z_over_decompositions_exact", worst < 1e-12, {{"worst_abs_err", worst}});
    }

    { // configuration cancellation
        bool ok = true;
        ordered_json rows = ordered_json::array();
        for (int r = 4; r <= 8; ++r) {
            for (const auto& [name, g] :
                 {std::pair<std::string, EmbeddedGraph>{"cycle4", build_rectangle(2, 2)},
                  {"rect2x3", build_rectangle(2, 3)}}) {
                const auto rep = verify_cancellation(g, r, EdgeWeightVector::uniform(g, 0.3));
                ok = ok && rep.pass;
                rows.push_back({{"graph", name},
                                {"r", r},
                                {"terms", rep.configurations},
                                {"sum", rep.signed_sum}});
            }
        }
        b.add("configuration_cancellation", ok, rows);
    }
}

void suite_bijection(SuiteBuilder& b) {
    const EmbeddedGraph cycle = build_rectangle(2, 2);
    for (int n = 4; n <= 8; ++n) {
        const auto rep = bijection_audit(cycle, n);
        b.add("bijection_cycle4_n" + std::to_string(n), rep.pass(),
              {{"configs", rep.configs},
               {"case1", rep.case1},
               {"case2", rep.case2},
               {"case3", rep.case3},
               {"involution_ok", rep.involution_ok},
               {"sign_flips_ok", rep.sign_flips_ok},
               {"weight_matches", rep.weight_matches},
               {"counts_match", rep.counts_match}});
    }
    const auto rep = bijection_audit(build_rectangle(2, 3), 8);
    b.add("bijection_rect2x3_n8", rep.pass(), {{"configs", rep.configs}});
}

void suite_norms(SuiteBuilder& b) {
    { // torus operator norm
        double worst = 0.0;
        for (const auto [m, n] : {std::pair{2, 2}, {3, 3}, {4, 4}, {2, 4}}) {
            const Torus t = build_torus({m, n});
            worst = std::max(worst, std::fabs(operator_norm_bound(t.lambda) - (SQRT2 + 1.0)));
        }
        b.add("torus_norm_sqrt2_plus_1", worst < 1e-9, {{"worst_abs_err", worst}});
    }

    { // rectangle norm bound on random draws
        std::mt19937 rng(4242);
        const EmbeddedGraph g = build_rectangle(3, 3);
        bool ok = true;
        double margin = 1e9;
        for (int i = 0; i < 50; ++i) {
            const EdgeWeightVector x = random_weights(g, rng, 0.9);
            const double norm = operator_norm_bound(build_transition_matrix(g, x));
            const double bound = (SQRT2 + 1.0) * x.sup_norm() + 1e-9;
            ok = ok && norm <= bound;
            margin = std::min(margin, bound - norm);
        }
        b.add("rectangle_norm_bound", ok, {{"min_margin", margin}});
    }

    { // the 4x4 vertex block has eigenvalues sqrt2 +- 1, multiplicity 2
        Eigen::MatrixXcd a(4, 4);
        const std::complex<double> e(std::cos(M_PI / 4), std::sin(M_PI / 4));
        const std::complex<double> ec = std::conj(e);
        a << 1, e, 0, ec, ec, 1, e, 0, 0, ec, 1, e, e, 0, ec, 1;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
        const auto ev = es.eigenvalues(); // ascending
        const bool pass = std::fabs(ev(0) - (SQRT2 - 1.0)) < 1e-9 &&
                          std::fabs(ev(1) - (SQRT2 - 1.0)) < 1e-9 &&
                          std::fabs(ev(2) - (SQRT2 + 1.0)) < 1e-9 &&
                          std::fabs(ev(3) - (SQRT2 + 1.0)) < 1e-9;
        b.add("vertex_block_eigenvalues", pass);
    }

    { // zero weights give a zero matrix
        const EmbeddedGraph g = build_rectangle(3, 3);
        const double norm =
            operator_norm_bound(build_transition_matrix(g, EdgeWeightVector::uniform(g, 0.0)));
        b.add("zero_weight_zero_norm", norm == 0.0);
    }
}

} // namespace

VerifyReport verify_suite(const std::string& name) {
    SuiteBuilder b;
    bool known = false;
    if (name == "identities" || name == "all") {
        suite_identities(b);
        known = true;
    }
    if (name == "cancellation" || name == "all") {
        suite_cancellation(b);
        known = true;
    }
    if (name == "bijection" || name == "all") {
        suite_bijection(b);
        known = true;
    }
    if (name == "norms" || name == "all") {
        suite_norms(b);
        known = true;
    }
    if (!known) throw InputError("unknown verify suite '" + name + "'");

    VerifyReport rep;
    rep.pass = b.pass;
    rep.detail["suite"] = name;
    rep.detail["pass"] = b.pass;
    rep.detail["checks"] = std::move(b.checks);
    return rep;
}

} // namespace slising
