#include "kac_ward.hpp"

#include "errors.hpp"
#include "geometry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <map>

namespace slising {

namespace {

constexpr double SQRT2 = 1.4142135623730950488;

} // namespace

TransitionMatrix build_transition_matrix(const EmbeddedGraph& g, const EdgeWeightVector& x) {
    if (x.size() != g.edge_count()) throw InputError("weight vector does not match graph");

    TransitionMatrix tm;
    tm.sup_weight = x.sup_norm();
    tm.plain_rectangle = g.rectangle().has_value();

    std::map<std::pair<int, int>, int> col; // (tail, head) -> index
    for (int e = 0; e < g.edge_count(); ++e) {
        if (g.edge(e).kind != EdgeKind::representative) continue;
        const int u = g.edge(e).u, v = g.edge(e).v;
        col[{u, v}] = tm.dim();
        tm.index.push_back({u, v, e});
        col[{v, u}] = tm.dim();
        tm.index.push_back({v, u, e});
    }
    tm.m = Eigen::MatrixXcd::Zero(tm.dim(), tm.dim());

    const std::complex<double> half_i(0.0, 0.5);
    for (int row = 0; row < tm.dim(); ++row) {
        const auto [t, h, e] = tm.index[row];
        const double xe = x[e];

        // Direct transitions u->v -> v->z, z != u.
        for (const auto& [z, eid] : g.neighbors(h)) {
            if (g.edge(eid).kind != EdgeKind::representative || z == t) continue;
            const double a = turning_angle(g.coord(t), g.coord(h), g.coord(z));
            tm.m(row, col.at({h, z})) = xe * std::exp(half_i * a);
        }

        // Chain transitions: walk the additional-edge forest from h. Each
        // reachable vertex w has a unique simple path of additional edges;
        // the walk accumulates the chain weights and the turning angles.
        struct Frame {
            int prev;
            int cur;
            double weight;
            double angle;
        };
        std::vector<Frame> stack;
        for (const auto& [c1, eid] : g.neighbors(h)) {
            if (g.edge(eid).kind != EdgeKind::additional) continue;
            stack.push_back(Frame{h, c1, x[eid], turning_angle(g.coord(t), g.coord(h), g.coord(c1))});
        }
        while (!stack.empty()) {
            Frame f = stack.back();
            stack.pop_back();
            // Representative continuations out of the chain endpoint; no
            // further non-backtracking condition applies in the chain case.
            for (const auto& [z, eid] : g.neighbors(f.cur)) {
                if (g.edge(eid).kind != EdgeKind::representative) continue;
                const double a = f.angle + turning_angle(g.coord(f.prev), g.coord(f.cur), g.coord(z));
                tm.m(row, col.at({f.cur, z})) += xe * f.weight * std::exp(half_i * a);
            }
            for (const auto& [nxt, eid] : g.neighbors(f.cur)) {
                if (g.edge(eid).kind != EdgeKind::additional || nxt == f.prev) continue;
                stack.push_back(Frame{f.cur, nxt, f.weight * x[eid],
                                      f.angle + turning_angle(g.coord(f.prev), g.coord(f.cur),
                                                              g.coord(nxt))});
            }
        }
    }
    return tm;
}

double operator_norm_bound(const TransitionMatrix& tm) {
    if (tm.dim() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(tm.m);
    return svd.singularValues()(0);
}

double spectral_radius(const TransitionMatrix& tm) {
    if (tm.dim() == 0) return 0.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(tm.m, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

bool certify_spectral_radius(const TransitionMatrix& tm) {
    if (tm.plain_rectangle && (SQRT2 + 1.0) * tm.sup_weight < 1.0) return true;
    if (tm.dim() == 0) return true;
    if (operator_norm_bound(tm) < 1.0) return true;
    return spectral_radius(tm) < 1.0;
}

double determinant_evaluation(const TransitionMatrix& tm) {
    if (!certify_spectral_radius(tm))
        throw DomainError("spectral radius of Lambda(x) is not below 1");
    if (tm.dim() == 0) return 1.0;
    const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(tm.dim(), tm.dim()) - tm.m;
    const std::complex<double> det = Eigen::PartialPivLU<Eigen::MatrixXcd>(a).determinant();
    if (std::fabs(det.imag()) > 1e-9 * std::abs(det))
        throw NumericError("det(Id - Lambda) has a non-real residue");
    if (det.real() <= 0.0) throw NumericError("det(Id - Lambda) is not positive");
    return std::sqrt(det.real());
}

TraceIdentityReport trace_identity_check(const TransitionMatrix& tm,
                                         const LoopSeriesAccumulator& census, int r_max,
                                         double tol) {
    TraceIdentityReport rep;
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(tm.dim(), tm.dim());
    for (int r = 1; r <= r_max; ++r) {
        p = p * tm.m;
        const std::complex<double> tr = p.trace();
        const double f_r = census.at(r);
        const double residual = std::abs(tr + std::complex<double>(2.0 * r * f_r, 0.0));
        const bool pass = residual < tol * (1.0 + std::abs(tr));
        rep.rows.push_back({r, tr.real(), f_r, residual, pass});
        rep.pass = rep.pass && pass;
    }
    return rep;
}

Torus build_torus(const TorusSpec& spec) {
    const int M = spec.m, N = spec.n;
    if (M < 2 || N < 2) throw InputError("torus needs M, N >= 2");

    std::vector<EmbeddedGraph::VertexSpec> vs;
    std::vector<EmbeddedGraph::EdgeSpec> es;
    std::int64_t next_id = 0;
    std::map<std::pair<int, int>, std::int64_t> grid_id;
    auto add_vertex = [&](const Coord& c) {
        vs.push_back({next_id, c});
        return next_id++;
    };
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < N; ++j) grid_id[{i, j}] = add_vertex(Coord(i, j));
    // Wrap vertices carrying the extra representative edges.
    std::vector<std::int64_t> right(N), top(M);
    for (int j = 0; j < N; ++j) right[j] = add_vertex(Coord(M, j));
    for (int i = 0; i < M; ++i) top[i] = add_vertex(Coord(i, N));

    std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, double>> weighted; // additional
    auto chain = [&](std::int64_t from, const std::vector<Coord>& interior, std::int64_t to) {
        std::int64_t prev = from;
        bool first = true;
        for (const Coord& c : interior) {
            std::int64_t id = add_vertex(c);
            weighted.push_back({{prev, id}, first ? -1.0 : 1.0});
            first = false;
            prev = id;
        }
        weighted.push_back({{prev, to}, 1.0});
    };

    for (int i = 0; i < M; ++i)
        for (int j = 0; j < N; ++j) {
            if (j + 1 < N)
                es.push_back({grid_id[{i, j}], grid_id[{i, j + 1}], EdgeKind::representative});
            else
                es.push_back({grid_id[{i, j}], top[i], EdgeKind::representative});
            if (i + 1 < M)
                es.push_back({grid_id[{i, j}], grid_id[{i + 1, j}], EdgeKind::representative});
            else
                es.push_back({grid_id[{i, j}], right[j], EdgeKind::representative});
        }

    // Horizontal chains: four left turns (+2 pi), entering east and leaving
    // east into the left side of the rectangle.
    for (int y = 0; y < N; ++y) {
        const int d = y + 1;
        chain(right[y],
              {Coord(M + d, y), Coord(M + d, N + d), Coord(-1 - d, N + d), Coord(-1 - d, y)},
              grid_id[{0, y}]);
    }
    // Vertical chains: four right turns (-2 pi), entering north and leaving
    // north into the bottom side.
    for (int xcol = 0; xcol < M; ++xcol) {
        const int e = N + xcol + 1;
        chain(top[xcol],
              {Coord(xcol, N + e), Coord(M + e, N + e), Coord(M + e, -1 - e), Coord(xcol, -1 - e)},
              grid_id[{xcol, 0}]);
    }

    for (const auto& [uv, w] : weighted) es.push_back({uv.first, uv.second, EdgeKind::additional});

    Torus t{EmbeddedGraph::build(std::move(vs), es), EdgeWeightVector(), TransitionMatrix{}};
    std::vector<double> w(t.graph.edge_count(), 1.0);
    for (const auto& [uv, cw] : weighted) {
        const int e = t.graph.find_edge(t.graph.vertex_by_external(uv.first),
                                        t.graph.vertex_by_external(uv.second));
        w[e] = cw;
    }
    t.weights = EdgeWeightVector(std::move(w));
    t.lambda = build_transition_matrix(t.graph, t.weights);
    return t;
}

double torus_fourier_determinant(const TorusSpec& spec, double x) {
    double prod = 1.0;
    const double a = (1.0 + x * x) * (1.0 + x * x);
    const double b = 2.0 * x * (1.0 - x * x);
    for (int p = 0; p < spec.m; ++p)
        for (int q = 0; q < spec.n; ++q)
            prod *= a - b * (std::cos(2.0 * M_PI * p / spec.m) + std::cos(2.0 * M_PI * q / spec.n));
    return prod;
}

namespace {

double onsager_grid(double beta, int n) {
    const double c = 4.0 * std::cosh(2.0 * beta) * std::cosh(2.0 * beta);
    const double s = 4.0 * std::sinh(2.0 * beta);
    double sum = 0.0;
    std::vector<double> cosw(n);
    for (int i = 0; i < n; ++i) cosw[i] = std::cos(2.0 * M_PI * i / n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sum += std::log(c - s * (cosw[i] + cosw[j]));
    // (1/8pi^2) * (2pi/n)^2 * sum
    return sum / (2.0 * n * n);
}

} // namespace

OnsagerResult onsager_integral(double beta) {
    if (beta <= 0.0) throw InputError("onsager integral needs beta > 0");
    OnsagerResult res;
    int n = 256;
    double prev = onsager_grid(beta, n);
    for (;;) {
        n *= 2;
        const double cur = onsager_grid(beta, n);
        res.richardson = std::fabs(cur - prev);
        res.value = cur;
        res.nodes = n;
        if (res.richardson < 1e-8) break;
        if (n >= 2048) {
            res.reduced_accuracy = true;
            break;
        }
        prev = cur;
    }
    return res;
}

double beta_critical() { return 0.5 * std::log(1.0 + SQRT2); }

double beta_critical_bisect(double tol) {
    // exp(-2b) - tanh(b) is strictly decreasing in b on (0, inf).
    double lo = 0.1, hi = 1.0;
    auto f = [](double b) { return std::exp(-2.0 * b) - std::tanh(b); };
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace slising
