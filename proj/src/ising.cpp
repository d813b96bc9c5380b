#include "ising.hpp"

#include "errors.hpp"
#include "even_subsets.hpp"
#include "kac_ward.hpp"
#include "loops.hpp"

#include <algorithm>
#include <cmath>

namespace slising {

namespace {

constexpr int GIBBS_SPIN_CAP = 20;

std::vector<int> free_spin_list(const IsingSpec& spec) {
    std::vector<int> free_spins;
    if (spec.boundary == Boundary::free_bc) {
        free_spins.resize(spec.rectangle.vertex_count());
        for (int v = 0; v < spec.rectangle.vertex_count(); ++v) free_spins[v] = v;
    } else {
        std::vector<bool> fixed(spec.rectangle.vertex_count(), false);
        for (int v : boundary_vertices(spec.rectangle)) fixed[v] = true;
        for (int v = 0; v < spec.rectangle.vertex_count(); ++v)
            if (!fixed[v]) free_spins.push_back(v);
    }
    if (static_cast<int>(free_spins.size()) > GIBBS_SPIN_CAP)
        throw CapError("Gibbs enumeration refused: " + std::to_string(free_spins.size()) +
                       " free spins exceeds cap " + std::to_string(GIBBS_SPIN_CAP));
    return free_spins;
}

// sums[0] = Z, sums[1] = sum sigma_u w, sums[2] = sum sigma_u sigma_v w
void gibbs_sums(const IsingSpec& spec, int u, int v, double* sums) {
    const EmbeddedGraph& g = spec.rectangle;
    const auto free_spins = free_spin_list(spec);
    std::vector<int> sigma(g.vertex_count(), 1);
    sums[0] = sums[1] = sums[2] = 0.0;
    const std::uint64_t total = std::uint64_t{1} << free_spins.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (std::size_t i = 0; i < free_spins.size(); ++i)
            sigma[free_spins[i]] = (mask >> i & 1) ? -1 : 1;
        long long energy = 0;
        for (int e = 0; e < g.edge_count(); ++e)
            energy += sigma[g.edge(e).u] * sigma[g.edge(e).v];
        const double w = std::exp(spec.beta * energy);
        sums[0] += w;
        if (u >= 0) sums[1] += sigma[u] * w;
        if (u >= 0 && v >= 0) sums[2] += sigma[u] * sigma[v] * w;
    }
}

void require_vertex(const EmbeddedGraph& g, int v, const char* what) {
    if (v < 0 || v >= g.vertex_count())
        throw InputError(std::string(what) + ": vertex id out of range");
}

double generating_function(const EmbeddedGraph& g, const EdgeWeightVector& x, Backend backend) {
    if (backend == Backend::determinant)
        return determinant_evaluation(build_transition_matrix(g, x));
    return generating_function_bruteforce(g, x);
}

bool on_boundary(const EmbeddedGraph& g, int v) {
    const auto b = boundary_vertices(g);
    return std::find(b.begin(), b.end(), v) != b.end();
}

// Lattice path from u to v: one axis leg, then the other. Self-avoiding by
// construction. The endpoints must differ by an integer vector.
std::vector<Coord> l_path(const Coord& from, const Coord& to, GammaRoute route) {
    std::vector<Coord> path{from};
    Coord cur = from;
    auto walk = [&](bool horizontal) {
        const Coord d = to - cur;
        if (d.den != 1) throw InputError("path endpoints are not integer translates");
        const std::int64_t n = horizontal ? d.xn : d.yn;
        const Coord step = horizontal ? Coord(n > 0 ? 1 : -1, 0) : Coord(0, n > 0 ? 1 : -1);
        for (std::int64_t k = 0; k < std::llabs(n); ++k) {
            cur = cur + step;
            path.push_back(cur);
        }
    };
    walk(route == GammaRoute::horizontal_first);
    walk(route != GammaRoute::horizontal_first);
    return path;
}

} // namespace

double gibbs_partition(const IsingSpec& spec) {
    double sums[3];
    gibbs_sums(spec, -1, -1, sums);
    return sums[0];
}

double gibbs_one_point(const IsingSpec& spec, int u) {
    require_vertex(spec.rectangle, u, "one-point");
    double sums[3];
    gibbs_sums(spec, u, -1, sums);
    return sums[1] / sums[0];
}

double gibbs_two_point(const IsingSpec& spec, int u, int v) {
    require_vertex(spec.rectangle, u, "two-point");
    require_vertex(spec.rectangle, v, "two-point");
    double sums[3];
    gibbs_sums(spec, u, v, sums);
    return sums[2] / sums[0];
}

double high_temp_partition(const EmbeddedGraph& g, double beta, Backend backend) {
    const double z =
        generating_function(g, EdgeWeightVector::uniform(g, std::tanh(beta)), backend);
    return std::pow(2.0, g.vertex_count()) * std::pow(std::cosh(beta), g.edge_count()) * z;
}

double low_temp_partition(const EmbeddedGraph& g, double beta, Backend backend) {
    const auto& rect = g.rectangle();
    if (!rect) throw InputError("low-temperature expansion needs a rectangle");
    double z = 1.0;
    if (rect->width >= 2 && rect->height >= 2) {
        const EmbeddedGraph dual = build_weak_dual(g);
        z = generating_function(dual, EdgeWeightVector::uniform(dual, std::exp(-2.0 * beta)),
                                backend);
    }
    return std::exp(beta * g.edge_count()) * z;
}

double dual_beta(double beta) {
    if (beta <= 0.0) throw InputError("dual temperature needs beta > 0");
    return -0.5 * std::log(std::tanh(beta));
}

std::vector<double> origin_loop_length_sums(int box_half_width, int r_max) {
    if (r_max < 1) throw InputError("r_max must be >= 1");
    if (box_half_width < r_max)
        throw InputError("box_half_width must be >= r_max so the box sums match the lattice");
    const int side = 2 * box_half_width + 1;
    const EmbeddedGraph box = build_rectangle(side, side);
    const int center = box.find_vertex(Coord(box_half_width, box_half_width));
    const auto acc =
        length_sums(box, EdgeWeightVector::uniform(box, 1.0), r_max, nullptr, center);
    std::vector<double> coeffs(r_max + 1, 0.0);
    for (const auto& [r, f] : acc.per_length) coeffs[r] = f;
    return coeffs;
}

FreeEnergySeries free_energy_series_from_coeffs(double beta, const std::vector<double>& coeffs) {
    if (beta <= 0.0) throw InputError("free energy series needs beta > 0");
    const double bc = beta_critical();
    if (std::fabs(beta - bc) < 1e-9)
        throw DomainError("free energy series is not certified at the self-dual point");
    const int r_max = static_cast<int>(coeffs.size()) - 1;
    FreeEnergySeries out;
    out.r_max = r_max;
    if (beta < bc) {
        out.x = std::tanh(beta);
        out.value = std::log(2.0 * std::cosh(beta) * std::cosh(beta));
    } else {
        out.x = std::exp(-2.0 * beta);
        out.value = 2.0 * beta;
    }
    double xr = 1.0;
    for (int r = 1; r <= r_max; ++r) {
        xr *= out.x;
        out.value += coeffs[r] * xr;
    }
    // Per-site tail: sum_{r>r_max} 2 r^{-1} ((sqrt2+1) x)^r, exactly.
    const double q = (std::sqrt(2.0) + 1.0) * out.x;
    double head = 0.0, qr = 1.0;
    for (int r = 1; r <= r_max; ++r) {
        qr *= q;
        head += qr / r;
    }
    out.tail = 2.0 * (-std::log1p(-q) - head);
    return out;
}

FreeEnergySeries free_energy_series(double beta, int box_half_width, int r_max) {
    return free_energy_series_from_coeffs(beta, origin_loop_length_sums(box_half_width, r_max));
}

namespace {

// Dual weights exp(-2 beta) with the sign flipped on every dual edge
// crossed by the lattice path gamma.
EdgeWeightVector flipped_dual_weights(const EmbeddedGraph& dual, double beta,
                                      const std::vector<Coord>& gamma) {
    EdgeWeightVector x = EdgeWeightVector::uniform(dual, std::exp(-2.0 * beta));
    for (int e = 0; e < dual.edge_count(); ++e) {
        const Coord& a = dual.coord(dual.edge(e).u);
        const Coord& b = dual.coord(dual.edge(e).v);
        for (std::size_t i = 0; i + 1 < gamma.size(); ++i)
            if (segments_cross(a, b, gamma[i], gamma[i + 1])) {
                x[e] = -x[e];
                break;
            }
    }
    return x;
}

} // namespace

double two_point_plus(const EmbeddedGraph& g, double beta, int u, int v, Backend backend,
                      GammaRoute route) {
    require_vertex(g, u, "two-point");
    require_vertex(g, v, "two-point");
    if (u == v) throw InputError("two-point function needs u != v");
    const auto& rect = g.rectangle();
    if (!rect) throw InputError("plus-boundary observables need a rectangle");
    if (rect->width < 2 || rect->height < 2) return 1.0; // every spin is pinned
    const EmbeddedGraph dual = build_weak_dual(g);
    const auto gamma = l_path(g.coord(u), g.coord(v), route);
    const EdgeWeightVector x = EdgeWeightVector::uniform(dual, std::exp(-2.0 * beta));
    const EdgeWeightVector xp = flipped_dual_weights(dual, beta, gamma);
    return generating_function(dual, xp, backend) / generating_function(dual, x, backend);
}

double one_point_plus(const EmbeddedGraph& g, double beta, int u, Backend backend,
                      int boundary_v) {
    require_vertex(g, u, "one-point");
    if (on_boundary(g, u)) return 1.0;
    int v = boundary_v;
    if (v < 0) v = boundary_vertices(g).front();
    if (!on_boundary(g, v)) throw InputError("reference vertex must lie on the boundary");
    return two_point_plus(g, beta, u, v, backend);
}

TwoPointPlusSeries two_point_plus_series(const EmbeddedGraph& g, double beta, int u, int v,
                                         int r_max, GammaRoute route) {
    require_vertex(g, u, "two-point");
    require_vertex(g, v, "two-point");
    if (u == v) throw InputError("two-point function needs u != v");
    const double x0 = std::exp(-2.0 * beta);
    const double q = (std::sqrt(2.0) + 1.0) * x0;
    if (q >= 1.0)
        throw DomainError("uv-odd loop series is certified only for beta > beta_c");
    const EmbeddedGraph dual = build_weak_dual(g);
    const auto gamma = l_path(g.coord(u), g.coord(v), route);

    std::vector<bool> flipped(dual.edge_count(), false);
    for (int e = 0; e < dual.edge_count(); ++e) {
        const Coord& a = dual.coord(dual.edge(e).u);
        const Coord& b = dual.coord(dual.edge(e).v);
        for (std::size_t i = 0; i + 1 < gamma.size(); ++i)
            if (segments_cross(a, b, gamma[i], gamma[i + 1])) {
                flipped[e] = true;
                break;
            }
    }

    const EdgeWeightVector x = EdgeWeightVector::uniform(dual, x0);
    const auto acc = length_sums(
        dual, x, r_max,
        [&](const Loop& l) { return steps_on_edges(dual, l, flipped) % 2 == 1; });

    TwoPointPlusSeries out;
    out.r_max = r_max;
    out.value = std::exp(-2.0 * acc.sum());
    // |sum_{r>r_max} f^{uv}_r| <= sum_{r>r_max} 2 |V*| q^r / r
    double head = 0.0, qr = 1.0;
    for (int r = 1; r <= r_max; ++r) {
        qr *= q;
        head += qr / r;
    }
    const double tau = 2.0 * dual.vertex_count() * (-std::log1p(-q) - head);
    out.lower = out.value * std::exp(-2.0 * tau);
    out.upper = out.value * std::exp(2.0 * tau);
    return out;
}

DualPathConfig make_dual_path(const EmbeddedGraph& g, int u, int v, GammaRoute route,
                              int star_variant) {
    require_vertex(g, u, "dual path");
    require_vertex(g, v, "dual path");
    if (u == v) throw InputError("dual path needs u != v");
    const auto& rect = g.rectangle();
    if (!rect) throw InputError("dual path construction needs a rectangle");
    if (rect->width < 2 || rect->height < 2)
        throw InputError("dual path construction needs a rectangle with faces");

    auto pick_star = [&](int w) {
        const Coord base = g.coord(w);
        const Coord candidates[4] = {base + Coord::half(1, 1), base + Coord::half(-1, 1),
                                     base + Coord::half(-1, -1), base + Coord::half(1, -1)};
        std::vector<Coord> valid;
        for (const Coord& c : candidates) {
            const Coord off = c - rect->origin - Coord::half(1, 1);
            if (off.den == 1 && off.xn >= 0 && off.xn <= rect->width - 2 && off.yn >= 0 &&
                off.yn <= rect->height - 2)
                valid.push_back(c);
        }
        if (valid.empty()) throw InputError("no dual vertex adjacent to the given vertex");
        return star_variant == 0 ? valid.front() : valid.back();
    };

    DualPathConfig cfg;
    cfg.u = u;
    cfg.v = v;
    cfg.u_star = pick_star(u);
    cfg.v_star = pick_star(v);
    cfg.gamma = l_path(cfg.u_star, cfg.v_star, route);
    return cfg;
}

AugmentedGraph build_augmented(const EmbeddedGraph& g, const DualPathConfig& cfg) {
    std::vector<EmbeddedGraph::VertexSpec> vs;
    std::vector<EmbeddedGraph::EdgeSpec> es;
    for (int v = 0; v < g.vertex_count(); ++v) vs.push_back({v, g.coord(v)});
    for (int e = 0; e < g.edge_count(); ++e)
        es.push_back({g.edge(e).u, g.edge(e).v, g.edge(e).kind});

    std::int64_t next_id = g.vertex_count();
    std::vector<std::int64_t> gamma_ids;
    for (const Coord& c : cfg.gamma) {
        vs.push_back({next_id, c});
        gamma_ids.push_back(next_id);
        ++next_id;
    }
    es.push_back({cfg.u, gamma_ids.front(), EdgeKind::additional}); // uu*
    for (std::size_t i = 0; i + 1 < gamma_ids.size(); ++i)
        es.push_back({gamma_ids[i], gamma_ids[i + 1], EdgeKind::additional});
    es.push_back({cfg.v, gamma_ids.back(), EdgeKind::additional}); // vv*

    AugmentedGraph aug{EmbeddedGraph::build(std::move(vs), es), -1, {}};
    aug.vertex_map.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v)
        aug.vertex_map[v] = aug.graph.vertex_by_external(v);
    aug.uu_star_edge = aug.graph.find_edge(aug.vertex_map[cfg.u],
                                           aug.graph.find_vertex(cfg.u_star));
    return aug;
}

EdgeWeightVector gamma_weights(const AugmentedGraph& aug, double beta, double t) {
    const EmbeddedGraph& ga = aug.graph;
    const double xh = std::tanh(beta);
    std::vector<double> w(ga.edge_count());
    // A lattice edge picks up the minus sign exactly when it crosses a
    // gamma edge; the registry holds those pairs.
    std::vector<bool> crossed(ga.edge_count(), false);
    for (const auto& [e, f] : ga.crossings()) {
        if (ga.edge(e).kind == EdgeKind::representative &&
            ga.edge(f).kind == EdgeKind::additional)
            crossed[e] = true;
        if (ga.edge(f).kind == EdgeKind::representative &&
            ga.edge(e).kind == EdgeKind::additional)
            crossed[f] = true;
    }
    for (int e = 0; e < ga.edge_count(); ++e) {
        if (ga.edge(e).kind == EdgeKind::representative)
            w[e] = crossed[e] ? -xh : xh;
        else
            w[e] = 1.0;
    }
    w[aug.uu_star_edge] = t;
    return EdgeWeightVector(std::move(w));
}

double z_gamma(const AugmentedGraph& aug, double beta, double t, Backend backend) {
    return generating_function(aug.graph, gamma_weights(aug, beta, t), backend);
}

double two_point_free(const EmbeddedGraph& g, double beta, int u, int v, Backend backend,
                      GammaRoute route, int star_variant) {
    const DualPathConfig cfg = make_dual_path(g, u, v, route, star_variant);
    const AugmentedGraph aug = build_augmented(g, cfg);
    const double z1 = z_gamma(aug, beta, 1.0, backend);
    const double z0 = z_gamma(aug, beta, 0.0, backend);
    const double z =
        generating_function(g, EdgeWeightVector::uniform(g, std::tanh(beta)), backend);
    return (z1 - z0) / z;
}

TwoPointFreeSeries two_point_free_series(const EmbeddedGraph& g, double beta, int u, int v,
                                         int r_max, GammaRoute route, int star_variant) {
    const double q = std::tanh(beta) / std::tanh(beta_critical());
    if (q >= 1.0)
        throw DomainError("uu*-loop series is certified only for beta < beta_c");
    const DualPathConfig cfg = make_dual_path(g, u, v, route, star_variant);
    const AugmentedGraph aug = build_augmented(g, cfg);
    const EdgeWeightVector w1 = gamma_weights(aug, beta, 1.0);

    std::vector<bool> mark(aug.graph.edge_count(), false);
    mark[aug.uu_star_edge] = true;
    double series = 0.0;
    enumerate_loops(
        aug.graph, step_budget_for_length(aug.graph, r_max),
        [&](const Loop& l) { return steps_on_edges(aug.graph, l, mark) == 1; },
        [&](const Loop& l) { series += loop_weight(aug.graph, l, w1); }, r_max);

    // Z_G(x') / Z_G(x): x' is x'_gamma(0) restricted to the lattice edges.
    const double z0 = z_gamma(aug, beta, 0.0, Backend::enumeration);
    const double z =
        generating_function_bruteforce(g, EdgeWeightVector::uniform(g, std::tanh(beta)));
    TwoPointFreeSeries out;
    out.r_max = r_max;
    out.ratio = z0 / z;
    out.value = series * out.ratio;
    out.bound = 16.0 * std::pow(q, r_max + 1) / (1.0 - q);
    return out;
}

DecayCheck decay_bound_check(const EmbeddedGraph& g, double beta, int u, int v) {
    if (beta >= beta_critical())
        throw DomainError("decay bound applies below beta_c only");
    const Coord d = g.coord(v) - g.coord(u);
    const double dist = std::llabs(d.xn) + std::llabs(d.yn);
    const double q = std::tanh(beta) / std::tanh(beta_critical());
    DecayCheck out;
    out.value = two_point_free(g, beta, u, v, Backend::enumeration);
    out.bound = 16.0 * std::pow(q, dist) / (1.0 - q);
    out.pass = out.value >= 0.0 && out.value <= out.bound + 1e-12;
    return out;
}

std::vector<int> dual_primal_edge_map(const EmbeddedGraph& g, const EmbeddedGraph& dual) {
    std::vector<int> map(dual.edge_count(), -1);
    for (int e = 0; e < dual.edge_count(); ++e) {
        const Coord& a = dual.coord(dual.edge(e).u);
        const Coord& b = dual.coord(dual.edge(e).v);
        for (int f = 0; f < g.edge_count(); ++f)
            if (segments_cross(a, b, g.coord(g.edge(f).u), g.coord(g.edge(f).v))) {
                map[e] = f;
                break;
            }
    }
    return map;
}

} // namespace slising
