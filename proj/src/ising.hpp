#pragma once

#include "graph.hpp"
#include "weights.hpp"

#include <vector>

namespace slising {

enum class Boundary { free_bc, plus_bc };
enum class Backend { enumeration, determinant };
enum class GammaRoute { horizontal_first, vertical_first };

struct IsingSpec {
    const EmbeddedGraph& rectangle;
    double beta;
    Boundary boundary;
};

/// Exact Gibbs sums over all spin configurations (boundary spins pinned to
/// +1 under plus boundary conditions). Capped at 20 free spins.
double gibbs_partition(const IsingSpec& spec);
double gibbs_one_point(const IsingSpec& spec, int u);
double gibbs_two_point(const IsingSpec& spec, int u, int v);

/// Z^free = 2^|V| (cosh beta)^|E| Z_G(tanh beta).
double high_temp_partition(const EmbeddedGraph& g, double beta, Backend backend);

/// Z^plus = exp(beta |E|) Z_{G*}(exp(-2 beta)) over the weak dual.
double low_temp_partition(const EmbeddedGraph& g, double beta, Backend backend);

/// Inverse temperature dual to beta: exp(-2 beta*) = tanh(beta).
double dual_beta(double beta);

/// f_r(1) restricted to loops whose smallest vertex is the centre of a
/// (2 box_half_width + 1)^2 box, for r = 1..r_max. With box_half_width >=
/// r_max these coincide with the origin-anchored sums on the full lattice.
std::vector<double> origin_loop_length_sums(int box_half_width, int r_max);

struct FreeEnergySeries {
    double value; // truncated -beta f(beta)
    double tail;  // bound on the dropped remainder
    double x;     // expansion weight actually used
    int r_max;
};

/// Branch-appropriate truncation of
///   -beta f = ln(2 cosh^2 beta) + sum f_r(tanh beta)     (beta < beta_c)
///   -beta f = 2 beta + sum f_r(exp(-2 beta))             (beta > beta_c)
FreeEnergySeries free_energy_series(double beta, int box_half_width, int r_max);
FreeEnergySeries free_energy_series_from_coeffs(double beta, const std::vector<double>& coeffs);

/// Plus-boundary two-point function as the ratio Z_{G*}(x') / Z_{G*}(x),
/// with x' = -x on dual edges crossed by a self-avoiding lattice path from
/// u to v (an L-path; the route picks which leg comes first).
double two_point_plus(const EmbeddedGraph& g, double beta, int u, int v, Backend backend,
                      GammaRoute route = GammaRoute::horizontal_first);

/// One-point function as a two-point function against a pinned boundary
/// spin; boundary_v < 0 selects the lexicographically smallest boundary
/// vertex. Returns 1 exactly when u itself sits on the boundary.
double one_point_plus(const EmbeddedGraph& g, double beta, int u, Backend backend,
                      int boundary_v = -1);

struct TwoPointPlusSeries {
    double value; // exp(-2 sum_{r<=r_max} f^{uv}_r)
    double lower; // rigorous bracket from the tail bound
    double upper;
    int r_max;
};

/// Loop-series form of the plus-boundary two-point function over uv-odd
/// dual loops; certified only for beta > beta_c.
TwoPointPlusSeries two_point_plus_series(const EmbeddedGraph& g, double beta, int u, int v,
                                         int r_max, GammaRoute route = GammaRoute::horizontal_first);

/// The dual-path construction behind the free-boundary two-point function:
/// dual endpoints u*, v* at distance 1 from u and v, a self-avoiding dual
/// path gamma between them, and the additional edge set
/// E_gamma = {uu*, vv*} union gamma.
struct DualPathConfig {
    int u;
    int v;
    Coord u_star;
    Coord v_star;
    std::vector<Coord> gamma; // dual vertices from u* to v*, inclusive
};

DualPathConfig make_dual_path(const EmbeddedGraph& g, int u, int v,
                              GammaRoute route = GammaRoute::horizontal_first,
                              int star_variant = 0);

struct AugmentedGraph {
    EmbeddedGraph graph;   // g plus the dual-path vertices and edges
    int uu_star_edge;      // edge id of uu* in graph
    std::vector<int> vertex_map; // g vertex id -> augmented vertex id
};

AugmentedGraph build_augmented(const EmbeddedGraph& g, const DualPathConfig& cfg);

/// Weight vector x'_gamma(t) on an augmented graph: tanh(beta) on lattice
/// edges, negated on those crossing gamma, 1 on E_gamma minus uu*, t on uu*.
EdgeWeightVector gamma_weights(const AugmentedGraph& aug, double beta, double t);

/// Z_{G_gamma}(x'_gamma(t)); affine in t because an even subgraph can use
/// uu* at most once.
double z_gamma(const AugmentedGraph& aug, double beta, double t, Backend backend);

/// Free-boundary two-point function via the affine t-derivative,
///   Z_G(x) <sigma_u sigma_v> = Z_{G_gamma}(x'(1)) - Z_{G_gamma}(x'(0)).
double two_point_free(const EmbeddedGraph& g, double beta, int u, int v, Backend backend,
                      GammaRoute route = GammaRoute::horizontal_first, int star_variant = 0);

struct TwoPointFreeSeries {
    double value;  // (sum_{r<=r_max} f^{uu*}_r(x'_gamma(1))) * Z_G(x')/Z_G(x)
    double bound;  // tail bound 16 sum_{r>r_max} (tanh beta / tanh beta_c)^r
    double ratio;  // the Z_G(x')/Z_G(x) factor
    int r_max;
};

/// Factored loop-series form over loops through uu*; certified only for
/// beta < beta_c.
TwoPointFreeSeries two_point_free_series(const EmbeddedGraph& g, double beta, int u, int v,
                                         int r_max, GammaRoute route = GammaRoute::horizontal_first,
                                         int star_variant = 0);

struct DecayCheck {
    double value;
    double bound; // 16 sum_{r >= |u-v|_1} (tanh beta / tanh beta_c)^r
    bool pass;    // 0 <= value <= bound
};

/// Corollary bound on free-boundary two-point decay, beta < beta_c.
DecayCheck decay_bound_check(const EmbeddedGraph& g, double beta, int u, int v);

/// For each weak-dual edge, the primal edge it crosses.
std::vector<int> dual_primal_edge_map(const EmbeddedGraph& g, const EmbeddedGraph& dual);

} // namespace slising
