#pragma once

#include "graph.hpp"
#include "loops.hpp"
#include "weights.hpp"

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

namespace slising {

/// Kac-Ward transition matrix over the directed representative edges of an
/// embedded graph. Entry (uv, wz) carries the row edge weight x_uv times
/// the weights of the unique additional-edge chain linking v to w (when
/// there is one) times exp(i/2 * total turning angle).
struct TransitionMatrix {
    struct DirEdge {
        int tail;
        int head;
        int edge;
    };
    std::vector<DirEdge> index;
    Eigen::MatrixXcd m;
    double sup_weight = 0.0;        // ||x||_inf of the weight vector used
    bool plain_rectangle = false;   // rectangle with no additional edges

    int dim() const { return static_cast<int>(index.size()); }
};

TransitionMatrix build_transition_matrix(const EmbeddedGraph& g, const EdgeWeightVector& x);

/// Largest singular value (operator norm) of Lambda.
double operator_norm_bound(const TransitionMatrix& tm);

/// Exact spectral radius from the dense eigenvalue decomposition.
double spectral_radius(const TransitionMatrix& tm);

/// True when rho(Lambda) < 1 can be certified: first the cheap rectangle
/// bound (sqrt2+1)*||x||_inf < 1, then the operator norm, then the
/// eigenvalue decomposition.
bool certify_spectral_radius(const TransitionMatrix& tm);

/// Z(x) = sqrt(det(Id - Lambda(x))). Requires a certified spectral radius
/// (DomainError otherwise); the determinant must come out real and positive
/// (NumericError otherwise).
double determinant_evaluation(const TransitionMatrix& tm);

struct TraceIdentityReport {
    struct Row {
        int r;
        double trace;     // real part of tr Lambda^r
        double f_r;       // signed loop weight sum at length r
        double residual;  // |tr + 2 r f_r| plus any imaginary leakage
        bool pass;
    };
    std::vector<Row> rows;
    bool pass = true;
};

/// Checks tr Lambda^r = -2 r f_r against a loop census (per-length sums).
TraceIdentityReport trace_identity_check(const TransitionMatrix& tm,
                                         const LoopSeriesAccumulator& census, int r_max,
                                         double tol = 1e-9);

struct TorusSpec {
    int m; // columns
    int n; // rows
};

/// Plane representation of the M x N square lattice wrapped on a torus:
/// the rectangle plus one extra representative edge per row (right side)
/// and per column (top side), with chains of additional edges routed
/// outside the rectangle connecting the new vertices back to the opposite
/// side. Every chain makes four quarter-turns of the same handedness and
/// carries edge-weight product -1 (a single -1 on its first edge), which
/// compensates the winding the detour adds. Representative weights are 1.
struct Torus {
    EmbeddedGraph graph;
    EdgeWeightVector weights;
    TransitionMatrix lambda;
};

Torus build_torus(const TorusSpec& spec);

/// prod_{p<M, q<N} [(1+x^2)^2 - 2x(1-x^2)(cos(2 pi p/M) + cos(2 pi q/N))],
/// the Fourier-diagonalized form of det(Id - x Lambda_torus).
double torus_fourier_determinant(const TorusSpec& spec, double x);

struct OnsagerResult {
    double value = 0.0;       // -beta f(beta)
    double richardson = 0.0;  // difference between the last two grids
    int nodes = 0;            // final grid size per axis
    bool reduced_accuracy = false;
};

/// -beta f(beta) = (1/8 pi^2) int int ln[4 cosh^2 2b - 4 sinh 2b (cos w1 + cos w2)]
/// by the periodic trapezoid rule, doubling the grid from 256 until two
/// successive values agree to 1e-8 (cap 2048). Flags reduced accuracy when
/// the cap is hit, which happens only near the self-dual point.
OnsagerResult onsager_integral(double beta);

/// The self-dual point ln(1+sqrt2)/2, and a bisection solver for
/// exp(-2 beta) = tanh(beta) used to cross-check it.
double beta_critical();
double beta_critical_bisect(double tol = 1e-14);

} // namespace slising
