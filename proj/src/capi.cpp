#include "slising/slising.h"

#include "errors.hpp"
#include "even_subsets.hpp"
#include "graph.hpp"
#include "ising.hpp"
#include "kac_ward.hpp"
#include "verify.hpp"
#include "weights.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

struct slising_graph {
    slising::EmbeddedGraph g;
};

struct slising_weights {
    slising::EdgeWeightVector w;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
slising_status wrap(F&& f) {
    try {
        f();
        g_last_error.clear();
        return SLISING_OK;
    } catch (const slising::InputError& e) {
        g_last_error = e.what();
        return SLISING_ERR_INVALID_INPUT;
    } catch (const slising::CapError& e) {
        g_last_error = e.what();
        return SLISING_ERR_CAP_EXCEEDED;
    } catch (const slising::DomainError& e) {
        g_last_error = e.what();
        return SLISING_ERR_DOMAIN;
    } catch (const slising::NumericError& e) {
        g_last_error = e.what();
        return SLISING_ERR_NUMERIC;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SLISING_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return SLISING_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

slising::Backend to_backend(slising_backend b) {
    return b == SLISING_BACKEND_DETERMINANT ? slising::Backend::determinant
                                            : slising::Backend::enumeration;
}

slising::GammaRoute to_route(int32_t r) {
    return r == 1 ? slising::GammaRoute::vertical_first : slising::GammaRoute::horizontal_first;
}

int resolve_vertex(const slising::EmbeddedGraph& g, int32_t x, int32_t y) {
    const auto& rect = g.rectangle();
    if (!rect) throw slising::InputError("graph is not a rectangle");
    const int v = g.find_vertex(rect->origin + slising::Coord(x, y));
    if (v < 0)
        throw slising::InputError("no vertex at offset (" + std::to_string(x) + "," +
                                  std::to_string(y) + ")");
    return v;
}

} // namespace

extern "C" {

const char* slising_version(void) { return "1.0.0"; }

const char* slising_last_error(void) { return g_last_error.c_str(); }

slising_status slising_graph_rectangle(int32_t width, int32_t height, slising_graph** out) {
    return wrap([&] { *out = new slising_graph{slising::build_rectangle(width, height)}; });
}

slising_status slising_graph_torus(int32_t m, int32_t n, slising_graph** out) {
    return wrap([&] { *out = new slising_graph{slising::build_torus({m, n}).graph}; });
}

slising_status slising_graph_from_json(const char* json, slising_graph** out) {
    return wrap([&] {
        if (!json) throw slising::InputError("null JSON text");
        *out = new slising_graph{slising::EmbeddedGraph::from_json(json)};
    });
}

slising_status slising_graph_weak_dual(const slising_graph* g, slising_graph** out) {
    return wrap([&] { *out = new slising_graph{slising::build_weak_dual(g->g)}; });
}

void slising_graph_free(slising_graph* g) { delete g; }

int32_t slising_graph_vertex_count(const slising_graph* g) { return g->g.vertex_count(); }

int32_t slising_graph_edge_count(const slising_graph* g) { return g->g.edge_count(); }

slising_status slising_graph_to_json(const slising_graph* g, char** out) {
    return wrap([&] { *out = dup_string(g->g.to_json()); });
}

slising_status slising_weights_uniform(const slising_graph* g, double value,
                                       slising_weights** out) {
    return wrap([&] {
        *out = new slising_weights{slising::EdgeWeightVector::uniform(g->g, value)};
    });
}

slising_status slising_weights_from_json(const slising_graph* g, const char* json,
                                         slising_weights** out) {
    return wrap([&] {
        if (!json) throw slising::InputError("null JSON text");
        *out = new slising_weights{slising::EdgeWeightVector::from_json(g->g, json)};
    });
}

void slising_weights_free(slising_weights* w) { delete w; }

slising_status slising_generating_function(const slising_graph* g, const slising_weights* w,
                                           slising_backend backend, double* out) {
    return wrap([&] {
        if (backend == SLISING_BACKEND_DETERMINANT)
            *out = slising::determinant_evaluation(slising::build_transition_matrix(g->g, w->w));
        else
            *out = slising::generating_function_bruteforce(g->g, w->w);
    });
}

slising_status slising_partition_function(const slising_graph* g, double beta,
                                          slising_boundary bc, slising_backend backend,
                                          double* out) {
    return wrap([&] {
        if (bc == SLISING_BC_PLUS)
            *out = slising::low_temp_partition(g->g, beta, to_backend(backend));
        else
            *out = slising::high_temp_partition(g->g, beta, to_backend(backend));
    });
}

slising_status slising_free_energy_onsager(double beta, double* value, double* err) {
    return wrap([&] {
        const auto res = slising::onsager_integral(beta);
        *value = res.value;
        if (err) *err = res.richardson;
    });
}

slising_status slising_free_energy_series(double beta, int32_t r_max, double* value,
                                          double* tail) {
    return wrap([&] {
        const auto res = slising::free_energy_series(beta, r_max, r_max);
        *value = res.value;
        if (tail) *tail = res.tail;
    });
}

slising_status slising_two_point_plus(const slising_graph* g, double beta, int32_t ux,
                                      int32_t uy, int32_t vx, int32_t vy,
                                      slising_backend backend, int32_t route, double* out) {
    return wrap([&] {
        *out = slising::two_point_plus(g->g, beta, resolve_vertex(g->g, ux, uy),
                                       resolve_vertex(g->g, vx, vy), to_backend(backend),
                                       to_route(route));
    });
}

slising_status slising_one_point_plus(const slising_graph* g, double beta, int32_t ux,
                                      int32_t uy, slising_backend backend, double* out) {
    return wrap([&] {
        *out = slising::one_point_plus(g->g, beta, resolve_vertex(g->g, ux, uy),
                                       to_backend(backend));
    });
}

slising_status slising_two_point_free(const slising_graph* g, double beta, int32_t ux,
                                      int32_t uy, int32_t vx, int32_t vy,
                                      slising_backend backend, int32_t route, double* out) {
    return wrap([&] {
        *out = slising::two_point_free(g->g, beta, resolve_vertex(g->g, ux, uy),
                                       resolve_vertex(g->g, vx, vy), to_backend(backend),
                                       to_route(route));
    });
}

slising_status slising_decay_bound(const slising_graph* g, double beta, int32_t ux, int32_t uy,
                                   int32_t vx, int32_t vy, double* value, double* bound,
                                   int32_t* pass) {
    return wrap([&] {
        const auto res = slising::decay_bound_check(g->g, beta, resolve_vertex(g->g, ux, uy),
                                                    resolve_vertex(g->g, vx, vy));
        *value = res.value;
        *bound = res.bound;
        *pass = res.pass ? 1 : 0;
    });
}

slising_status slising_torus_operator_norm(int32_t m, int32_t n, double* out) {
    return wrap([&] {
        const auto torus = slising::build_torus({m, n});
        *out = slising::operator_norm_bound(torus.lambda);
    });
}

slising_status slising_torus_fourier_determinant(int32_t m, int32_t n, double x, double* out) {
    return wrap([&] { *out = slising::torus_fourier_determinant({m, n}, x); });
}

slising_status slising_beta_critical(double* out) {
    return wrap([&] { *out = slising::beta_critical(); });
}

slising_status slising_verify(const char* suite, char** report, int32_t* pass) {
    return wrap([&] {
        if (!suite) throw slising::InputError("null suite name");
        const auto rep = slising::verify_suite(suite);
        if (report) *report = dup_string(rep.detail.dump(2));
        if (pass) *pass = rep.pass ? 1 : 0;
    });
}

void slising_string_free(char* s) { std::free(s); }

} // extern "C"
