#include "loops.hpp"

#include "errors.hpp"
#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace slising {

namespace {

constexpr double TWO_PI = 2.0 * M_PI;
constexpr double WINDING_TOL = 1e-9;

void validate_closed_path(const EmbeddedGraph& g, const std::vector<int>& p) {
    const int n = static_cast<int>(p.size());
    if (n < 3) throw InputError("closed path needs at least 3 steps");
    for (int v : p)
        if (v < 0 || v >= g.vertex_count()) throw InputError("unknown vertex id in path");
    for (int i = 0; i < n; ++i)
        if (g.find_edge(p[i], p[(i + 1) % n]) < 0)
            throw InputError("consecutive path vertices are not adjacent");
    for (int i = 0; i < n; ++i)
        if (p[i] == p[(i + 2) % n]) throw InputError("backtracking step in closed path");
}

std::vector<int> canonical_sequence(const std::vector<int>& p) {
    const int n = static_cast<int>(p.size());
    std::vector<int> best = p, cand(n);
    auto consider = [&](const std::vector<int>& base) {
        for (int s = 0; s < n; ++s) {
            for (int i = 0; i < n; ++i) cand[i] = base[(s + i) % n];
            if (cand < best) best = cand;
        }
    };
    consider(p);
    std::vector<int> rev(p.rbegin(), p.rend());
    consider(rev);
    return best;
}

int smallest_period(const std::vector<int>& p) {
    const int n = static_cast<int>(p.size());
    for (int period = 1; period <= n; ++period) {
        if (n % period) continue;
        bool ok = true;
        for (int i = 0; ok && i < n; ++i) ok = p[i] == p[(i + period) % n];
        if (ok) return period;
    }
    return n;
}

} // namespace

Loop canonicalize(const EmbeddedGraph& g, const std::vector<int>& closed_path) {
    validate_closed_path(g, closed_path);
    Loop l;
    l.seq = canonical_sequence(closed_path);
    const int n = l.steps();
    l.multiplicity = n / smallest_period(l.seq);

    double alpha = 0.0;
    for (int i = 0; i < n; ++i)
        alpha += turning_angle(g.coord(l.seq[i]), g.coord(l.seq[(i + 1) % n]),
                               g.coord(l.seq[(i + 2) % n]));
    const double k = std::round(alpha / TWO_PI);
    if (std::fabs(alpha - k * TWO_PI) > WINDING_TOL)
        throw NumericError("winding angle " + std::to_string(alpha) +
                           " is not a multiple of 2*pi");
    l.winding = alpha;
    // sgn = -exp(i*alpha/2) = -(-1)^k
    l.sign = (static_cast<long long>(k) % 2 == 0) ? -1 : 1;

    l.length = 0;
    for (int i = 0; i < n; ++i)
        if (g.edge(g.find_edge(l.seq[i], l.seq[(i + 1) % n])).kind == EdgeKind::representative)
            ++l.length;
    return l;
}

double loop_weight(const EmbeddedGraph& g, const Loop& loop, const EdgeWeightVector& x) {
    if (x.size() != g.edge_count()) throw InputError("weight vector does not match graph");
    double prod = 1.0;
    const int n = loop.steps();
    for (int i = 0; i < n; ++i) prod *= x[g.find_edge(loop.seq[i], loop.seq[(i + 1) % n])];
    return loop.sign * prod / loop.multiplicity;
}

bool loop_edge_disjoint(const EmbeddedGraph& g, const Loop& loop) {
    std::vector<int> used;
    const int n = loop.steps();
    for (int i = 0; i < n; ++i) used.push_back(g.find_edge(loop.seq[i], loop.seq[(i + 1) % n]));
    std::sort(used.begin(), used.end());
    return std::adjacent_find(used.begin(), used.end()) == used.end();
}

int steps_on_edges(const EmbeddedGraph& g, const Loop& loop, const std::vector<bool>& edge_mark) {
    int c = 0;
    const int n = loop.steps();
    for (int i = 0; i < n; ++i)
        if (edge_mark[g.find_edge(loop.seq[i], loop.seq[(i + 1) % n])]) ++c;
    return c;
}

namespace {

struct LoopDfs {
    const EmbeddedGraph& g;
    int max_steps;
    int max_length;
    int anchor;
    const LoopFilter& filter;
    const LoopSink& yield;
    std::vector<int> path;
    std::vector<int> hops_to_anchor; // BFS lower bound on steps needed to close

    void run() {
        hops_to_anchor.assign(g.vertex_count(), -1);
        std::queue<int> q;
        q.push(anchor);
        hops_to_anchor[anchor] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const auto& [nb, eid] : g.neighbors(v))
                if (hops_to_anchor[nb] < 0) {
                    hops_to_anchor[nb] = hops_to_anchor[v] + 1;
                    q.push(nb);
                }
        }
        path = {anchor};
        extend(0);
    }

    void emit_candidate(int closing_length) {
        if (max_length >= 0 && closing_length > max_length) return;
        const int n = static_cast<int>(path.size());
        // Cyclic non-backtracking at the seam.
        if (path[n - 2] == anchor || path[1] == path[n - 1]) return;
        Loop l = canonicalize(g, path);
        if (l.seq != path) return; // emitted from its canonical representation only
        if (!filter || filter(l)) yield(l);
    }

    void extend(int length_so_far) {
        const int cur = path.back();
        const int steps_so_far = static_cast<int>(path.size()) - 1;
        for (const auto& [nb, eid] : g.neighbors(cur)) {
            if (nb < anchor) continue;
            if (path.size() >= 2 && nb == path[path.size() - 2]) continue;
            const int step_len =
                g.edge(eid).kind == EdgeKind::representative ? 1 : 0;
            if (steps_so_far + 1 > max_steps) continue;
            if (max_length >= 0 && length_so_far + step_len > max_length) continue;
            if (nb == anchor && path.size() >= 3) emit_candidate(length_so_far + step_len);
            if (steps_so_far + 1 + hops_to_anchor[nb] <= max_steps) {
                path.push_back(nb);
                extend(length_so_far + step_len);
                path.pop_back();
            }
        }
    }
};

} // namespace

void enumerate_loops(const EmbeddedGraph& g, int max_steps, const LoopFilter& filter,
                     const LoopSink& yield, int max_length, int anchor) {
    if (max_steps < 3) throw InputError("loop enumeration needs max_steps >= 3");
    if (anchor >= g.vertex_count()) throw InputError("anchor vertex out of range");
    if (anchor >= 0) {
        LoopDfs dfs{g, max_steps, max_length, anchor, filter, yield, {}, {}};
        dfs.run();
        return;
    }
    for (int a = 0; a < g.vertex_count(); ++a) {
        LoopDfs dfs{g, max_steps, max_length, a, filter, yield, {}, {}};
        dfs.run();
    }
}

double LoopSeriesAccumulator::sum() const {
    double s = 0.0;
    for (const auto& [r, f] : per_length) s += f;
    return s;
}

double LoopSeriesAccumulator::at(int r) const {
    auto it = per_length.find(r);
    return it == per_length.end() ? 0.0 : it->second;
}

int step_budget_for_length(const EmbeddedGraph& g, int r_max) {
    if (!g.has_additional_edges()) return r_max;
    const int chain = g.additional_forest_diameter();
    return r_max * (1 + chain) + chain;
}

LoopSeriesAccumulator length_sums(const EmbeddedGraph& g, const EdgeWeightVector& x, int r_max,
                                  const LoopFilter& filter, int anchor) {
    LoopSeriesAccumulator acc;
    acc.r_max = r_max;
    enumerate_loops(
        g, std::max(3, step_budget_for_length(g, r_max)), filter,
        [&](const Loop& l) { acc.per_length[l.length] += loop_weight(g, l, x); }, r_max, anchor);

    const double q = (std::sqrt(2.0) + 1.0) * x.sup_norm();
    if (g.rectangle() && q < 1.0) {
        // sum_{r>r_max} q^r / r = -ln(1-q) - sum_{r<=r_max} q^r / r
        double head = 0.0, qr = 1.0;
        for (int r = 1; r <= r_max; ++r) {
            qr *= q;
            head += qr / r;
        }
        acc.tail_bound = 2.0 * g.vertex_count() * (-std::log1p(-q) - head);
    } else {
        acc.tail_bound = std::numeric_limits<double>::infinity();
    }
    return acc;
}

std::string loop_census_csv(const EmbeddedGraph& g, int max_steps) {
    std::vector<Loop> loops;
    enumerate_loops(g, max_steps, nullptr, [&](const Loop& l) { loops.push_back(l); });
    std::sort(loops.begin(), loops.end(), [](const Loop& a, const Loop& b) {
        if (a.steps() != b.steps()) return a.steps() < b.steps();
        return a.seq < b.seq;
    });
    std::ostringstream out;
    out << "n,r,m,sign,sequence\n";
    for (const Loop& l : loops) {
        out << l.steps() << ',' << l.length << ',' << l.multiplicity << ',' << l.sign << ",\"";
        for (std::size_t i = 0; i < l.seq.size(); ++i) {
            if (i) out << ' ';
            out << g.coord(l.seq[i]).str();
        }
        out << "\"\n";
    }
    return out.str();
}

} // namespace slising
