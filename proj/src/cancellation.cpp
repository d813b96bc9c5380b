#include "cancellation.hpp"

#include "errors.hpp"
#include "even_subsets.hpp"
#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace slising {

namespace {

// Interleaving of two vertex strands around a common apex: sort the four
// ray directions in clockwise order; the strands cross exactly when their
// tags alternate around the circle.
bool strands_cross(const EmbeddedGraph& g, int apex, int a_prev, int a_next, int b_prev,
                   int b_next) {
    struct Tagged {
        Coord dir;
        int tag;
    };
    const Coord& c = g.coord(apex);
    std::vector<Tagged> dirs{{g.coord(a_prev) - c, 0},
                             {g.coord(a_next) - c, 0},
                             {g.coord(b_prev) - c, 1},
                             {g.coord(b_next) - c, 1}};
    std::sort(dirs.begin(), dirs.end(), [](const Tagged& x, const Tagged& y) {
        return ClockwiseFromNorth{}(x.dir, y.dir);
    });
    return dirs[0].tag != dirs[1].tag && dirs[1].tag != dirs[2].tag && dirs[2].tag != dirs[3].tag;
}

} // namespace

int vertex_self_crossings(const EmbeddedGraph& g, const Loop& loop) {
    const int n = loop.steps();
    auto at = [&](int i) { return loop.seq[((i % n) + n) % n]; };
    int c = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (at(i) != at(j)) continue;
            if (strands_cross(g, at(i), at(i - 1), at(i + 1), at(j - 1), at(j + 1))) ++c;
        }
    return c;
}

int edge_self_crossings(const EmbeddedGraph& g, const Loop& loop) {
    const int n = loop.steps();
    int c = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const int e = g.find_edge(loop.seq[i], loop.seq[(i + 1) % n]);
            const int f = g.find_edge(loop.seq[j], loop.seq[(j + 1) % n]);
            if (g.edges_cross(e, f)) ++c;
        }
    return c;
}

namespace {

// All pairings of the slot list 0..2k-1, as vectors mapping slot -> mate.
void enumerate_pairings(int slots, const std::function<void(const std::vector<int>&)>& sink) {
    std::vector<int> mate(slots, -1);
    std::function<void()> rec = [&]() {
        int first = -1;
        for (int i = 0; i < slots; ++i)
            if (mate[i] < 0) {
                first = i;
                break;
            }
        if (first < 0) {
            sink(mate);
            return;
        }
        for (int j = first + 1; j < slots; ++j) {
            if (mate[j] >= 0) continue;
            mate[first] = j;
            mate[j] = first;
            rec();
            mate[first] = mate[j] = -1;
        }
    };
    rec();
}

} // namespace

std::pair<long long, long long> pairing_parity_census(int k) {
    if (k < 1 || k > 6) throw InputError("pairing census supports 1 <= k <= 6");
    long long even = 0, odd = 0;
    enumerate_pairings(2 * k, [&](const std::vector<int>& mate) {
        // Chords {a,b} and {c,d} interleave iff a < c < b < d.
        int crossings = 0;
        for (int a = 0; a < 2 * k; ++a) {
            if (mate[a] < a) continue;
            for (int c = a + 1; c < mate[a]; ++c)
                if (mate[c] > mate[a]) ++crossings;
        }
        (crossings % 2 == 0 ? even : odd) += 1;
    });
    return {even, odd};
}

std::vector<std::vector<Loop>> decompose_even_subset(const EmbeddedGraph& g,
                                                     const std::vector<int>& edge_ids) {
    const EdgeSet f = edge_ids_to_set(g, edge_ids);
    if (!is_even_subset(g, f)) throw InputError("subset has a vertex of odd degree");

    // Slots: per vertex, the incident edges of F.
    std::vector<std::vector<int>> slots(g.vertex_count());
    for (int e : edge_ids) {
        slots[g.edge(e).u].push_back(e);
        slots[g.edge(e).v].push_back(e);
    }
    std::vector<int> busy;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!slots[v].empty()) busy.push_back(v);

    std::vector<std::vector<Loop>> out;
    // Current pairing: per vertex, slot -> mate slot.
    std::map<int, std::vector<int>> pairing;

    std::function<void(std::size_t)> rec = [&](std::size_t bi) {
        if (bi == busy.size()) {
            // Trace the loops defined by this pairing.
            std::set<int> unvisited(edge_ids.begin(), edge_ids.end());
            std::vector<Loop> loops;
            while (!unvisited.empty()) {
                const int e0 = *unvisited.begin();
                std::vector<int> path{g.edge(e0).u, g.edge(e0).v};
                int cur_edge = e0;
                unvisited.erase(e0);
                for (;;) {
                    const int at = path.back();
                    const auto& sl = slots[at];
                    const auto& mt = pairing[at];
                    int idx = -1;
                    for (std::size_t i = 0; i < sl.size(); ++i)
                        if (sl[i] == cur_edge) idx = static_cast<int>(i);
                    const int next_edge = sl[mt[idx]];
                    if (next_edge == e0) break; // closed back onto the start edge
                    const int nxt = g.edge(next_edge).u == at ? g.edge(next_edge).v
                                                              : g.edge(next_edge).u;
                    unvisited.erase(next_edge);
                    path.push_back(nxt);
                    cur_edge = next_edge;
                }
                path.pop_back(); // final vertex repeats the start
                loops.push_back(canonicalize(g, path));
            }
            std::sort(loops.begin(), loops.end());
            out.push_back(std::move(loops));
            return;
        }
        const int v = busy[bi];
        enumerate_pairings(static_cast<int>(slots[v].size()), [&](const std::vector<int>& mate) {
            pairing[v] = mate;
            rec(bi + 1);
        });
    };
    rec(0);
    return out;
}

SignedDecompositionReport verify_signed_decomposition(const EmbeddedGraph& g,
                                                      const std::vector<int>& edge_ids) {
    SignedDecompositionReport rep;
    rep.expected = crossing_count(g, edge_ids) % 2 == 0 ? 1 : -1;
    for (const auto& loops : decompose_even_subset(g, edge_ids)) {
        ++rep.decompositions;
        int s = 1;
        for (const Loop& l : loops) s *= l.sign;
        rep.sign_sum += s;
    }
    rep.pass = rep.sign_sum == rep.expected;
    return rep;
}

std::vector<Loop> loop_census(const EmbeddedGraph& g, int max_length) {
    std::vector<Loop> census;
    enumerate_loops(
        g, std::max(3, step_budget_for_length(g, max_length)), nullptr,
        [&](const Loop& l) { census.push_back(l); }, max_length);
    std::sort(census.begin(), census.end());
    return census;
}

namespace {

bool loops_share_edge(const EmbeddedGraph& g, const Loop& a, const Loop& b) {
    std::set<int> ea;
    for (int i = 0; i < a.steps(); ++i)
        ea.insert(g.find_edge(a.seq[i], a.seq[(i + 1) % a.steps()]));
    for (int i = 0; i < b.steps(); ++i)
        if (ea.count(g.find_edge(b.seq[i], b.seq[(i + 1) % b.steps()]))) return true;
    return false;
}

bool collection_edge_disjoint(const EmbeddedGraph& g, const std::vector<Loop>& loops) {
    for (std::size_t i = 0; i < loops.size(); ++i) {
        if (!loop_edge_disjoint(g, loops[i])) return false;
        for (std::size_t j = i + 1; j < loops.size(); ++j) {
            if (loops[i] == loops[j]) return false; // repeated loop shares its own edges
            if (loops_share_edge(g, loops[i], loops[j])) return false;
        }
    }
    return true;
}

} // namespace

std::vector<LoopConfiguration> enumerate_configurations(const EmbeddedGraph& g,
                                                        const std::vector<Loop>& census, int r,
                                                        int cap) {
    if (r > cap)
        throw CapError("configuration enumeration refused: total length " + std::to_string(r) +
                       " exceeds cap " + std::to_string(cap));
    std::vector<LoopConfiguration> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int remaining) {
        if (remaining == 0 && !cur.empty()) {
            LoopConfiguration cfg;
            cfg.loops = cur;
            cfg.total_length = r;
            std::vector<Loop> loops;
            for (int i : cur) loops.push_back(census[i]);
            cfg.edge_disjoint = collection_edge_disjoint(g, loops);
            out.push_back(std::move(cfg));
        }
        for (std::size_t i = 0; i < census.size(); ++i) {
            const int len = census[i].length;
            if (len <= 0 || len > remaining) continue;
            cur.push_back(static_cast<int>(i));
            rec(remaining - len);
            cur.pop_back();
        }
    };
    rec(r);
    return out;
}

CancellationReport verify_cancellation(const EmbeddedGraph& g, int r, const EdgeWeightVector& x) {
    const auto census = loop_census(g, r);
    CancellationReport rep;

    // Sum over multisets: the s!/prod(k_i!) orderings of a multiset each
    // contribute (1/s!) prod w, so a multiset contributes prod w^{k_i}/k_i!.
    std::vector<int> counts(census.size(), 0);
    std::vector<double> weights(census.size());
    for (std::size_t i = 0; i < census.size(); ++i)
        weights[i] = loop_weight(g, census[i], x);

    std::function<void(std::size_t, int)> rec = [&](std::size_t lo, int remaining) {
        if (remaining == 0) {
            std::vector<Loop> loops;
            for (std::size_t i = 0; i < census.size(); ++i)
                for (int k = 0; k < counts[i]; ++k) loops.push_back(census[i]);
            if (loops.empty() || collection_edge_disjoint(g, loops)) return;
            double term = 1.0;
            for (std::size_t i = 0; i < census.size(); ++i) {
                for (int k = 1; k <= counts[i]; ++k) term *= weights[i] / k;
            }
            rep.signed_sum += term;
            ++rep.configurations;
            return;
        }
        for (std::size_t i = lo; i < census.size(); ++i) {
            const int len = census[i].length;
            if (len <= 0 || len > remaining) continue;
            ++counts[i];
            rec(i, remaining - len);
            --counts[i];
        }
    };
    rec(0, r);

    rep.tolerance = 1e-12 * std::max<long long>(1, rep.configurations);
    rep.pass = std::fabs(rep.signed_sum) < rep.tolerance;
    return rep;
}

LabelledLoop canonical_labelled(const EmbeddedGraph& g, const std::vector<LabelledStep>& steps) {
    const int n = static_cast<int>(steps.size());
    if (n < 3) throw InputError("labelled loop needs at least 3 steps");
    std::vector<int> vseq(n);
    for (int i = 0; i < n; ++i) {
        vseq[i] = steps[i].from;
        if (steps[i].to != steps[(i + 1) % n].from)
            throw InputError("labelled steps do not chain into a closed walk");
    }
    const Loop base = canonicalize(g, vseq);

    // Scan the 2n representations for those matching the canonical base,
    // carrying the labels along; condition L3 picks the stored one.
    const int period = n / base.multiplicity;
    auto l3_ok = [&](const std::vector<int>& labels) {
        for (int k = 1; k < base.multiplicity; ++k)
            if (labels[0] > labels[static_cast<std::size_t>(k) * period]) return false;
        return true;
    };
    for (int dir = 0; dir < 2; ++dir) {
        std::vector<LabelledStep> oriented = steps;
        if (dir == 1) {
            std::reverse(oriented.begin(), oriented.end());
            for (auto& s : oriented) std::swap(s.from, s.to);
        }
        for (int s = 0; s < n; ++s) {
            bool match = true;
            for (int i = 0; match && i < n; ++i)
                match = oriented[(s + i) % n].from == base.seq[i];
            if (!match) continue;
            std::vector<int> labels(n);
            for (int i = 0; i < n; ++i) labels[i] = oriented[(s + i) % n].label;
            if (l3_ok(labels)) return LabelledLoop{base, std::move(labels)};
        }
    }
    throw NumericError("no representation of the labelled loop matched its canonical base");
}

namespace {

std::vector<LabelledStep> labelled_steps(const LabelledLoop& l) {
    const int n = l.base.steps();
    std::vector<LabelledStep> steps(n);
    for (int i = 0; i < n; ++i)
        steps[i] = {l.base.seq[i], l.base.seq[(i + 1) % n], l.labels[i]};
    return steps;
}

std::vector<LabelledStep> rotate_to_front(std::vector<LabelledStep> steps, int pos) {
    std::rotate(steps.begin(), steps.begin() + pos, steps.end());
    return steps;
}

std::vector<LabelledStep> reverse_steps(std::vector<LabelledStep> steps) {
    std::reverse(steps.begin(), steps.end());
    for (auto& s : steps) std::swap(s.from, s.to);
    return steps;
}

} // namespace

BijectionStep bijection_map(const EmbeddedGraph& g, const std::vector<LabelledLoop>& config) {
    // Labels per edge across the whole configuration.
    std::map<int, std::vector<std::pair<int, int>>> edge_labels; // edge -> (label, loop idx)
    for (std::size_t li = 0; li < config.size(); ++li) {
        const auto& l = config[li];
        for (int i = 0; i < l.base.steps(); ++i) {
            const int e = g.find_edge(l.base.seq[i], l.base.seq[(i + 1) % l.base.steps()]);
            edge_labels[e].push_back({l.labels[i], static_cast<int>(li)});
        }
    }
    int label_a = INT32_MAX, edge_uv = -1;
    for (auto& [e, ls] : edge_labels) {
        if (ls.size() < 2) continue;
        std::sort(ls.begin(), ls.end());
        if (ls[0].first < label_a) {
            label_a = ls[0].first;
            edge_uv = e;
        }
    }
    if (edge_uv < 0) throw InputError("configuration is edge-disjoint: no doubled edge");
    const auto& uv_labels = edge_labels[edge_uv];
    const int label_b = uv_labels[1].first;
    const int loop_i = uv_labels[0].second;
    const int loop_j = uv_labels[1].second;

    auto step_pos = [&](const LabelledLoop& l, int label) {
        for (std::size_t i = 0; i < l.labels.size(); ++i)
            if (l.labels[i] == label) return static_cast<int>(i);
        throw NumericError("label not found in loop");
    };

    BijectionStep out;
    std::vector<LabelledLoop> next;
    for (std::size_t li = 0; li < config.size(); ++li)
        if (static_cast<int>(li) != loop_i && static_cast<int>(li) != loop_j)
            next.push_back(config[li]);

    if (loop_i != loop_j) {
        // Case 1: merge two loops through the doubled edge.
        out.case_id = 1;
        auto si = rotate_to_front(labelled_steps(config[loop_i]), step_pos(config[loop_i], label_a));
        auto sj = rotate_to_front(labelled_steps(config[loop_j]), step_pos(config[loop_j], label_b));
        if (sj[0].from != si[0].from) sj = rotate_to_front(reverse_steps(sj), static_cast<int>(sj.size()) - 1);
        std::vector<LabelledStep> merged = si;
        merged.insert(merged.end(), sj.begin(), sj.end());
        next.push_back(canonical_labelled(g, merged));
    } else {
        auto steps = rotate_to_front(labelled_steps(config[loop_i]), step_pos(config[loop_i], label_a));
        int k = -1;
        for (std::size_t i = 1; i < steps.size(); ++i)
            if (steps[i].label == label_b) k = static_cast<int>(i);
        if (steps[k].from == steps[0].from) {
            // Case 2: both traversals in the same direction; split.
            out.case_id = 2;
            std::vector<LabelledStep> first(steps.begin(), steps.begin() + k);
            std::vector<LabelledStep> second(steps.begin() + k, steps.end());
            next.push_back(canonical_labelled(g, first));
            next.push_back(canonical_labelled(g, second));
        } else {
            // Case 3: opposite directions; reverse the in-between segment.
            out.case_id = 3;
            std::vector<LabelledStep> mid(steps.begin() + 1, steps.begin() + k);
            mid = reverse_steps(mid);
            std::vector<LabelledStep> spliced{steps[0]};
            spliced.insert(spliced.end(), mid.begin(), mid.end());
            spliced.push_back(steps[k]);
            spliced.insert(spliced.end(), steps.begin() + k + 1, steps.end());
            next.push_back(canonical_labelled(g, spliced));
        }
    }
    std::sort(next.begin(), next.end());
    out.image = std::move(next);
    return out;
}

namespace {

struct LabelledEnumerator {
    const EmbeddedGraph& g;
    int n_total;
    const std::function<void(const std::vector<LabelledLoop>&)>& sink;
    std::vector<Loop> census; // loops with steps <= n_total
    std::vector<LabelledLoop> current;
    long long emitted = 0;

    void run() {
        enumerate_loops(g, n_total, nullptr, [&](const Loop& l) { census.push_back(l); });
        std::sort(census.begin(), census.end());
        std::vector<int> multiset;
        choose_multiset(0, n_total, multiset);
    }

    void choose_multiset(std::size_t lo, int remaining, std::vector<int>& multiset) {
        if (remaining == 0 && !multiset.empty()) {
            std::vector<Loop> loops;
            for (int i : multiset) loops.push_back(census[i]);
            if (!collection_edge_disjoint(g, loops)) {
                std::uint32_t all = (n_total >= 32) ? ~0u : ((1u << n_total) - 1u);
                assign_labels(loops, 0, all, -1);
            }
            return;
        }
        for (std::size_t i = lo; i < census.size(); ++i) {
            if (census[i].steps() > remaining) continue;
            multiset.push_back(static_cast<int>(i));
            choose_multiset(i, remaining - census[i].steps(), multiset);
            multiset.pop_back();
        }
    }

    // Distribute the label set (bitmask over 0..n-1 for labels 1..n) to the
    // loops in order. Identical consecutive loops must receive label sets
    // with increasing minima so each set of labelled loops appears once.
    void assign_labels(const std::vector<Loop>& loops, std::size_t idx, std::uint32_t avail,
                       int prev_min) {
        if (idx == loops.size()) {
            sink(current);
            ++emitted;
            return;
        }
        const Loop& l = loops[idx];
        const int need = l.steps();
        const bool same_as_prev = idx > 0 && loops[idx - 1] == l;

        std::vector<int> pool;
        for (int b = 0; b < n_total; ++b)
            if (avail >> b & 1) pool.push_back(b + 1);
        std::vector<int> pick(need);
        std::function<void(int, int)> choose = [&](int start, int got) {
            if (got == need) {
                if (same_as_prev && pick[0] <= prev_min) return;
                label_orders(loops, idx, avail, pick);
                return;
            }
            for (int p = start; p < static_cast<int>(pool.size()); ++p) {
                pick[got] = pool[p];
                choose(p + 1, got + 1);
            }
        };
        choose(0, 0);
    }

    void label_orders(const std::vector<Loop>& loops, std::size_t idx, std::uint32_t avail,
                      const std::vector<int>& pick) {
        const Loop& l = loops[idx];
        const int n = l.steps();
        const int period = n / l.multiplicity;
        std::uint32_t used = 0;
        for (int lab : pick) used |= 1u << (lab - 1);

        std::vector<int> perm = pick; // sorted ascending
        do {
            bool ok = true;
            for (int k = 1; ok && k < l.multiplicity; ++k)
                ok = perm[0] < perm[static_cast<std::size_t>(k) * period];
            if (!ok) continue;
            current.push_back(LabelledLoop{l, perm});
            assign_labels(loops, idx + 1, avail & ~used, pick[0]);
            current.pop_back();
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
};

} // namespace

BijectionReport bijection_audit(const EmbeddedGraph& g, int n_total) {
    if (n_total > 10) throw CapError("labelled enumeration capped at 10 total steps");
    BijectionReport rep;

    // Discriminating weights so equal products are not a coincidence.
    std::vector<double> wv(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) wv[e] = 1.0 + 0.01 * (e + 1);
    const EdgeWeightVector x{std::move(wv)};

    auto labelled_weight = [&](const std::vector<LabelledLoop>& cfg) {
        double w = 1.0;
        for (const auto& l : cfg)
            w *= loop_weight(g, l.base, x) * l.base.multiplicity; // w(l^lab) = m(l) w(l)
        return w;
    };

    std::map<std::vector<int>, long long> multiset_tally; // census signature -> labellings

    std::function<void(const std::vector<LabelledLoop>&)> visit =
        [&](const std::vector<LabelledLoop>& cfg) {
            ++rep.configs;
            const BijectionStep fwd = bijection_map(g, cfg);
            (fwd.case_id == 1 ? rep.case1 : fwd.case_id == 2 ? rep.case2 : rep.case3) += 1;

            const BijectionStep back = bijection_map(g, fwd.image);
            std::vector<LabelledLoop> sorted_cfg = cfg;
            std::sort(sorted_cfg.begin(), sorted_cfg.end());
            if (back.image != sorted_cfg) rep.involution_ok = false;

            const double wa = labelled_weight(cfg), wb = labelled_weight(fwd.image);
            if (std::fabs(wa + wb) > 1e-12 * (std::fabs(wa) + std::fabs(wb)))
                rep.sign_flips_ok = false;
            if (std::fabs(std::fabs(wa) - std::fabs(wb)) > 1e-12 * std::fabs(wa))
                rep.weight_matches = false;

            std::vector<std::vector<int>> seqs;
            for (const auto& l : cfg) seqs.push_back(l.base.seq);
            std::sort(seqs.begin(), seqs.end());
            std::vector<int> key;
            for (const auto& s : seqs) {
                key.push_back(-1);
                key.insert(key.end(), s.begin(), s.end());
            }
            ++multiset_tally[key];
        };

    LabelledEnumerator en{g, n_total, visit, {}, {}, 0};
    en.run();

    // Independent count: n! / (prod m(l_i) prod k_i!) per loop multiset.
    std::map<std::vector<int>, long long> expected;
    {
        std::vector<Loop> census;
        enumerate_loops(g, n_total, nullptr, [&](const Loop& l) { census.push_back(l); });
        std::sort(census.begin(), census.end());
        std::vector<int> multiset;
        std::function<void(std::size_t, int)> rec = [&](std::size_t lo, int remaining) {
            if (remaining == 0 && !multiset.empty()) {
                std::vector<Loop> loops;
                for (int i : multiset) loops.push_back(census[i]);
                if (collection_edge_disjoint(g, loops)) return;
                double cnt = 1.0;
                for (int f = 1; f <= n_total; ++f) cnt *= f;
                for (const Loop& l : loops) cnt /= l.multiplicity;
                for (std::size_t i = 0; i < multiset.size();) {
                    std::size_t j = i;
                    while (j < multiset.size() && multiset[j] == multiset[i]) ++j;
                    for (std::size_t f = 2; f <= j - i; ++f) cnt /= static_cast<double>(f);
                    i = j;
                }
                std::vector<int> key;
                for (const Loop& l : loops) {
                    key.push_back(-1);
                    key.insert(key.end(), l.seq.begin(), l.seq.end());
                }
                expected[key] = static_cast<long long>(std::llround(cnt));
            }
            for (std::size_t i = lo; i < census.size(); ++i) {
                if (census[i].steps() > remaining) continue;
                multiset.push_back(static_cast<int>(i));
                rec(i, remaining - census[i].steps());
                multiset.pop_back();
            }
        };
        rec(0, n_total);
    }
    rep.counts_match = multiset_tally == expected;
    return rep;
}

} // namespace slising
