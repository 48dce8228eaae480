#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "cohesion/bitset.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/popularity.hpp"

namespace cohesion {

enum class Method { LM, AP };

// Newman modularity at resolution 1, exact integers until the final division.
inline double modularity(const Graph& g, const GroupStructure& w) {
    const long long m = (long long)(g.num_edges());
    if (m == 0) throw std::invalid_argument("modularity: edgeless graph");
    long long acc = 0;  // sum of 4m*E_c - D_c^2
    for (int i = 0; i < w.size(); ++i) {
        const NodeSet& c = w.coalition(i);
        long long internal2 = 0;  // 2*E_c
        long long deg_total = 0;
        c.for_each([&](int u) {
            internal2 += induced_degree(g, u, c);
            deg_total += g.degree(u);
        });
        acc += 2 * m * internal2 - deg_total * deg_total;
    }
    return double(acc) / double(4 * m * m);
}

namespace detail {

struct LouvainLevel {
    int n = 0;
    std::vector<std::vector<std::pair<int, long long>>> adj;  // no self entries
    std::vector<long long> self;      // 2 x (original edges inside the node)
    std::vector<long long> strength;  // total original degree of the node
};

// One pass of local moving per iteration until quiescent. Gains are compared
// through sigma(C) = 2m*k_{u,C} - k_u*D_C (C without u), an order-preserving
// integer rescaling of the modularity delta.
inline bool local_moving(const LouvainLevel& lv, long long two_m, std::vector<int>& comm,
                         std::vector<long long>& comm_strength) {
    bool any_move = false;
    std::vector<long long> k_to(lv.n, 0);
    std::vector<int> touched;
    for (bool moved = true; moved;) {
        moved = false;
        for (int u = 0; u < lv.n; ++u) {
            const int a = comm[u];
            touched.clear();
            for (auto [v, wt] : lv.adj[u]) {
                int c = comm[v];
                if (k_to[c] == 0) touched.push_back(c);
                k_to[c] += wt;
            }
            const long long ku = lv.strength[u];
            const long long sigma_stay = two_m * k_to[a] - ku * (comm_strength[a] - ku);
            long long best_sigma = sigma_stay;
            int best_comm = a;
            for (int c : touched)
                if (c != a) {
                    long long sigma = two_m * k_to[c] - ku * comm_strength[c];
                    if (sigma > best_sigma || (sigma == best_sigma && c < best_comm)) {
                        best_sigma = sigma;
                        best_comm = c;
                    }
                }
            if (best_sigma > sigma_stay) {
                comm_strength[a] -= ku;
                comm_strength[best_comm] += ku;
                comm[u] = best_comm;
                moved = true;
                any_move = true;
            }
            for (int c : touched) k_to[c] = 0;
        }
    }
    return any_move;
}

}  // namespace detail

// Deterministic two-phase modularity optimization: id-order node visits,
// lowest-community-id tie break, aggregation until no move improves.
inline GroupStructure louvain(const Graph& g) {
    const int n = g.num_nodes();
    assert(g.num_edges() >= 1);
    const long long two_m = 2 * (long long)(g.num_edges());

    detail::LouvainLevel lv;
    lv.n = n;
    lv.adj.resize(n);
    lv.self.assign(n, 0);
    lv.strength.assign(n, 0);
    for (int u = 0; u < n; ++u) {
        for (int v : g.neighbors(u)) lv.adj[u].emplace_back(v, 1);
        lv.strength[u] = g.degree(u);
    }
    std::vector<int> node_comm(n);
    for (int u = 0; u < n; ++u) node_comm[u] = u;

    while (true) {
        std::vector<int> comm(lv.n);
        std::vector<long long> comm_strength = lv.strength;
        for (int u = 0; u < lv.n; ++u) comm[u] = u;
        if (!detail::local_moving(lv, two_m, comm, comm_strength)) break;

        // Renumber communities by first occurrence.
        std::vector<int> remap(lv.n, -1);
        int next = 0;
        for (int u = 0; u < lv.n; ++u)
            if (remap[comm[u]] == -1) remap[comm[u]] = next++;
        for (int u = 0; u < lv.n; ++u) comm[u] = remap[comm[u]];
        for (int u = 0; u < n; ++u) node_comm[u] = comm[node_comm[u]];
        if (next == lv.n) break;

        detail::LouvainLevel agg;
        agg.n = next;
        agg.adj.resize(next);
        agg.self.assign(next, 0);
        agg.strength.assign(next, 0);
        std::vector<std::vector<long long>> w(next);
        for (int c = 0; c < next; ++c) w[c].assign(next, 0);
        for (int u = 0; u < lv.n; ++u) {
            agg.self[comm[u]] += lv.self[u];
            agg.strength[comm[u]] += lv.strength[u];
            for (auto [v, wt] : lv.adj[u]) {
                if (comm[v] == comm[u])
                    agg.self[comm[u]] += wt;  // both directions visited
                else
                    w[comm[u]][comm[v]] += wt;
            }
        }
        for (int c = 0; c < next; ++c)
            for (int d = 0; d < next; ++d)
                if (w[c][d]) agg.adj[c].emplace_back(d, w[c][d]);
        lv = std::move(agg);
    }
    return GroupStructure::from_assignment(node_comm);
}

// Greedy neighborhood selection: repeatedly take the closed neighborhood
// (inside the remaining pool) with the highest average payoff 2|E(S)|/|S|^2,
// ties to the lowest id.
inline GroupStructure ap_heuristic(const Graph& g) {
    const int n = g.num_nodes();
    NodeSet remaining = NodeSet::full(n);
    std::vector<NodeSet> parts;
    while (!remaining.empty()) {
        long long best_e = -1, best_sz = 1;
        int best_w = -1;
        remaining.for_each([&](int w) {
            NodeSet s(n);
            s.set(w);
            for (int v : g.neighbors(w))
                if (remaining.test(v)) s.set(v);
            long long e2 = 0;
            s.for_each([&](int u) { e2 += induced_degree(g, u, s); });
            const long long e = e2 / 2, sz = s.count();
            // e/sz^2 > best  <=>  e*best_sz^2 > best_e*sz^2
            if (best_w == -1 || e * best_sz * best_sz > best_e * sz * sz) {
                best_e = e;
                best_sz = sz;
                best_w = w;
            }
        });
        NodeSet s(n);
        s.set(best_w);
        for (int v : g.neighbors(best_w))
            if (remaining.test(v)) s.set(v);
        parts.push_back(s);
        remaining = remaining.minus(s);
    }
    return GroupStructure::from_sets(n, std::move(parts));
}

inline GroupStructure run_method(const Graph& g, Method m) {
    if (m == Method::AP) return ap_heuristic(g);
    if (g.num_edges() == 0) return GroupStructure::singletons(g.num_nodes());
    return louvain(g);
}

struct HeuristicOutcome {
    GroupStructure structure;
    std::optional<BlockingCertificate> blocking_found;
    std::optional<bool> core_stable_exact;
};

inline HeuristicOutcome run_heuristic(const Graph& g, Method m, bool exact_stability = false) {
    HeuristicOutcome out{run_method(g, m), std::nullopt, std::nullopt};
    const GroupStructure grand = GroupStructure::grand(g.num_nodes());
    for (int i = 0; i < out.structure.size() && !out.blocking_found; ++i) {
        const NodeSet& s = out.structure.coalition(i);
        if (s.count() >= 2 && blocks_grand(g, s)) {
            out.blocking_found = check_blocking(g, s, grand);
            assert(out.blocking_found.has_value());
        }
    }
    if (exact_stability)
        out.core_stable_exact =
            is_core_stable(g, out.structure).status == VerdictStatus::Cohesive;
    return out;
}

// One-sided cohesion test via a heuristic structure: a coalition that blocks
// the grand coalition certifies NotCohesive; silence proves nothing.
inline CohesionVerdict heuristic_cohesion_test(const Graph& g, Method m) {
    auto out = run_heuristic(g, m);
    if (out.blocking_found)
        return {VerdictStatus::NotCohesive, VerdictMethod::Heuristic,
                std::move(out.blocking_found)};
    return {VerdictStatus::Inconclusive, VerdictMethod::Heuristic, std::nullopt};
}

// Raw aggregates of a heuristic evaluated against exact ground truth.
struct BatchStats {
    long long s = 0;               // graphs
    long long b = 0;               // heuristic found a blocking set
    long long c = 0;               // truly cohesive graphs
    long long stable = 0;          // heuristic structure core stable (exact)
    long long improved_nodes = 0;  // nodes strictly above their grand payoff
    long long total_nodes = 0;
    long long connected = 0;
    std::vector<Popularity> pay_method;
    std::vector<Popularity> pay_grand;

    double accuracy() const { return s ? double(b + c) / double(s) : 0.0; }
    double core_stable_rate() const { return s ? double(stable) / double(s) : 0.0; }
    double improved_node_rate() const {
        return total_nodes ? double(improved_nodes) / double(total_nodes) : 0.0;
    }
};

// Exact-ground-truth evaluation: pre-condition is that every graph fits under
// opts.exact_cap so cohesion is decidable.
template <typename GraphRange>
BatchStats evaluate_batch(const GraphRange& graphs, Method m, const CohesionOptions& opts = {},
                          bool collect_payoffs = false) {
    BatchStats st;
    for (const Graph& g : graphs) {
        ++st.s;
        if (g.num_nodes() == 0) continue;
        if (is_connected(g)) ++st.connected;
        CohesionVerdict truth = is_socially_cohesive(g, opts);
        assert(truth.status != VerdictStatus::Inconclusive);
        if (truth.status == VerdictStatus::Cohesive) ++st.c;
        auto out = run_heuristic(g, m, /*exact_stability=*/true);
        if (out.blocking_found) ++st.b;
        if (out.core_stable_exact.value()) ++st.stable;
        const NodeSet full = NodeSet::full(g.num_nodes());
        for (int u = 0; u < g.num_nodes(); ++u) {
            Popularity grand_pay = popularity(g, u, full);
            Popularity method_pay = payoff_under(g, out.structure, u);
            ++st.total_nodes;
            if (method_pay > grand_pay) ++st.improved_nodes;
            if (collect_payoffs) {
                st.pay_method.push_back(method_pay);
                st.pay_grand.push_back(grand_pay);
            }
        }
    }
    return st;
}

}  // namespace cohesion
