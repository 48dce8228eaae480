#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "cohesion/bitset.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/subsets.hpp"

namespace cohesion {

// kappa: size of a minimum vertex cut; chi: smallest component size achievable
// by removing some minimum cut; mu: largest component count achievable by
// removing some minimum cut. chi and mu are optimized over all minimum cuts
// independently.
struct CutProfile {
    int kappa = 0;
    int chi = 0;
    int mu = 0;
};

// Adds the cut realizing chi: its node set and the resulting components sorted
// by (size, lowest member). components.front() is a smallest component.
struct CutWitness {
    CutProfile profile;
    NodeSet cut;
    std::vector<NodeSet> components;
};

namespace detail {

// Unit-capacity max flow on the node-split digraph; value bounded by `limit`.
class UnitFlow {
public:
    explicit UnitFlow(int nodes) : head_(nodes, -1) {}

    void add_edge(int u, int v, int cap) {
        to_.push_back(v);
        cap_.push_back(cap);
        next_.push_back(head_[u]);
        head_[u] = int(to_.size()) - 1;
        to_.push_back(u);
        cap_.push_back(0);
        next_.push_back(head_[v]);
        head_[v] = int(to_.size()) - 1;
    }

    int run(int s, int t, int limit) {
        int flow = 0;
        std::vector<int> pre_edge(head_.size());
        while (flow < limit) {
            std::fill(pre_edge.begin(), pre_edge.end(), -1);
            std::queue<int> q;
            q.push(s);
            pre_edge[s] = -2;
            while (!q.empty() && pre_edge[t] == -1) {
                int u = q.front();
                q.pop();
                for (int e = head_[u]; e != -1; e = next_[e])
                    if (cap_[e] > 0 && pre_edge[to_[e]] == -1) {
                        pre_edge[to_[e]] = e;
                        q.push(to_[e]);
                    }
            }
            if (pre_edge[t] == -1) break;
            for (int v = t; v != s;) {
                int e = pre_edge[v];
                --cap_[e];
                ++cap_[e ^ 1];
                v = to_[e ^ 1];
            }
            ++flow;
        }
        return flow;
    }

private:
    std::vector<int> head_, to_, next_;
    std::vector<int> cap_;
};

// Internally disjoint s-t paths for non-adjacent s, t (Menger).
inline int disjoint_paths(const Graph& g, int s, int t, int limit) {
    const int n = g.num_nodes();
    UnitFlow f(2 * n);
    for (int v = 0; v < n; ++v) f.add_edge(2 * v, 2 * v + 1, v == s || v == t ? n : 1);
    for (auto [u, v] : g.edge_list()) {
        f.add_edge(2 * u + 1, 2 * v, 1);
        f.add_edge(2 * v + 1, 2 * u, 1);
    }
    return f.run(2 * s + 1, 2 * t, limit);
}

}  // namespace cohesion::detail

// Minimum vertex-cut size of a connected non-complete graph.
inline int vertex_connectivity(const Graph& g) {
    const int n = g.num_nodes();
    if (n < 3 || !is_connected(g)) throw std::invalid_argument("vertex_connectivity: need a connected graph on >= 3 nodes");
    int best = n;
    for (int s = 0; s < n; ++s)
        for (int t = s + 1; t < n; ++t)
            if (!g.has_edge(s, t)) best = std::min(best, detail::disjoint_paths(g, s, t, best));
    if (best == n) throw std::invalid_argument("vertex_connectivity: complete graph has no cut");
    return best;
}

// Exhaustive scan over all size-kappa separators; nullopt when the number of
// candidate subsets exceeds max_sets (budget guard for one-sided callers).
inline std::optional<CutWitness> cut_profile_witness(const Graph& g,
                                                     std::uint64_t max_sets = std::uint64_t{1}
                                                                              << 22) {
    const int n = g.num_nodes();
    const int kappa = vertex_connectivity(g);
    assert(n <= 64);
    std::uint64_t count = 1;
    for (int i = 0; i < kappa; ++i) count = count * std::uint64_t(n - i) / (i + 1);
    if (count > max_sets) return std::nullopt;

    std::vector<std::uint64_t> adj(n);
    for (int u = 0; u < n; ++u) adj[u] = g.adjacency_mask(u);
    const std::uint64_t all = low_mask(n);

    CutWitness best;
    best.profile = {kappa, n, 1};
    std::vector<std::pair<int, std::uint64_t>> comps;
    scan_masks_size_major(n, kappa, kappa, [&](std::uint64_t cut) {
        std::uint64_t rest = all & ~cut;
        comps.clear();
        std::uint64_t todo = rest;
        while (todo) {
            std::uint64_t seen = todo & (~todo + 1);
            std::uint64_t frontier = seen;
            while (frontier) {
                std::uint64_t next = 0, w = frontier;
                while (w) {
                    int u = std::countr_zero(w);
                    w &= w - 1;
                    next |= adj[u] & rest;
                }
                frontier = next & ~seen;
                seen |= frontier;
            }
            comps.emplace_back(std::popcount(seen), seen);
            todo &= ~seen;
        }
        if (comps.size() < 2) return false;
        int smallest = comps[0].first;
        for (auto& [sz, m] : comps) smallest = std::min(smallest, sz);
        best.profile.mu = std::max(best.profile.mu, int(comps.size()));
        if (smallest < best.profile.chi) {
            best.profile.chi = smallest;
            best.cut = NodeSet::from_mask(n, cut);
            std::sort(comps.begin(), comps.end(), [](auto& a, auto& b) {
                return a.first != b.first ? a.first < b.first
                                          : std::countr_zero(a.second) < std::countr_zero(b.second);
            });
            best.components.clear();
            for (auto& [sz, m] : comps) best.components.push_back(NodeSet::from_mask(n, m));
        }
        return false;
    });
    assert(best.profile.chi < n && !best.components.empty());
    return best;
}

inline CutProfile cut_profile(const Graph& g) {
    auto w = cut_profile_witness(g, ~std::uint64_t{0});
    assert(w.has_value());
    return w->profile;
}

}  // namespace cohesion
