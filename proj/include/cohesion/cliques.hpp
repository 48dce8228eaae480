#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "cohesion/bitset.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/subsets.hpp"

namespace cohesion {

namespace detail {

// Greedy coloring of the candidate set; vertices emitted in nondecreasing
// color order so the search can cut as soon as color count can't help.
inline void color_sort(const std::vector<std::uint64_t>& adj, std::uint64_t cand,
                       std::vector<int>& order, std::vector<int>& bound) {
    order.clear();
    bound.clear();
    int color = 0;
    while (cand) {
        ++color;
        std::uint64_t pool = cand;
        while (pool) {
            int v = std::countr_zero(pool);
            pool &= pool - 1;
            cand &= ~(std::uint64_t{1} << v);
            pool &= ~adj[v];
            order.push_back(v);
            bound.push_back(color);
        }
    }
}

inline void max_clique_dfs(const std::vector<std::uint64_t>& adj, std::uint64_t cand, int depth,
                           std::uint64_t current, int& best, std::uint64_t& best_set) {
    std::vector<int> order, bound;
    color_sort(adj, cand, order, bound);
    for (int i = int(order.size()) - 1; i >= 0; --i) {
        if (depth + bound[i] <= best) return;
        int v = order[i];
        std::uint64_t next = cand & adj[v];
        std::uint64_t chosen = current | (std::uint64_t{1} << v);
        if (depth + 1 > best) {
            best = depth + 1;
            best_set = chosen;
        }
        if (next) max_clique_dfs(adj, next, depth + 1, chosen, best, best_set);
        cand &= ~(std::uint64_t{1} << v);
    }
}

}  // namespace detail

// Largest clique as a node set; exact branch and bound, intended for n <= 64.
inline NodeSet max_clique(const Graph& g) {
    const int n = g.num_nodes();
    assert(n <= 64);
    if (n == 0) return NodeSet(0);
    std::vector<std::uint64_t> adj(n);
    for (int u = 0; u < n; ++u) adj[u] = g.adjacency_mask(u);
    int best = 0;
    std::uint64_t best_set = 0;
    detail::max_clique_dfs(adj, low_mask(n), 0, 0, best, best_set);
    return NodeSet::from_mask(n, best_set);
}

inline int clique_number(const Graph& g) {
    return g.num_nodes() == 0 ? 0 : max_clique(g).count();
}

// Some clique of exactly k nodes, if one exists.
inline std::optional<NodeSet> find_clique(const Graph& g, int k) {
    assert(k >= 1);
    NodeSet c = max_clique(g);
    if (c.count() < k) return std::nullopt;
    NodeSet out(g.num_nodes());
    int left = k;
    c.for_each([&](int u) {
        if (left > 0) {
            out.set(u);
            --left;
        }
    });
    return out;
}

}  // namespace cohesion
