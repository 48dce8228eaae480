#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cohesion/bitset.hpp"
#include "cohesion/graph.hpp"

namespace cohesion {

inline std::uint64_t low_mask(int n) {
    assert(0 <= n && n <= 64);
    return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Next mask with the same popcount (Gosper); caller must stop before overflow.
inline std::uint64_t next_same_popcount(std::uint64_t x) {
    std::uint64_t c = x & (~x + 1), r = x + c;
    return r | (((x ^ r) >> 2) / c);
}

// Visits subsets of {0..n-1} in size-major order: ascending size from min_size
// to max_size, ascending mask value within a size. Stops when f returns true
// and hands back that mask. Requires n <= 64.
template <typename F>
std::optional<std::uint64_t> scan_masks_size_major(int n, int min_size, int max_size, F&& f) {
    assert(0 < n && n <= 64);
    assert(1 <= min_size && min_size <= max_size && max_size <= n);
    for (int k = min_size; k <= max_size; ++k) {
        std::uint64_t s = low_mask(k);
        const std::uint64_t last = s << (n - k);
        while (true) {
            if (f(s)) return s;
            if (s == last) break;
            s = next_same_popcount(s);
        }
    }
    return std::nullopt;
}

// Connectivity of the induced subgraph on mask members. Requires n <= 64.
inline bool mask_connected(const Graph& g, std::uint64_t s) {
    assert(s != 0);
    std::uint64_t seen = s & (~s + 1);
    std::uint64_t frontier = seen;
    while (frontier) {
        std::uint64_t next = 0;
        std::uint64_t w = frontier;
        while (w) {
            int u = std::countr_zero(w);
            w &= w - 1;
            next |= g.adjacency_mask(u) & s;
        }
        frontier = next & ~seen;
        seen |= frontier;
    }
    return seen == s;
}

namespace detail {

// Enumeration tree for connected induced subgraphs with fixed minimum vertex
// `root`: each level branches over the current frontier; a vertex explored in
// one branch is banned from later sibling branches (and their subtrees), which
// makes every superset appear exactly once. Bans are scoped to the level.
template <typename F>
bool connected_subsets_dfs(const Graph& g, const NodeSet& allowed, int root, NodeSet& s,
                           std::vector<int>& members, NodeSet& banned, int min_size, int max_size,
                           F&& f) {
    if (int(members.size()) >= min_size) {
        if (f(std::as_const(s), std::as_const(members))) return true;
    }
    if (int(members.size()) == max_size) return false;
    std::vector<int> frontier;
    for (int u : members)
        for (int v : g.neighbors(u))
            if (v > root && allowed.test(v) && !s.test(v) && !banned.test(v)) frontier.push_back(v);
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
    bool stop = false;
    std::size_t sealed = 0;
    for (std::size_t i = 0; i < frontier.size() && !stop; ++i) {
        int v = frontier[i];
        s.set(v);
        members.push_back(v);
        stop = connected_subsets_dfs(g, allowed, root, s, members, banned, min_size, max_size, f);
        members.pop_back();
        s.reset(v);
        if (!stop) {
            banned.set(v);
            sealed = i + 1;
        }
    }
    for (std::size_t i = 0; i < sealed; ++i) banned.reset(frontier[i]);
    return stop;
}

}  // namespace detail

// Visits every S ⊆ allowed with min_size <= |S| <= max_size whose induced
// subgraph is connected, exactly once, in a deterministic order (ascending
// minimum member, then tree order). f(set, members) returning true stops.
template <typename F>
bool for_each_connected_subset_within(const Graph& g, const NodeSet& allowed, int min_size,
                                      int max_size, F&& f) {
    assert(min_size >= 1);
    const int n = g.num_nodes();
    for (int root = 0; root < n; ++root) {
        if (!allowed.test(root)) continue;
        NodeSet s(n), banned(n);
        s.set(root);
        std::vector<int> members{root};
        if (detail::connected_subsets_dfs(g, allowed, root, s, members, banned, min_size, max_size,
                                          f))
            return true;
    }
    return false;
}

template <typename F>
bool for_each_connected_subset(const Graph& g, int min_size, int max_size, F&& f) {
    return for_each_connected_subset_within(g, NodeSet::full(g.num_nodes()), min_size, max_size,
                                            std::forward<F>(f));
}

inline std::vector<NodeSet> connected_subsets(const Graph& g, int min_size, int max_size) {
    assert(1 <= min_size && min_size <= max_size && max_size <= g.num_nodes());
    std::vector<NodeSet> out;
    for_each_connected_subset(g, min_size, max_size,
                              [&](const NodeSet& s, const std::vector<int>&) {
                                  out.push_back(s);
                                  return false;
                              });
    return out;
}

}  // namespace cohesion
