#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "cohesion/graph.hpp"
#include "cohesion/subsets.hpp"

namespace cohesion {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stable per-item seed stream for batch runs.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    return splitmix64(root ^ splitmix64(index));
}

// Every labeled graph on n nodes equiprobable: each edge present with
// probability 1/2, bits drawn LSB-first from mt19937_64 words.
inline Graph sample_random_graph(int n, std::uint64_t seed) {
    assert(n >= 1);
    std::mt19937_64 rng(seed);
    std::uint64_t word = 0;
    int bits_left = 0;
    std::vector<std::pair<int, int>> edges;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            if (bits_left == 0) {
                word = rng();
                bits_left = 64;
            }
            if (word & 1) edges.emplace_back(i, j);
            word >>= 1;
            --bits_left;
        }
    return Graph::from_edges(n, edges);
}

namespace detail {

// Bit layout of a graph key: pair (i, j), i < j, occupies flat index
// j(j-1)/2 + i; the key stores bit flat(i,j) at position total-1-flat(i,j),
// so earlier pairs are more significant and a placed prefix of vertices pins
// a prefix of the key.
inline int pair_index(int i, int j) { return j * (j - 1) / 2 + i; }

struct CanonSearch {
    const std::vector<std::uint64_t>* rows;
    int n, total;
    std::uint64_t best;
    std::vector<int> perm;
    std::uint64_t used;

    // Minimum key over all vertex orderings. At each depth only candidates
    // whose adjacency chunk against the placed prefix is minimal can lead to
    // the minimum, because chunk bits outrank all deeper bits.
    void dfs(int depth, std::uint64_t cur) {
        if (depth == n) {
            if (cur < best) best = cur;
            return;
        }
        std::uint64_t min_chunk = ~std::uint64_t{0};
        std::vector<int> ties;
        for (int v = 0; v < n; ++v) {
            if ((used >> v) & 1) continue;
            std::uint64_t chunk = 0;
            for (int i = 0; i < depth; ++i)
                chunk = (chunk << 1) | (((*rows)[perm[i]] >> v) & 1);
            if (chunk < min_chunk) {
                min_chunk = chunk;
                ties.clear();
                ties.push_back(v);
            } else if (chunk == min_chunk) {
                ties.push_back(v);
            }
        }
        std::uint64_t next = (cur << depth) | min_chunk;
        int placed_bits = (depth + 1) * depth / 2;
        if (next > (best >> (total - placed_bits))) return;
        for (int v : ties) {
            perm[depth] = v;
            used |= std::uint64_t{1} << v;
            dfs(depth + 1, next);
            used &= ~(std::uint64_t{1} << v);
        }
    }
};

inline std::uint64_t key_of_identity(const std::vector<std::uint64_t>& rows, int n) {
    std::uint64_t key = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) key = (key << 1) | ((rows[i] >> j) & 1);
    return key;
}

inline std::uint64_t canonical_key_rows(const std::vector<std::uint64_t>& rows, int n) {
    assert(n >= 1 && n * (n - 1) / 2 <= 63);
    CanonSearch s;
    s.rows = &rows;
    s.n = n;
    s.total = n * (n - 1) / 2;
    s.best = key_of_identity(rows, n);
    s.perm.assign(n, 0);
    s.used = 0;
    s.dfs(0, 0);
    return s.best;
}

inline std::vector<std::uint64_t> rows_of_key(std::uint64_t key, int n) {
    const int total = n * (n - 1) / 2;
    std::vector<std::uint64_t> rows(n, 0);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if ((key >> (total - 1 - pair_index(i, j))) & 1) {
                rows[i] |= std::uint64_t{1} << j;
                rows[j] |= std::uint64_t{1} << i;
            }
    return rows;
}

inline Graph graph_of_key(std::uint64_t key, int n) {
    const int total = n * (n - 1) / 2;
    std::vector<std::pair<int, int>> edges;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if ((key >> (total - 1 - pair_index(i, j))) & 1) edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

inline bool rows_connected(const std::vector<std::uint64_t>& rows, int n) {
    std::uint64_t all = low_mask(n);
    std::uint64_t seen = 1, frontier = 1;
    while (frontier) {
        std::uint64_t next = 0, w = frontier;
        while (w) {
            int u = std::countr_zero(w);
            w &= w - 1;
            next |= rows[u];
        }
        frontier = next & ~seen;
        seen |= frontier;
    }
    return seen == all;
}

inline std::vector<std::uint64_t> rows_components(const std::vector<std::uint64_t>& rows, int n) {
    std::vector<std::uint64_t> comps;
    std::uint64_t todo = low_mask(n);
    while (todo) {
        std::uint64_t seen = todo & (~todo + 1), frontier = seen;
        while (frontier) {
            std::uint64_t next = 0, w = frontier;
            while (w) {
                int u = std::countr_zero(w);
                w &= w - 1;
                next |= rows[u] & todo;
            }
            frontier = next & ~seen;
            seen |= frontier;
        }
        comps.push_back(seen);
        todo &= ~seen;
    }
    return comps;
}

// Canonical keys of all isomorphism classes on n nodes (connected or not).
inline std::set<std::uint64_t> all_class_keys(int n) {
    assert(1 <= n && n <= 7);
    const int total = n * (n - 1) / 2;
    std::set<std::uint64_t> keys;
    std::vector<std::uint64_t> rows(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << total); ++mask) {
        std::fill(rows.begin(), rows.end(), 0);
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i)
                if ((mask >> pair_index(i, j)) & 1) {
                    rows[i] |= std::uint64_t{1} << j;
                    rows[j] |= std::uint64_t{1} << i;
                }
        keys.insert(canonical_key_rows(rows, n));
    }
    return keys;
}

}  // namespace detail

inline std::uint64_t canonical_key(const Graph& g) {
    const int n = g.num_nodes();
    std::vector<std::uint64_t> rows(n);
    for (int u = 0; u < n; ++u) rows[u] = g.adjacency_mask(u);
    return detail::canonical_key_rows(rows, n);
}

// One representative per isomorphism class of connected graphs on n nodes,
// ordered by canonical key. n <= 7 sweeps every labeled graph; n = 8 extends
// every 7-node class by one node over all attachment patterns.
inline std::vector<Graph> enumerate_connected_graphs(int n) {
    if (n < 3 || n > 8) throw std::invalid_argument("enumerate_connected_graphs: need 3 <= n <= 8");
    std::set<std::uint64_t> keys;
    if (n <= 7) {
        const int total = n * (n - 1) / 2;
        std::vector<std::uint64_t> rows(n);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << total); ++mask) {
            std::fill(rows.begin(), rows.end(), 0);
            for (int j = 1; j < n; ++j)
                for (int i = 0; i < j; ++i)
                    if ((mask >> detail::pair_index(i, j)) & 1) {
                        rows[i] |= std::uint64_t{1} << j;
                        rows[j] |= std::uint64_t{1} << i;
                    }
            if (!detail::rows_connected(rows, n)) continue;
            keys.insert(detail::canonical_key_rows(rows, n));
        }
    } else {
        // Any connected 8-node graph minus its highest-labeled vertex is a
        // 7-node graph each of whose components touches that vertex, so
        // extending all 7-node classes by one vertex covers every class.
        for (std::uint64_t key7 : detail::all_class_keys(7)) {
            auto rows7 = detail::rows_of_key(key7, 7);
            auto comps = detail::rows_components(rows7, 7);
            std::vector<std::uint64_t> rows8(8);
            for (std::uint64_t nb = 1; nb < 128; ++nb) {
                bool touches_all = true;
                for (auto c : comps)
                    if (!(c & nb)) {
                        touches_all = false;
                        break;
                    }
                if (!touches_all) continue;
                for (int u = 0; u < 7; ++u) rows8[u] = rows7[u] | (((nb >> u) & 1) << 7);
                rows8[7] = nb;
                keys.insert(detail::canonical_key_rows(rows8, 8));
            }
        }
    }
    std::vector<Graph> out;
    out.reserve(keys.size());
    for (std::uint64_t k : keys) out.push_back(detail::graph_of_key(k, n));
    return out;
}

}  // namespace cohesion
