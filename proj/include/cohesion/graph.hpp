#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cohesion/bitset.hpp"

namespace cohesion {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

// Undirected simple graph on dense ids 0..n-1, immutable after construction.
// Adjacency is kept as sorted lists plus one bitmask row per node when n <= 64.
class Graph {
public:
    Graph() = default;

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                            std::vector<std::string> labels = {}) {
        Graph g;
        g.n_ = n;
        g.adj_.assign(n, {});
        g.labels_ = std::move(labels);
        assert(g.labels_.empty() || int(g.labels_.size()) == n);
        for (auto [u, v] : edges) {
            assert(0 <= u && u < n && 0 <= v && v < n);
            assert(u != v);
            g.adj_[u].push_back(v);
            g.adj_[v].push_back(u);
        }
        std::size_t m = 0;
        for (auto& row : g.adj_) {
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
            m += row.size();
        }
        g.m_ = m / 2;
        if (n <= 64) {
            g.mask_.assign(n, 0);
            for (int u = 0; u < n; ++u)
                for (int v : g.adj_[u]) g.mask_[u] |= std::uint64_t{1} << v;
        }
        return g;
    }

    int num_nodes() const { return n_; }
    std::size_t num_edges() const { return m_; }

    int degree(int u) const {
        assert(0 <= u && u < n_);
        return int(adj_[u].size());
    }

    int min_degree() const {
        int d = n_ == 0 ? 0 : degree(0);
        for (int u = 1; u < n_; ++u) d = std::min(d, degree(u));
        return d;
    }

    int max_degree() const {
        int d = 0;
        for (int u = 0; u < n_; ++u) d = std::max(d, degree(u));
        return d;
    }

    const std::vector<int>& neighbors(int u) const {
        assert(0 <= u && u < n_);
        return adj_[u];
    }

    bool has_edge(int u, int v) const {
        assert(0 <= u && u < n_ && 0 <= v && v < n_);
        if (!mask_.empty()) return (mask_[u] >> v) & 1u;
        return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
    }

    // Adjacency row as a bitmask; only valid when n <= 64.
    std::uint64_t adjacency_mask(int u) const {
        assert(n_ <= 64 && 0 <= u && u < n_);
        return mask_[u];
    }

    bool has_labels() const { return !labels_.empty(); }

    std::string label(int u) const {
        assert(0 <= u && u < n_);
        return labels_.empty() ? std::to_string(u) : labels_[u];
    }

    std::vector<std::pair<int, int>> edge_list() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(m_);
        for (int u = 0; u < n_; ++u)
            for (int v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

private:
    int n_ = 0;
    std::size_t m_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<std::uint64_t> mask_;
    std::vector<std::string> labels_;
};

// --- construction helpers ----------------------------------------------------

inline Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph::from_edges(n, e);
}

inline Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
    return Graph::from_edges(n, e);
}

inline Graph cycle_graph(int n) {
    assert(n >= 3);
    auto e = path_graph(n).edge_list();
    e.emplace_back(n - 1, 0);
    return Graph::from_edges(n, e);
}

// Star with m tails: node 0 is the center, tails are 1..m.
inline Graph star_graph(int m) {
    std::vector<std::pair<int, int>> e;
    for (int t = 1; t <= m; ++t) e.emplace_back(0, t);
    return Graph::from_edges(m + 1, e);
}

// Sides: left ids 0..m-1, right ids m..m+n-1.
inline Graph complete_bipartite_graph(int m, int n) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < n; ++v) e.emplace_back(u, m + v);
    return Graph::from_edges(m + n, e);
}

// Appends `a` new nodes (ids |h|..|h|+a-1) adjacent to everything else.
inline Graph with_universal_nodes(const Graph& h, int a) {
    int n = h.num_nodes() + a;
    auto e = h.edge_list();
    for (int u = h.num_nodes(); u < n; ++u)
        for (int v = 0; v < u; ++v) e.emplace_back(v, u);
    return Graph::from_edges(n, e);
}

inline Graph induced_subgraph(const Graph& g, const NodeSet& s) {
    std::vector<int> ids = s.members();
    std::vector<int> pos(g.num_nodes(), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = int(i);
    std::vector<std::pair<int, int>> e;
    std::vector<std::string> labels;
    labels.reserve(ids.size());
    for (int u : ids) labels.push_back(g.label(u));
    for (int u : ids)
        for (int v : g.neighbors(u))
            if (u < v && pos[v] >= 0) e.emplace_back(pos[u], pos[v]);
    return Graph::from_edges(int(ids.size()), e, std::move(labels));
}

// --- basic queries -----------------------------------------------------------

inline int induced_degree(const Graph& g, int u, const NodeSet& s) {
    assert(s.test(u));
    int d = 0;
    for (int v : g.neighbors(u)) d += s.test(v);
    return d;
}

inline bool is_connected(const Graph& g, const NodeSet& s) {
    assert(!s.empty());
    int start = s.first();
    NodeSet seen(g.num_nodes());
    seen.set(start);
    std::vector<int> stack{start};
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : g.neighbors(u))
            if (s.test(v) && !seen.test(v)) {
                seen.set(v);
                ++reached;
                stack.push_back(v);
            }
    }
    return reached == s.count();
}

inline bool is_connected(const Graph& g) {
    if (g.num_nodes() <= 1) return true;
    return is_connected(g, NodeSet::full(g.num_nodes()));
}

inline std::vector<NodeSet> components(const Graph& g) {
    std::vector<NodeSet> out;
    NodeSet seen(g.num_nodes());
    for (int r = 0; r < g.num_nodes(); ++r) {
        if (seen.test(r)) continue;
        NodeSet comp(g.num_nodes());
        comp.set(r);
        seen.set(r);
        std::vector<int> stack{r};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : g.neighbors(u))
                if (!seen.test(v)) {
                    seen.set(v);
                    comp.set(v);
                    stack.push_back(v);
                }
        }
        out.push_back(std::move(comp));
    }
    return out;
}

inline NodeSet largest_component(const Graph& g) {
    auto comps = components(g);
    assert(!comps.empty());
    const NodeSet* best = &comps[0];
    for (const auto& c : comps)
        if (c.count() > best->count()) best = &c;
    return *best;
}

// BFS distances from u; unreachable nodes keep -1.
inline std::vector<int> bfs_distances(const Graph& g, int u) {
    std::vector<int> dist(g.num_nodes(), -1);
    dist[u] = 0;
    std::queue<int> q;
    q.push(u);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int v : g.neighbors(x))
            if (dist[v] < 0) {
                dist[v] = dist[x] + 1;
                q.push(v);
            }
    }
    return dist;
}

inline int eccentricity(const Graph& g, int u) {
    auto dist = bfs_distances(g, u);
    int e = 0;
    for (int v = 0; v < g.num_nodes(); ++v) {
        if (dist[v] < 0) throw std::invalid_argument("eccentricity: graph is disconnected");
        e = std::max(e, dist[v]);
    }
    return e;
}

inline int diameter(const Graph& g) {
    int d = 0;
    for (int u = 0; u < g.num_nodes(); ++u) d = std::max(d, eccentricity(g, u));
    return d;
}

// --- edge-list text format ---------------------------------------------------
// One edge per line, two whitespace-separated tokens; '#' comments; blank lines
// ignored. Tokens become labels; ids are assigned in first-seen order.

inline Graph parse_edge_list(std::istream& in) {
    std::unordered_map<std::string, int> id;
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> edges;
    std::string line;
    int line_no = 0;
    auto intern = [&](const std::string& tok) {
        auto it = id.find(tok);
        if (it != id.end()) return it->second;
        int v = int(labels.size());
        id.emplace(tok, v);
        labels.push_back(tok);
        return v;
    };
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue;
        if (!(ls >> b)) throw ParseError(line_no, "expected two node tokens");
        if (ls >> extra) throw ParseError(line_no, "expected exactly two node tokens");
        if (a == b) throw ParseError(line_no, "self-loop '" + a + "'");
        const int ia = intern(a);
        const int ib = intern(b);
        edges.emplace_back(ia, ib);
    }
    const int n = int(labels.size());
    return Graph::from_edges(n, edges, std::move(labels));
}

inline void write_edge_list(const Graph& g, std::ostream& out) {
    for (auto [u, v] : g.edge_list()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

}  // namespace cohesion
