#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "cohesion/bitset.hpp"
#include "cohesion/cuts.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/subsets.hpp"

namespace cohesion {

// Exact rational payoff deg_S(u)/|S|, value in [0,1).
struct Popularity {
    long long num = 0;
    long long den = 1;

    double value() const { return double(num) / double(den); }
};

inline bool operator<(const Popularity& a, const Popularity& b) {
    return a.num * b.den < b.num * a.den;
}
inline bool operator>(const Popularity& a, const Popularity& b) { return b < a; }
inline bool operator==(const Popularity& a, const Popularity& b) {
    return a.num * b.den == b.num * a.den;
}
inline bool operator<=(const Popularity& a, const Popularity& b) { return !(b < a); }
inline bool operator>=(const Popularity& a, const Popularity& b) { return !(a < b); }

// Actual/absent ties of u inside and outside S, relative to an ambient set;
// ein counts u itself, so fin+ein = |S| and all four sum to |ambient|.
struct TieCounts {
    int fin = 0;
    int fout = 0;
    int ein = 0;
    int eout = 0;
};

// Partition of 0..n-1 into non-empty coalitions with a node->coalition index.
class GroupStructure {
public:
    static GroupStructure grand(int n) {
        GroupStructure w;
        w.n_ = n;
        w.parts_.push_back(NodeSet::full(n));
        w.owner_.assign(n, 0);
        return w;
    }

    static GroupStructure singletons(int n) {
        GroupStructure w;
        w.n_ = n;
        w.owner_.resize(n);
        for (int u = 0; u < n; ++u) {
            NodeSet s(n);
            s.set(u);
            w.parts_.push_back(s);
            w.owner_[u] = u;
        }
        return w;
    }

    static GroupStructure from_sets(int n, std::vector<NodeSet> parts) {
        GroupStructure w;
        w.n_ = n;
        w.owner_.assign(n, -1);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i].empty()) throw std::invalid_argument("group structure: empty coalition");
            if (parts[i].universe() != n)
                throw std::invalid_argument("group structure: wrong universe");
            bool clash = false;
            parts[i].for_each([&](int u) {
                if (w.owner_[u] != -1) clash = true;
                w.owner_[u] = int(i);
            });
            if (clash) throw std::invalid_argument("group structure: coalitions overlap");
        }
        for (int u = 0; u < n; ++u)
            if (w.owner_[u] == -1) throw std::invalid_argument("group structure: node not covered");
        w.parts_ = std::move(parts);
        return w;
    }

    // comm[u] = arbitrary community tag; coalition order follows first-seen tag.
    static GroupStructure from_assignment(const std::vector<int>& comm) {
        const int n = int(comm.size());
        std::vector<int> index;
        std::vector<NodeSet> parts;
        std::vector<int> remap;
        for (int u = 0; u < n; ++u) {
            int tag = comm[u];
            int found = -1;
            for (std::size_t i = 0; i < index.size(); ++i)
                if (index[i] == tag) {
                    found = int(i);
                    break;
                }
            if (found == -1) {
                index.push_back(tag);
                parts.emplace_back(n);
                found = int(index.size()) - 1;
            }
            parts[found].set(u);
        }
        return from_sets(n, std::move(parts));
    }

    int num_nodes() const { return n_; }
    int size() const { return int(parts_.size()); }
    const NodeSet& coalition(int i) const { return parts_[i]; }
    int owner(int u) const { return owner_[u]; }
    const NodeSet& coalition_of(int u) const { return parts_[owner_[u]]; }
    const std::vector<NodeSet>& coalitions() const { return parts_; }

private:
    int n_ = 0;
    std::vector<NodeSet> parts_;
    std::vector<int> owner_;
};

// Witness that blocking_set improves every member over the challenged
// structure: (node, payoff inside the set, payoff under the structure).
struct BlockingCertificate {
    NodeSet blocking_set;
    std::vector<std::tuple<int, Popularity, Popularity>> member_payoffs;
};

enum class VerdictStatus { Cohesive, NotCohesive, Inconclusive };
enum class VerdictMethod { Exact, QuickTest, Heuristic };

struct CohesionVerdict {
    VerdictStatus status = VerdictStatus::Inconclusive;
    VerdictMethod method = VerdictMethod::Exact;
    std::optional<BlockingCertificate> certificate;
};

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CohesionOptions {
    int exact_cap = 25;
    bool quick_only = false;
    std::uint64_t cut_enum_budget = std::uint64_t{1} << 22;
};

// --- payoffs -----------------------------------------------------------------

inline Popularity popularity(const Graph& g, int u, const NodeSet& s) {
    assert(s.test(u));
    return {induced_degree(g, u, s), s.count()};
}

inline Popularity payoff_under(const Graph& g, const GroupStructure& w, int u) {
    return popularity(g, u, w.coalition_of(u));
}

inline TieCounts tie_counts(const Graph& g, int u, const NodeSet& s, const NodeSet& ambient) {
    assert(s.test(u));
    assert(s.is_subset_of(ambient));
    TieCounts t;
    for (int v : g.neighbors(u)) {
        if (s.test(v))
            ++t.fin;
        else if (ambient.test(v))
            ++t.fout;
    }
    t.ein = s.count() - t.fin;
    t.eout = ambient.count() - s.count() - t.fout;
    return t;
}

// fin*eout - fout*ein over ambient V; positive for every member of S exactly
// when S blocks the grand coalition.
inline long long gamma(const Graph& g, int u, const NodeSet& s) {
    TieCounts t = tie_counts(g, u, s, NodeSet::full(g.num_nodes()));
    return (long long)(t.fin) * t.eout - (long long)(t.fout) * t.ein;
}

// --- blocking ----------------------------------------------------------------

inline std::optional<BlockingCertificate> check_blocking(const Graph& g, const NodeSet& s,
                                                         const GroupStructure& w) {
    assert(!s.empty());
    BlockingCertificate cert;
    cert.blocking_set = s;
    bool blocked = true;
    s.for_each([&](int u) {
        if (!blocked) return;
        Popularity inside = popularity(g, u, s);
        Popularity current = payoff_under(g, w, u);
        if (!(inside > current)) {
            blocked = false;
            return;
        }
        cert.member_payoffs.emplace_back(u, inside, current);
    });
    if (!blocked) return std::nullopt;
    return cert;
}

inline bool is_blocking(const Graph& g, const NodeSet& s, const GroupStructure& w) {
    return check_blocking(g, s, w).has_value();
}

inline bool blocks_grand(const Graph& g, const NodeSet& s) {
    assert(!s.empty());
    bool ok = true;
    s.for_each([&](int u) {
        if (ok && gamma(g, u, s) <= 0) ok = false;
    });
    return ok;
}

// Size-major exhaustive scan for a blocking set. A first hit is always an
// induced-connected set: any component of a blocker blocks on its own with
// strictly fewer nodes, so it would have been reached earlier. Requires
// n <= 64.
inline std::optional<BlockingCertificate> find_blocking_set(
    const Graph& g, const GroupStructure& w, std::optional<int> size_cap = std::nullopt) {
    const int n = g.num_nodes();
    assert(n <= 64);
    if (n < 2) return std::nullopt;
    const int cap = size_cap ? std::min(*size_cap, n) : n;
    if (cap < 2) return std::nullopt;
    std::vector<long long> cur_num(n), cur_den(n);
    for (int u = 0; u < n; ++u) {
        Popularity p = payoff_under(g, w, u);
        cur_num[u] = p.num;
        cur_den[u] = p.den;
    }
    auto hit = scan_masks_size_major(n, 2, cap, [&](std::uint64_t s) {
        const long long size = std::popcount(s);
        std::uint64_t rest = s;
        while (rest) {
            int u = std::countr_zero(rest);
            rest &= rest - 1;
            long long fin = std::popcount(g.adjacency_mask(u) & s);
            // fin/size > cur  <=>  fin*cur_den > cur_num*size
            if (fin * cur_den[u] <= cur_num[u] * size) return false;
        }
        return true;
    });
    if (!hit) return std::nullopt;
    NodeSet s = NodeSet::from_mask(n, *hit);
    assert(is_connected(g, s));
    auto cert = check_blocking(g, s, w);
    assert(cert.has_value());
    return cert;
}

inline CohesionVerdict is_core_stable(const Graph& g, const GroupStructure& w) {
    auto cert = find_blocking_set(g, w);
    if (cert) return {VerdictStatus::NotCohesive, VerdictMethod::Exact, std::move(cert)};
    return {VerdictStatus::Cohesive, VerdictMethod::Exact, std::nullopt};
}

// --- cohesion of the grand coalition ------------------------------------------

namespace detail {

inline std::optional<CohesionVerdict> trivial_cohesion(const Graph& g) {
    const int n = g.num_nodes();
    if (n <= 1 || g.num_edges() == 0)
        return CohesionVerdict{VerdictStatus::Cohesive, VerdictMethod::QuickTest, std::nullopt};
    if (!is_connected(g)) {
        // A component holding an edge beats the grand coalition: every member
        // keeps its degree while the denominator shrinks.
        for (const NodeSet& comp : components(g))
            if (comp.count() >= 2) {
                auto cert = check_blocking(g, comp, GroupStructure::grand(n));
                assert(cert.has_value());
                return CohesionVerdict{VerdictStatus::NotCohesive, VerdictMethod::QuickTest,
                                       std::move(cert)};
            }
        assert(false);
    }
    return std::nullopt;
}

inline std::optional<BlockingCertificate> low_degree_edge(const Graph& g) {
    const int n = g.num_nodes();
    for (auto [u, v] : g.edge_list())
        if (2 * g.degree(u) < n && 2 * g.degree(v) < n) {
            NodeSet s = NodeSet::of(n, {u, v});
            auto cert = check_blocking(g, s, GroupStructure::grand(n));
            assert(cert.has_value());
            return cert;
        }
    return std::nullopt;
}

}  // namespace detail

// O(1)/O(E) rejections plus the structural cut test; nullopt when they are all
// silent. Only NotCohesive outcomes carry certificates; Cohesive outcomes come
// from the trivial cases alone.
inline std::optional<CohesionVerdict> quick_cohesion_tests(
    const Graph& g, std::uint64_t cut_enum_budget = std::uint64_t{1} << 22) {
    if (auto v = detail::trivial_cohesion(g)) return v;
    const int n = g.num_nodes();

    // Both endpoints of some edge below half the graph: the pair defects.
    // n > 2*maxdeg makes every edge qualify; the scan covers the rest.
    if (auto cert = detail::low_degree_edge(g))
        return CohesionVerdict{VerdictStatus::NotCohesive, VerdictMethod::QuickTest,
                               std::move(cert)};

    // Structural cut test; one-sided, skipped when over budget or complete.
    if (n >= 3 && n <= 64 && g.num_edges() < std::size_t(n) * (n - 1) / 2) {
        auto w = cut_profile_witness(g, cut_enum_budget);
        if (w) {
            const auto [kappa, chi, mu] = w->profile;
            if (chi >= 2 && (kappa == 1 || (mu > 2 && (long long)(chi) * (mu - 2) >= kappa))) {
                const NodeSet& a1 = w->components.front();
                std::optional<BlockingCertificate> cert;
                if (kappa == 1) {
                    cert = check_blocking(g, a1, GroupStructure::grand(n));
                } else {
                    // Some edge inside the smallest component has both ends
                    // below half the graph.
                    auto ms = a1.members();
                    for (std::size_t i = 0; i < ms.size() && !cert; ++i)
                        for (std::size_t j = i + 1; j < ms.size() && !cert; ++j)
                            if (g.has_edge(ms[i], ms[j]))
                                cert = check_blocking(g, NodeSet::of(n, {ms[i], ms[j]}),
                                                      GroupStructure::grand(n));
                }
                assert(cert.has_value());
                return CohesionVerdict{VerdictStatus::NotCohesive, VerdictMethod::QuickTest,
                                       std::move(cert)};
            }
        }
    }
    return std::nullopt;
}

// Grand-coalition stability: quick rejections, then an exhaustive scan with
// the gamma criterion. Throws CapExceeded instead of scanning past the cap.
inline CohesionVerdict is_socially_cohesive(const Graph& g, const CohesionOptions& opts = {}) {
    if (auto v = quick_cohesion_tests(g, opts.cut_enum_budget)) return *v;
    if (opts.quick_only)
        return {VerdictStatus::Inconclusive, VerdictMethod::QuickTest, std::nullopt};
    const int n = g.num_nodes();
    if (n > opts.exact_cap)
        throw CapExceeded("exact cohesion check refused: n=" + std::to_string(n) + " exceeds cap " +
                          std::to_string(opts.exact_cap));
    auto cert = find_blocking_set(g, GroupStructure::grand(n));
    if (cert) return {VerdictStatus::NotCohesive, VerdictMethod::Exact, std::move(cert)};
    return {VerdictStatus::Cohesive, VerdictMethod::Exact, std::nullopt};
}

}  // namespace cohesion
