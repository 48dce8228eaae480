#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "cohesion/bitset.hpp"
#include "cohesion/cliques.hpp"
#include "cohesion/cuts.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/popularity.hpp"
#include "cohesion/subsets.hpp"

namespace cohesion {

// Coalition intersections with a declared bipartition (ell = larger side).
struct BipartiteCoalitionStats {
    int ell = 0;
    int r = 0;
};

inline BipartiteCoalitionStats bipartite_stats(const NodeSet& s, const NodeSet& left) {
    BipartiteCoalitionStats b;
    s.for_each([&](int u) {
        if (left.test(u))
            ++b.ell;
        else
            ++b.r;
    });
    return b;
}

// Partition with at most one non-singleton coalition; iota counts the exiles.
struct ClanStructure {
    std::optional<NodeSet> clan;
    NodeSet exiles;
    int iota = 0;
};

inline std::optional<ClanStructure> as_clan_structure(const GroupStructure& w) {
    ClanStructure c;
    c.exiles = NodeSet(w.num_nodes());
    for (int i = 0; i < w.size(); ++i) {
        const NodeSet& s = w.coalition(i);
        if (s.count() == 1) {
            c.exiles.set(s.first());
            ++c.iota;
        } else if (!c.clan) {
            c.clan = s;
        } else {
            return std::nullopt;
        }
    }
    return c;
}

// --- closed forms for special graph classes -----------------------------------

// Star with m tails (center id 0): a clan structure is stable exactly when the
// center's coalition holds at least half of the tails and everyone else is
// single.
inline bool star_stable(int m, const GroupStructure& w) {
    assert(m >= 2 && w.num_nodes() == m + 1);
    const NodeSet& center_grp = w.coalition_of(0);
    for (int i = 0; i < w.size(); ++i)
        if (w.coalition(i) != center_grp && w.coalition(i).count() != 1) return false;
    int tails = center_grp.count() - 1;
    return 2 * tails >= m;
}

// Balanced complete bipartite graph (sides 0..n-1 and n..2n-1): stable exactly
// when every coalition meets both sides equally.
inline bool knn_stable(int n, const GroupStructure& w) {
    assert(w.num_nodes() == 2 * n);
    NodeSet left(2 * n);
    for (int u = 0; u < n; ++u) left.set(u);
    for (int i = 0; i < w.size(); ++i) {
        auto b = bipartite_stats(w.coalition(i), left);
        if (b.ell != b.r) return false;
    }
    return true;
}

// Complete bipartite K_{m,n}, m >= n >= 1, sides 0..m-1 (larger) and
// m..m+n-1 (smaller): a clan structure is stable exactly when the clan
// swallows the whole smaller side and holds at least max(n, iota*n) larger-
// side members.
inline bool kmn_clan_stable(int m, int n, const ClanStructure& w) {
    assert(m >= n && n >= 1);
    if (!w.clan) return false;
    NodeSet smaller(m + n);
    for (int v = m; v < m + n; ++v) smaller.set(v);
    if (!smaller.is_subset_of(*w.clan)) return false;
    int ell = w.clan->count() - n;
    return ell >= n && ell >= w.iota * n;
}

// --- structural cut test -------------------------------------------------------

enum class SemiTest { NotCohesive, Unknown };

// One-sided: fires only when removing a minimum cut leaves a smallest
// component that is itself bound together (chi >= 2, so it contains an edge)
// and the cut is weak relative to the fragmentation.
inline SemiTest structural_semi_test(const Graph&, const CutProfile& p) {
    if (p.chi >= 2 &&
        (p.kappa == 1 || (p.mu > 2 && (long long)(p.chi) * (p.mu - 2) >= p.kappa)))
        return SemiTest::NotCohesive;
    return SemiTest::Unknown;
}

// --- diameter-2 graphs with universal nodes ------------------------------------

// v1 = nodes adjacent to everything (eccentricity 1), v2 = the rest; exists
// exactly when the graph is connected, incomplete, and v1 is non-empty.
struct EccentricityPartition {
    NodeSet v1;
    NodeSet v2;
};

inline std::optional<EccentricityPartition> eccentricity_partition(const Graph& g) {
    const int n = g.num_nodes();
    EccentricityPartition p{NodeSet(n), NodeSet(n)};
    for (int u = 0; u < n; ++u) {
        if (g.degree(u) == n - 1)
            p.v1.set(u);
        else
            p.v2.set(u);
    }
    if (p.v1.empty() || p.v2.empty()) return std::nullopt;
    return p;
}

struct Fraction {
    long long num = 0;
    long long den = 1;

    double value() const { return double(num) / double(den); }
};

// fin*eout/ein - fout with ties counted inside v2 only. For u in S ⊆ v2,
// S blocks the grand coalition exactly when lambda exceeds |v1| for every
// member.
inline Fraction lambda_value(const Graph& g, const EccentricityPartition& part, int u,
                             const NodeSet& s) {
    assert(s.is_subset_of(part.v2));
    TieCounts t = tie_counts(g, u, s, part.v2);
    assert(t.ein >= 1);
    return {(long long)(t.fin) * t.eout - (long long)(t.fout) * t.ein, t.ein};
}

// Exact cohesion decision scanning only connected subsets of v2: a blocking
// set never touches v1 (universal nodes already peak in the grand coalition),
// and components of a blocker block on their own.
inline CohesionVerdict ndu2_cohesive(const Graph& g) {
    auto part = eccentricity_partition(g);
    assert(part.has_value());
    const int n = g.num_nodes();
    const long long v1_size = part->v1.count();
    const int v2_size = part->v2.count();
    std::vector<int> deg_v2(n, 0);
    part->v2.for_each([&](int u) {
        for (int v : g.neighbors(u))
            if (part->v2.test(v)) ++deg_v2[u];
    });

    std::optional<NodeSet> found;
    for_each_connected_subset_within(
        g, part->v2, 2, std::max(2, v2_size), [&](const NodeSet& s, const std::vector<int>& members) {
            const int size = int(members.size());
            for (int u : members) {
                const long long fin = induced_degree(g, u, s);
                const long long fout = deg_v2[u] - fin;
                const long long ein = size - fin;
                const long long eout = v2_size - size - fout;
                // lambda(u,S) > |v1|  <=>  fin*eout - fout*ein > |v1|*ein
                if (fin * eout - fout * ein <= v1_size * ein) return false;
            }
            found = s;
            return true;
        });
    if (found) {
        auto cert = check_blocking(g, *found, GroupStructure::grand(n));
        assert(cert.has_value());
        return {VerdictStatus::NotCohesive, VerdictMethod::Exact, std::move(cert)};
    }
    return {VerdictStatus::Cohesive, VerdictMethod::Exact, std::nullopt};
}

enum class SufficientTest { Cohesive, Unknown };

// Clique-count sufficient condition: with c the clique number inside v2 and
// v2 bigger than c(c-1), enough universal nodes force cohesion.
inline SufficientTest turan_sufficient(const Graph& g, const EccentricityPartition& part) {
    Graph h = induced_subgraph(g, part.v2);
    const long long c = clique_number(h);
    const long long v2 = part.v2.count();
    if (v2 > c * (c - 1) && part.v1.count() >= (c - 1) * (v2 - c)) return SufficientTest::Cohesive;
    return SufficientTest::Unknown;
}

}  // namespace cohesion
