#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "cohesion/generate.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/popularity.hpp"
#include "cohesion/subsets.hpp"

using namespace cohesion;

namespace {

// Six-node network: triangles {a,b,c} and {d,e,f} tied together by a-e, c-d.
Graph two_clans() {
    std::istringstream in("a b\na c\nb c\nd e\nd f\ne f\na e\nc d\n");
    return parse_edge_list(in);
}

// Direct transcription of the blocking definition: every member strictly
// prefers H to its current coalition.
bool brute_blocks(const Graph& g, const NodeSet& h, const GroupStructure& w) {
    bool ok = !h.empty();
    h.for_each([&](int u) {
        Popularity inside = popularity(g, u, h);
        Popularity current = payoff_under(g, w, u);
        if (!(inside > current)) ok = false;
    });
    return ok;
}

bool brute_core_stable(const Graph& g, const GroupStructure& w) {
    const int n = g.num_nodes();
    bool stable = true;
    scan_masks_size_major(n, 1, n, [&](std::uint64_t m) {
        if (brute_blocks(g, NodeSet::from_mask(n, m), w)) {
            stable = false;
            return true;
        }
        return false;
    });
    return stable;
}

}  // namespace

TEST_CASE("exact payoff comparisons cross-multiply") {
    Popularity a{1, 3}, b{2, 6}, c{1, 2}, zero{0, 5};
    REQUIRE(a == b);
    REQUIRE(a < c);
    REQUIRE(c > b);
    REQUIRE(zero < a);
    REQUIRE(zero == Popularity{0, 1});
    REQUIRE(a <= b);
    REQUIRE(a >= b);
    REQUIRE(a != c);
    REQUIRE(Popularity{3, 7}.value() == Catch::Approx(3.0 / 7.0));
}

TEST_CASE("popularity is induced degree over coalition size") {
    Graph g = two_clans();
    NodeSet grand = NodeSet::full(6);
    // degrees: a,c,d,e = 3 and b,f = 2
    REQUIRE(popularity(g, 0, grand) == Popularity{3, 6});
    REQUIRE(popularity(g, 1, grand) == Popularity{2, 6});
    NodeSet abc = NodeSet::of(6, {0, 1, 2});
    REQUIRE(popularity(g, 0, abc) == Popularity{2, 3});
    NodeSet lone = NodeSet::of(6, {1});
    REQUIRE(popularity(g, 1, lone) == Popularity{0, 1});
}

TEST_CASE("tie counts satisfy their partition identities") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + int(rng() % 6);
        Graph g = sample_random_graph(n, rng());
        std::uint64_t sm = rng() & low_mask(n);
        std::uint64_t am = sm | (rng() & low_mask(n));
        if (!sm) continue;
        NodeSet s = NodeSet::from_mask(n, sm), ambient = NodeSet::from_mask(n, am);
        int u = s.first();
        TieCounts t = tie_counts(g, u, s, ambient);
        REQUIRE(t.fin + t.ein == s.count());
        REQUIRE(t.fin + t.fout + t.ein + t.eout == ambient.count());
        REQUIRE(t.fin + t.fout == induced_degree(g, u, ambient));
    }
}

TEST_CASE("the sign of gamma matches the popularity threshold") {
    for (int n = 3; n <= 5; ++n) {
        for (const Graph& g : enumerate_connected_graphs(n)) {
            scan_masks_size_major(n, 1, n, [&](std::uint64_t m) {
                NodeSet s = NodeSet::from_mask(n, m);
                s.for_each([&](int u) {
                    long long fin = induced_degree(g, u, s);
                    bool threshold = fin * n > (long long)(g.degree(u)) * s.count();
                    REQUIRE((gamma(g, u, s) > 0) == threshold);
                });
                return false;
            });
        }
    }
}

TEST_CASE("blocking requires strict improvement for every member") {
    Graph p4 = path_graph(4);
    GroupStructure grand = GroupStructure::grand(4);
    // the middle pair only ties its grand payoff (1/2 vs 2/4)
    REQUIRE_FALSE(check_blocking(p4, NodeSet::of(4, {1, 2}), grand).has_value());
    REQUIRE_FALSE(is_blocking(p4, NodeSet::of(4, {0, 1}), grand));

    Graph k2 = complete_graph(2);
    GroupStructure singles = GroupStructure::singletons(2);
    auto cert = check_blocking(k2, NodeSet::full(2), singles);
    REQUIRE(cert.has_value());
    REQUIRE(cert->blocking_set.count() == 2);
    for (auto& [u, inside, current] : cert->member_payoffs) {
        REQUIRE(inside == Popularity{1, 2});
        REQUIRE(current == Popularity{0, 1});
    }
}

TEST_CASE("blocks_grand agrees with the direct definition") {
    for (int n = 3; n <= 5; ++n) {
        for (const Graph& g : enumerate_connected_graphs(n)) {
            GroupStructure grand = GroupStructure::grand(n);
            scan_masks_size_major(n, 1, n, [&](std::uint64_t m) {
                NodeSet s = NodeSet::from_mask(n, m);
                REQUIRE(blocks_grand(g, s) == brute_blocks(g, s, grand));
                return false;
            });
        }
    }
}

TEST_CASE("group structures validate their input") {
    REQUIRE_THROWS_AS(GroupStructure::from_sets(3, {NodeSet::of(3, {0, 1})}),
                      std::invalid_argument);  // 2 uncovered
    REQUIRE_THROWS_AS(
        GroupStructure::from_sets(3, {NodeSet::of(3, {0, 1}), NodeSet::of(3, {1, 2})}),
        std::invalid_argument);  // overlap
    REQUIRE_THROWS_AS(GroupStructure::from_sets(3, {NodeSet::of(3, {0, 1, 2}), NodeSet(3)}),
                      std::invalid_argument);  // empty coalition
    REQUIRE_THROWS_AS(GroupStructure::from_sets(3, {NodeSet::of(4, {0, 1, 2, 3})}),
                      std::invalid_argument);  // wrong universe

    GroupStructure w = GroupStructure::from_assignment({5, 5, 0, 5, 0});
    REQUIRE(w.size() == 2);  // tags numbered by first occurrence
    REQUIRE(w.owner(0) == 0);
    REQUIRE(w.owner(2) == 1);
    REQUIRE(w.coalition_of(3).count() == 3);
    REQUIRE(payoff_under(Graph::from_edges(5, {{0, 1}}), w, 0) == Popularity{1, 3});

    REQUIRE(GroupStructure::grand(4).size() == 1);
    REQUIRE(GroupStructure::singletons(4).size() == 4);
}

TEST_CASE("core stability of explicit structures") {
    Graph k2 = complete_graph(2);
    REQUIRE(is_core_stable(k2, GroupStructure::singletons(2)).status ==
            VerdictStatus::NotCohesive);
    REQUIRE(is_core_stable(k2, GroupStructure::grand(2)).status == VerdictStatus::Cohesive);

    Graph g = two_clans();
    GroupStructure split = GroupStructure::from_assignment({0, 0, 0, 1, 1, 1});
    REQUIRE(is_core_stable(g, split).status == VerdictStatus::Cohesive);
    GroupStructure shattered = GroupStructure::from_assignment({0, 0, 0, 1, 2, 3});
    auto v = is_core_stable(g, shattered);
    REQUIRE(v.status == VerdictStatus::NotCohesive);
    REQUIRE(v.certificate.has_value());
    REQUIRE(brute_blocks(g, v.certificate->blocking_set, shattered));
}

TEST_CASE("exhaustive core stability matches brute force on all partitions") {
    // every partition of 5 nodes on a couple of structurally different graphs
    std::vector<Graph> graphs{path_graph(5), cycle_graph(5), star_graph(4),
                              sample_random_graph(5, 3)};
    for (const Graph& g : graphs) {
        std::vector<int> rgs(5, 0);
        while (true) {
            GroupStructure w = GroupStructure::from_assignment(rgs);
            REQUIRE((is_core_stable(g, w).status == VerdictStatus::Cohesive) ==
                    brute_core_stable(g, w));
            int i = 4;
            for (; i > 0; --i) {
                int maxv = 0;
                for (int j = 0; j < i; ++j) maxv = std::max(maxv, rgs[j]);
                if (rgs[i] <= maxv) break;
            }
            if (i == 0) break;
            ++rgs[i];
            for (int j = i + 1; j < 5; ++j) rgs[j] = 0;
        }
    }
}

TEST_CASE("first blocking set found is connected and minimal in the scan order") {
    Graph g = two_clans();
    auto cert = find_blocking_set(g, GroupStructure::grand(6));
    REQUIRE(cert.has_value());
    REQUIRE(cert->blocking_set.count() == 3);  // no pair blocks, both triangles do
    REQUIRE(is_connected(g, cert->blocking_set));
    REQUIRE(brute_blocks(g, cert->blocking_set, GroupStructure::grand(6)));
}

TEST_CASE("social cohesion decision agrees with brute force on all small classes") {
    for (int n = 3; n <= 6; ++n) {
        for (const Graph& g : enumerate_connected_graphs(n)) {
            CohesionVerdict v = is_socially_cohesive(g);
            bool brute = brute_core_stable(g, GroupStructure::grand(n));
            REQUIRE((v.status == VerdictStatus::Cohesive) == brute);
            if (v.status == VerdictStatus::NotCohesive) {
                REQUIRE(v.certificate.has_value());
                REQUIRE(brute_blocks(g, v.certificate->blocking_set, GroupStructure::grand(n)));
            }
        }
    }
}

TEST_CASE("quick verdicts are never contradicted by the exact solver") {
    for (int n = 3; n <= 6; ++n) {
        for (const Graph& g : enumerate_connected_graphs(n)) {
            auto quick = quick_cohesion_tests(g);
            if (!quick) continue;
            auto exact_cert = find_blocking_set(g, GroupStructure::grand(n));
            bool cohesive = !exact_cert.has_value();
            REQUIRE((quick->status == VerdictStatus::Cohesive) == cohesive);
        }
    }
}

TEST_CASE("quick tests handle the degenerate shapes directly") {
    REQUIRE(is_socially_cohesive(Graph::from_edges(0, {})).status == VerdictStatus::Cohesive);
    REQUIRE(is_socially_cohesive(Graph::from_edges(1, {})).status == VerdictStatus::Cohesive);
    REQUIRE(is_socially_cohesive(Graph::from_edges(5, {})).status == VerdictStatus::Cohesive);

    // disconnected with an edge: some component blocks
    Graph disc = Graph::from_edges(5, {{0, 1}, {2, 3}, {3, 4}, {2, 4}});
    auto v = is_socially_cohesive(disc);
    REQUIRE(v.status == VerdictStatus::NotCohesive);
    REQUIRE(v.method == VerdictMethod::QuickTest);
    REQUIRE(v.certificate.has_value());
    REQUIRE(brute_blocks(disc, v.certificate->blocking_set, GroupStructure::grand(5)));

    // a long cycle trips the low-degree edge test
    auto c7 = is_socially_cohesive(cycle_graph(7));
    REQUIRE(c7.status == VerdictStatus::NotCohesive);
    REQUIRE(c7.method == VerdictMethod::QuickTest);

    // star plus one tail-tail edge: the tail pair blocks
    auto star_plus = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}});
    auto sv = is_socially_cohesive(star_plus);
    REQUIRE(sv.status == VerdictStatus::NotCohesive);
    REQUIRE(sv.certificate.has_value());
}

TEST_CASE("size caps turn into exceptions or inconclusive verdicts") {
    Graph k26 = complete_graph(26);
    REQUIRE_THROWS_AS(is_socially_cohesive(k26), CapExceeded);

    CohesionOptions quick_only;
    quick_only.quick_only = true;
    auto v = is_socially_cohesive(k26, quick_only);
    REQUIRE(v.status == VerdictStatus::Inconclusive);

    CohesionOptions raised;
    raised.exact_cap = 26;
    REQUIRE(is_socially_cohesive(k26, raised).status == VerdictStatus::Cohesive);
}
