// Tests for the experiment drivers: quantile summaries, row bookkeeping,
// reproducible sampling, real-network rows, and the CSV/JSON encodings.

#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "cohesion/experiments.hpp"
#include "cohesion/generate.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/serialize.hpp"

using namespace cohesion;
using Catch::Matchers::WithinAbs;

namespace {

Graph from_text(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

}  // namespace

TEST_CASE("payoff quantiles") {
    SECTION("empty pool: all zeros") {
        auto q = payoff_quantiles({});
        for (double v : q) REQUIRE(v == 0.0);
    }
    SECTION("single value fills every slot") {
        auto q = payoff_quantiles({Popularity{1, 2}});
        for (double v : q) REQUIRE_THAT(v, WithinAbs(0.5, 1e-12));
    }
    SECTION("three points interpolate linearly") {
        auto q = payoff_quantiles({Popularity{1, 1}, Popularity{0, 1}, Popularity{1, 2}});
        REQUIRE_THAT(q[0], WithinAbs(0.0, 1e-12));
        REQUIRE_THAT(q[1], WithinAbs(0.25, 1e-12));
        REQUIRE_THAT(q[2], WithinAbs(0.5, 1e-12));
        REQUIRE_THAT(q[3], WithinAbs(0.75, 1e-12));
        REQUIRE_THAT(q[4], WithinAbs(1.0, 1e-12));
    }
    SECTION("summary is monotone on arbitrary pools") {
        std::vector<Popularity> pool;
        for (int i = 0; i < 17; ++i) pool.push_back(Popularity{(i * 7) % 11, 11});
        auto q = payoff_quantiles(pool);
        for (int i = 0; i + 1 < 5; ++i) REQUIRE(q[i] <= q[i + 1]);
    }
}

TEST_CASE("row bookkeeping from raw aggregates") {
    BatchStats st;
    st.s = 4;
    st.b = 1;
    st.c = 2;
    st.stable = 3;
    st.improved_nodes = 5;
    st.total_nodes = 20;
    st.connected = 2;
    ExperimentRow r = make_row("toy", 6, st, Method::AP, 99);
    REQUIRE(r.label == "toy");
    REQUIRE(r.n == 6);
    REQUIRE(r.s == 4);
    REQUIRE(r.b == 1);
    REQUIRE(r.c == 2);
    REQUIRE_THAT(r.accuracy * double(r.s), WithinAbs(double(r.b + r.c), 1e-9));
    REQUIRE_THAT(r.core_stable_rate, WithinAbs(0.75, 1e-12));
    REQUIRE_THAT(r.improved_node_rate, WithinAbs(0.25, 1e-12));
    REQUIRE_THAT(r.connected_fraction, WithinAbs(0.5, 1e-12));
    REQUIRE(r.method == "ap");
    REQUIRE(r.seed == 99);
    REQUIRE(r.communities == -1);
}

TEST_CASE("enumeration row for four-node graphs") {
    ExperimentRow r = run_enumerate(4, Method::LM);
    REQUIRE(r.label == "4");
    REQUIRE(r.s == 6);
    REQUIRE(r.c == 6);
    REQUIRE(r.b == 0);
    REQUIRE_THAT(r.accuracy, WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(r.connected_fraction, WithinAbs(1.0, 1e-12));
    REQUIRE(r.method == "lm");
    REQUIRE(r.seed == 0);
    REQUIRE(r.communities == -1);
    // quantiles come from real payoff pools: max is a fraction in (0, 1]
    REQUIRE(r.payoff_grand[4] > 0.0);
    REQUIRE(r.payoff_grand[4] <= 1.0);
}

TEST_CASE("sampling rows reproduce exactly from the root seed") {
    ExperimentRow a = run_sample(6, 30, 42, Method::AP);
    ExperimentRow b = run_sample(6, 30, 42, Method::AP);
    REQUIRE(a.s == 30);
    REQUIRE(a.b == b.b);
    REQUIRE(a.c == b.c);
    REQUIRE(a.seed == 42);
    REQUIRE_THAT(a.accuracy, WithinAbs(b.accuracy, 0.0));
    REQUIRE_THAT(a.core_stable_rate, WithinAbs(b.core_stable_rate, 0.0));
    REQUIRE_THAT(a.improved_node_rate, WithinAbs(b.improved_node_rate, 0.0));
    for (int i = 0; i < 5; ++i) {
        REQUIRE_THAT(a.payoff_method[i], WithinAbs(b.payoff_method[i], 0.0));
        REQUIRE_THAT(a.payoff_grand[i], WithinAbs(b.payoff_grand[i], 0.0));
    }
    // each sample re-derives from the root seed in isolation
    Graph g0 = sample_random_graph(6, derive_seed(42, 0));
    REQUIRE(g0.num_nodes() == 6);
}

TEST_CASE("connected-only sampling rejects disconnected draws") {
    ExperimentRow r = run_sample(5, 40, 7, Method::LM, /*connected_only=*/true);
    REQUIRE(r.s == 40);
    REQUIRE_THAT(r.connected_fraction, WithinAbs(1.0, 1e-12));
}

TEST_CASE("real-network row on a two-component toy graph") {
    // triangle plus a detached edge: only the triangle is analyzed
    Graph raw = Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {3, 4}});
    ExperimentRow r = run_real(raw, "toy", Method::LM);
    REQUIRE(r.label == "toy");
    REQUIRE(r.n == 3);
    REQUIRE(r.s == 1);
    REQUIRE(r.b == 0);  // the triangle is cohesive, nothing to find
    REQUIRE(r.c == 0);  // and the quick tests cannot certify that
    REQUIRE(r.core_stable_rate == -1.0);
    REQUIRE(r.communities == 1);
    REQUIRE_THAT(r.improved_node_rate, WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(r.payoff_grand[0], WithinAbs(2.0 / 3.0, 1e-12));
    REQUIRE_THAT(r.payoff_grand[4], WithinAbs(2.0 / 3.0, 1e-12));
}

TEST_CASE("real-network row detects the bowtie split") {
    Graph raw = from_text("0 1\n0 2\n1 2\n0 3\n0 4\n3 4\n");
    for (Method m : {Method::LM, Method::AP}) {
        ExperimentRow r = run_real(raw, "bowtie", m);
        REQUIRE(r.n == 5);
        REQUIRE(r.b == 1);  // quick cut test and the heuristic pair both fire
        REQUIRE(r.c == 0);
        REQUIRE(r.communities == 2);
        REQUIRE(r.improved_node_rate > 0.0);
    }
}

TEST_CASE("real-network row survives an edgeless input") {
    Graph raw = Graph::from_edges(3, {});
    ExperimentRow r = run_real(raw, "dust", Method::AP);
    REQUIRE(r.n == 1);  // largest component of an edgeless graph
    REQUIRE(r.c == 1);  // trivially cohesive
    REQUIRE(r.b == 0);
    REQUIRE(r.communities == 1);
}

TEST_CASE("CSV golden row") {
    ExperimentRow r;
    r.label = "x";
    r.n = 7;
    r.s = 10;
    r.b = 3;
    r.c = 4;
    r.accuracy = 0.7;
    r.core_stable_rate = 0.5;
    r.improved_node_rate = 0.25;
    r.method = "ap";
    r.seed = 42;
    ExperimentReport rep{{r}};
    REQUIRE(to_csv(rep) ==
            "n,s,b,c,accuracy,core_stable_rate,improved_node_rate,method,seed\n"
            "7,10,3,4,0.700000,0.500000,0.250000,ap,42\n");
}

TEST_CASE("row JSON encodes sentinels as null or absence") {
    ExperimentRow r;
    r.label = "net";
    r.n = 34;
    r.s = 1;
    r.core_stable_rate = -1.0;
    r.communities = 4;
    json j = row_to_json(r);
    REQUIRE(j["core_stable_rate"].is_null());
    REQUIRE(j["communities"] == 4);

    r.core_stable_rate = 0.25;
    r.communities = -1;
    j = row_to_json(r);
    REQUIRE_THAT(j["core_stable_rate"].get<double>(), WithinAbs(0.25, 1e-12));
    REQUIRE_FALSE(j.contains("communities"));

    ExperimentReport rep{{r}};
    json jr = report_to_json(rep);
    REQUIRE(jr["rows"].size() == 1);
    REQUIRE(jr["rows"][0]["label"] == "net");
}

TEST_CASE("group structures roundtrip through labeled JSON") {
    Graph g = from_text("a b\nb c\n");
    GroupStructure w = GroupStructure::from_assignment({0, 0, 1});
    json j = group_structure_to_json(g, w);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    REQUIRE(j[0] == json::array({"a", "b"}));
    REQUIRE(j[1] == json::array({"c"}));

    GroupStructure back = group_structure_from_json(g, j);
    REQUIRE(back.size() == 2);
    for (int u = 0; u < 3; ++u) REQUIRE(back.coalition_of(u) == w.coalition_of(u));

    REQUIRE_THROWS_AS(group_structure_from_json(g, json::array({json::array({"zz"})})),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(group_structure_from_json(g, json("scalar")), std::invalid_argument);
}

TEST_CASE("verdict JSON carries status, method and certificate labels") {
    Graph g = from_text("a b\na c\nb c\na d\na e\nd e\n");  // bowtie, hub a
    CohesionVerdict v = is_socially_cohesive(g);
    REQUIRE(v.status == VerdictStatus::NotCohesive);
    json j = verdict_to_json(g, v);
    REQUIRE(j["status"] == "NotCohesive");
    REQUIRE((j["method"] == "QuickTest" || j["method"] == "Exact"));
    REQUIRE(j.contains("certificate"));
    REQUIRE(j["certificate"]["blocking_set"].is_array());
    REQUIRE(j["certificate"]["blocking_set"].size() >= 2);
    REQUIRE(j["certificate"]["member_payoffs"].size() ==
            j["certificate"]["blocking_set"].size());

    Graph k = complete_graph(3);
    json jc = verdict_to_json(k, is_socially_cohesive(k));
    REQUIRE(jc["status"] == "Cohesive");
    REQUIRE_FALSE(jc.contains("certificate"));

    REQUIRE(payoff_to_json(Popularity{1, 2}) == json::array({1, 2}));
}
