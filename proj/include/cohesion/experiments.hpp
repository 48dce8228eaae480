#pragma once

#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include "cohesion/generate.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/heuristics.hpp"
#include "cohesion/popularity.hpp"

namespace cohesion {

// Five-number summary (min, q25, median, q75, max) of exact payoffs, sorted
// exactly and linearly interpolated only at the end.
inline std::array<double, 5> payoff_quantiles(std::vector<Popularity> pool) {
    std::array<double, 5> out{0, 0, 0, 0, 0};
    if (pool.empty()) return out;
    std::sort(pool.begin(), pool.end());
    auto at = [&](double p) {
        const double pos = p * double(pool.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, pool.size() - 1);
        const double frac = pos - double(lo);
        return pool[lo].value() + frac * (pool[hi].value() - pool[lo].value());
    };
    out = {at(0.0), at(0.25), at(0.5), at(0.75), at(1.0)};
    return out;
}

struct ExperimentRow {
    std::string label;
    int n = 0;
    long long s = 0, b = 0, c = 0;
    double accuracy = 0.0;
    double core_stable_rate = 0.0;  // -1 when exact stability was not computed
    double improved_node_rate = 0.0;
    std::string method;
    std::uint64_t seed = 0;
    std::array<double, 5> payoff_method{};
    std::array<double, 5> payoff_grand{};
    double connected_fraction = 0.0;
    long long communities = -1;  // single-graph rows only
};

struct ExperimentReport {
    std::vector<ExperimentRow> rows;
};

inline const char* method_name(Method m) { return m == Method::LM ? "lm" : "ap"; }

inline ExperimentRow make_row(std::string label, int n, const BatchStats& st, Method m,
                              std::uint64_t seed) {
    ExperimentRow r;
    r.label = std::move(label);
    r.n = n;
    r.s = st.s;
    r.b = st.b;
    r.c = st.c;
    r.accuracy = st.accuracy();
    r.core_stable_rate = st.core_stable_rate();
    r.improved_node_rate = st.improved_node_rate();
    r.method = method_name(m);
    r.seed = seed;
    r.payoff_method = payoff_quantiles(st.pay_method);
    r.payoff_grand = payoff_quantiles(st.pay_grand);
    r.connected_fraction = st.s ? double(st.connected) / double(st.s) : 0.0;
    return r;
}

// Every connected graph on n nodes up to isomorphism, exact ground truth.
inline ExperimentRow run_enumerate(int n, Method m, const CohesionOptions& opts = {}) {
    const std::vector<Graph> graphs = enumerate_connected_graphs(n);
    const BatchStats st = evaluate_batch(graphs, m, opts, /*collect_payoffs=*/true);
    return make_row(std::to_string(n), n, st, m, 0);
}

// Uniform random graphs; per-sample seeds derive from the root seed so any
// sample can be reproduced in isolation. With connected_only, rejected draws
// re-derive from the sample seed, leaving other samples untouched.
inline ExperimentRow run_sample(int n, long long samples, std::uint64_t root_seed, Method m,
                                bool connected_only = false, const CohesionOptions& opts = {}) {
    std::vector<Graph> graphs;
    graphs.reserve(static_cast<std::size_t>(samples));
    for (long long i = 0; i < samples; ++i) {
        const std::uint64_t si = derive_seed(root_seed, static_cast<std::uint64_t>(i));
        Graph g = sample_random_graph(n, si);
        if (connected_only)
            for (std::uint64_t t = 1; !is_connected(g); ++t)
                g = sample_random_graph(n, derive_seed(si, t));
        graphs.push_back(std::move(g));
    }
    const BatchStats st = evaluate_batch(graphs, m, opts, /*collect_payoffs=*/true);
    return make_row(std::to_string(n), n, st, m, root_seed);
}

// Real network: analyze the largest connected component. Ground truth comes
// from the quick tests only; a heuristic blocking set also certifies
// NotCohesive. Exact core stability is out of reach, marked -1.
inline ExperimentRow run_real(const Graph& raw, const std::string& name, Method m,
                              const CohesionOptions& opts = {}) {
    const Graph g =
        raw.num_nodes() == 0 ? raw : induced_subgraph(raw, largest_component(raw));
    ExperimentRow r;
    r.label = name;
    r.n = g.num_nodes();
    r.s = 1;
    r.method = method_name(m);
    r.connected_fraction = 1.0;
    r.core_stable_rate = -1.0;
    if (g.num_nodes() == 0) return r;

    const auto quick = quick_cohesion_tests(g, opts.cut_enum_budget);
    const HeuristicOutcome out = run_heuristic(g, m);
    if (out.blocking_found || (quick && quick->status == VerdictStatus::NotCohesive)) r.b = 1;
    if (quick && quick->status == VerdictStatus::Cohesive) r.c = 1;
    r.accuracy = double(r.b + r.c);

    const NodeSet full = NodeSet::full(g.num_nodes());
    std::vector<Popularity> pm, pg;
    long long improved = 0;
    for (int u = 0; u < g.num_nodes(); ++u) {
        const Popularity method_pay = payoff_under(g, out.structure, u);
        const Popularity grand_pay = popularity(g, u, full);
        if (method_pay > grand_pay) ++improved;
        pm.push_back(method_pay);
        pg.push_back(grand_pay);
    }
    r.improved_node_rate = double(improved) / double(g.num_nodes());
    r.payoff_method = payoff_quantiles(std::move(pm));
    r.payoff_grand = payoff_quantiles(std::move(pg));
    r.communities = out.structure.size();
    return r;
}

inline std::string to_csv(const ExperimentReport& rep) {
    std::string out = "n,s,b,c,accuracy,core_stable_rate,improved_node_rate,method,seed\n";
    char buf[256];
    for (const ExperimentRow& r : rep.rows) {
        std::snprintf(buf, sizeof buf, "%d,%lld,%lld,%lld,%.6f,%.6f,%.6f,%s,%llu\n", r.n, r.s,
                      r.b, r.c, r.accuracy, r.core_stable_rate, r.improved_node_rate,
                      r.method.c_str(), static_cast<unsigned long long>(r.seed));
        out += buf;
    }
    return out;
}

}  // namespace cohesion
