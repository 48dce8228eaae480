#pragma once

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "cohesion/experiments.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/popularity.hpp"

namespace cohesion {

using nlohmann::json;

inline const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Cohesive: return "Cohesive";
        case VerdictStatus::NotCohesive: return "NotCohesive";
        default: return "Inconclusive";
    }
}

inline const char* to_string(VerdictMethod m) {
    switch (m) {
        case VerdictMethod::Exact: return "Exact";
        case VerdictMethod::QuickTest: return "QuickTest";
        default: return "Heuristic";
    }
}

inline json payoff_to_json(const Popularity& p) { return json::array({p.num, p.den}); }

inline json group_structure_to_json(const Graph& g, const GroupStructure& w) {
    json arr = json::array();
    for (int i = 0; i < w.size(); ++i) {
        json part = json::array();
        w.coalition(i).for_each([&](int u) { part.push_back(g.label(u)); });
        arr.push_back(std::move(part));
    }
    return arr;
}

inline GroupStructure group_structure_from_json(const Graph& g, const json& j) {
    if (!j.is_array()) throw std::invalid_argument("partition JSON must be an array of arrays");
    std::unordered_map<std::string, int> id;
    for (int u = 0; u < g.num_nodes(); ++u) id[g.label(u)] = u;
    std::vector<NodeSet> parts;
    for (const json& part : j) {
        if (!part.is_array())
            throw std::invalid_argument("partition JSON must be an array of arrays");
        NodeSet s(g.num_nodes());
        for (const json& member : part) {
            const std::string name =
                member.is_string() ? member.get<std::string>() : member.dump();
            auto it = id.find(name);
            if (it == id.end())
                throw std::invalid_argument("partition names unknown node '" + name + "'");
            s.set(it->second);
        }
        parts.push_back(std::move(s));
    }
    return GroupStructure::from_sets(g.num_nodes(), std::move(parts));
}

inline json certificate_to_json(const Graph& g, const BlockingCertificate& cert) {
    json j;
    json members = json::array();
    cert.blocking_set.for_each([&](int u) { members.push_back(g.label(u)); });
    j["blocking_set"] = std::move(members);
    json payoffs = json::array();
    for (const auto& [u, inside, current] : cert.member_payoffs)
        payoffs.push_back(json{{"node", g.label(u)},
                               {"inside", payoff_to_json(inside)},
                               {"current", payoff_to_json(current)}});
    j["member_payoffs"] = std::move(payoffs);
    return j;
}

inline json verdict_to_json(const Graph& g, const CohesionVerdict& v) {
    json j;
    j["status"] = to_string(v.status);
    j["method"] = to_string(v.method);
    if (v.certificate) j["certificate"] = certificate_to_json(g, *v.certificate);
    return j;
}

inline json row_to_json(const ExperimentRow& r) {
    json j;
    j["label"] = r.label;
    j["n"] = r.n;
    j["s"] = r.s;
    j["b"] = r.b;
    j["c"] = r.c;
    j["accuracy"] = r.accuracy;
    if (r.core_stable_rate < 0.0)
        j["core_stable_rate"] = nullptr;
    else
        j["core_stable_rate"] = r.core_stable_rate;
    j["improved_node_rate"] = r.improved_node_rate;
    j["method"] = r.method;
    j["seed"] = r.seed;
    j["payoff_quantiles"] = {{"method", r.payoff_method}, {"grand", r.payoff_grand}};
    j["connected_fraction"] = r.connected_fraction;
    if (r.communities >= 0) j["communities"] = r.communities;
    return j;
}

inline json report_to_json(const ExperimentReport& rep) {
    json rows = json::array();
    for (const ExperimentRow& r : rep.rows) rows.push_back(row_to_json(r));
    return json{{"rows", std::move(rows)}};
}

}  // namespace cohesion
