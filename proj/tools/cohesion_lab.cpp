// cohesion-lab: command-line front end for the cohesion toolkit.
//
// Exit codes: 0 cohesive/stable (or command succeeded), 1 not cohesive /
// verification mismatch, 2 inconclusive, 3 input error, 4 size cap exceeded.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cohesion/characterizations.hpp"
#include "cohesion/experiments.hpp"
#include "cohesion/graph.hpp"
#include "cohesion/heuristics.hpp"
#include "cohesion/popularity.hpp"
#include "cohesion/reduction.hpp"
#include "cohesion/serialize.hpp"

namespace {

using namespace cohesion;

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return parse_edge_list(in);
}

std::vector<Method> parse_methods(const std::string& csv) {
    std::vector<Method> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "lm")
            out.push_back(Method::LM);
        else if (tok == "ap")
            out.push_back(Method::AP);
        else if (!tok.empty())
            throw std::runtime_error("unknown method '" + tok + "' (expected lm, ap)");
    }
    if (out.empty()) throw std::runtime_error("no methods selected");
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write: " + out_path);
    out << text;
}

std::string describe_set(const Graph& g, const NodeSet& s) {
    std::string txt = "{";
    bool first = true;
    s.for_each([&](int u) {
        if (!first) txt += ", ";
        txt += g.label(u);
        first = false;
    });
    return txt + "}";
}

int report_verdict(const Graph& g, const CohesionVerdict& v, bool as_json,
                   const std::string& out_path) {
    if (as_json) {
        emit(verdict_to_json(g, v).dump(2) + "\n", out_path);
    } else {
        std::string line = std::string(to_string(v.status)) + " (" + to_string(v.method) + ")";
        if (v.certificate)
            line += " blocking set " + describe_set(g, v.certificate->blocking_set);
        emit(line + "\n", out_path);
    }
    switch (v.status) {
        case VerdictStatus::Cohesive: return 0;
        case VerdictStatus::NotCohesive: return 1;
        default: return 2;
    }
}

void write_report(const ExperimentReport& rep, const std::string& out_path,
                  const std::string& json_path) {
    emit(to_csv(rep), out_path);
    if (!json_path.empty()) emit(report_to_json(rep).dump(2) + "\n", json_path);
}

int run_report_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open report file: " + path);
    json j = json::parse(in);
    std::printf("%-10s %6s %8s %8s %8s %9s %8s %9s %7s\n", "label", "n", "method", "s", "b",
                "c", "acc", "improved", "stable");
    for (const json& r : j.at("rows")) {
        const std::string stable = r.at("core_stable_rate").is_null()
                                       ? std::string("-")
                                       : std::to_string(r.at("core_stable_rate").get<double>());
        std::printf("%-10s %6d %8s %8lld %8lld %9lld %8.4f %9.4f %7s\n",
                    r.at("label").get<std::string>().c_str(), r.at("n").get<int>(),
                    r.at("method").get<std::string>().c_str(), r.at("s").get<long long>(),
                    r.at("b").get<long long>(), r.at("c").get<long long>(),
                    r.at("accuracy").get<double>(),
                    r.at("improved_node_rate").get<double>(), stable.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cohesion-lab: exact and heuristic analysis of popularity games"};
    app.require_subcommand(1);

    // check
    auto* check = app.add_subcommand("check", "decide social cohesion / core stability");
    std::string check_graph, check_partition, check_out;
    int check_cap = 25;
    bool check_quick_only = false, check_json = false;
    check->add_option("graph", check_graph, "edge-list file")->required();
    check->add_option("--partition", check_partition, "JSON partition to test instead of the grand coalition");
    check->add_option("--exact-cap", check_cap, "largest n for exhaustive search");
    check->add_flag("--quick-only", check_quick_only, "never fall back to exhaustive search");
    check->add_flag("--json", check_json, "emit the verdict as JSON");
    check->add_option("--out", check_out, "write the verdict to a file");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "exact benchmark over all connected graphs of size n");
    std::vector<int> enum_n{5, 6, 7};
    std::string enum_methods = "lm,ap", enum_out, enum_json;
    int enum_cap = 25;
    enumerate->add_option("--n", enum_n, "graph sizes (3..8)");
    enumerate->add_option("--methods", enum_methods, "comma list: lm,ap");
    enumerate->add_option("--exact-cap", enum_cap, "largest n for exhaustive search");
    enumerate->add_option("--out", enum_out, "CSV output file (default stdout)");
    enumerate->add_option("--json", enum_json, "also write a JSON report");

    // sample
    auto* sample = app.add_subcommand("sample", "exact benchmark over uniform random graphs");
    std::vector<int> sample_n{10};
    long long sample_count = 100;
    std::uint64_t sample_seed = 42;
    bool sample_connected = false;
    std::string sample_methods = "lm,ap", sample_out, sample_json;
    int sample_cap = 25;
    sample->add_option("--n", sample_n, "graph sizes");
    sample->add_option("--samples", sample_count, "samples per size");
    sample->add_option("--seed", sample_seed, "root seed");
    sample->add_flag("--connected-only", sample_connected, "resample until connected");
    sample->add_option("--methods", sample_methods, "comma list: lm,ap");
    sample->add_option("--exact-cap", sample_cap, "largest n for exhaustive search");
    sample->add_option("--out", sample_out, "CSV output file (default stdout)");
    sample->add_option("--json", sample_json, "also write a JSON report");

    // real
    auto* real = app.add_subcommand("real", "heuristic + quick-test analysis of real networks");
    std::vector<std::string> real_files;
    std::string real_methods = "lm,ap", real_out, real_json;
    real->add_option("graphs", real_files, "edge-list files")->required();
    real->add_option("--methods", real_methods, "comma list: lm,ap");
    real->add_option("--out", real_out, "CSV output file (default stdout)");
    real->add_option("--json", real_json, "also write a JSON report");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "build a clique-threshold cohesion instance");
    std::string reduce_graph, reduce_out;
    int reduce_k = 3;
    bool reduce_verify = false;
    reduce->add_option("graph", reduce_graph, "source edge-list file")->required();
    reduce->add_option("--k", reduce_k, "clique threshold (k > 2)")->required();
    reduce->add_option("--out", reduce_out, "output prefix (writes <prefix>.edges and <prefix>.json)");
    reduce->add_flag("--verify", reduce_verify, "cross-check the instance against exact search (small instances only)");

    // report
    auto* report = app.add_subcommand("report", "pretty-print a JSON report");
    std::string report_file;
    report->add_option("report", report_file, "JSON report file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) {
            Graph g = load_graph(check_graph);
            CohesionOptions opts;
            opts.exact_cap = check_cap;
            opts.quick_only = check_quick_only;
            if (!check_partition.empty()) {
                std::ifstream in(check_partition);
                if (!in) throw std::runtime_error("cannot open partition file: " + check_partition);
                GroupStructure w = group_structure_from_json(g, json::parse(in));
                if (g.num_nodes() > check_cap)
                    throw CapExceeded("core-stability check needs exhaustive search; n exceeds --exact-cap");
                return report_verdict(g, is_core_stable(g, w), check_json, check_out);
            }
            return report_verdict(g, is_socially_cohesive(g, opts), check_json, check_out);
        }

        if (*enumerate) {
            CohesionOptions opts;
            opts.exact_cap = enum_cap;
            ExperimentReport rep;
            for (int n : enum_n)
                for (Method m : parse_methods(enum_methods)) rep.rows.push_back(run_enumerate(n, m, opts));
            write_report(rep, enum_out, enum_json);
            return 0;
        }

        if (*sample) {
            CohesionOptions opts;
            opts.exact_cap = sample_cap;
            ExperimentReport rep;
            for (int n : sample_n)
                for (Method m : parse_methods(sample_methods))
                    rep.rows.push_back(run_sample(n, sample_count, sample_seed, m, sample_connected, opts));
            write_report(rep, sample_out, sample_json);
            return 0;
        }

        if (*real) {
            ExperimentReport rep;
            for (const std::string& file : real_files) {
                Graph g = load_graph(file);
                const std::string name = std::filesystem::path(file).stem().string();
                for (Method m : parse_methods(real_methods)) rep.rows.push_back(run_real(g, name, m));
            }
            write_report(rep, real_out, real_json);
            return 0;
        }

        if (*reduce) {
            Graph g = load_graph(reduce_graph);
            HardnessInstance inst = build_instance(g, reduce_k);
            json sidecar{{"k", inst.k},
                         {"d", inst.d},
                         {"source_nodes", inst.source_n},
                         {"v1_size", inst.v1.count()},
                         {"v2_size", inst.v2.count()}};
            if (reduce_out.empty()) {
                std::ostringstream edges;
                write_edge_list(inst.h, edges);
                std::cout << edges.str() << sidecar.dump(2) << "\n";
            } else {
                std::ofstream edges(reduce_out + ".edges");
                if (!edges) throw std::runtime_error("cannot write: " + reduce_out + ".edges");
                write_edge_list(inst.h, edges);
                emit(sidecar.dump(2) + "\n", reduce_out + ".json");
            }
            if (reduce_verify) {
                const bool ok = verify_reduction(g, reduce_k);
                std::cerr << (ok ? "verified: instance cohesion matches the clique threshold\n"
                                 : "MISMATCH: instance cohesion disagrees with the clique threshold\n");
                return ok ? 0 : 1;
            }
            return 0;
        }

        if (*report) return run_report_table(report_file);
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
