#pragma once

#include <cassert>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohesion/characterizations.hpp"
#include "cohesion/cliques.hpp"
#include "cohesion/graph.hpp"

namespace cohesion {

// Clique-search gadget: h asks whether the source graph has a k-clique.
// Layout: source nodes keep their ids, then d + k(k-1) isolated padding nodes
// complete v2, then the universal clique v1 of (k-1)(|v2|-k) - d nodes.
struct HardnessInstance {
    Graph h;
    NodeSet v1;
    NodeSet v2;
    int d = 0;
    int source_n = 0;
    int k = 0;
};

inline HardnessInstance build_instance(const Graph& g, int k) {
    assert(k > 2 && g.num_nodes() >= 1);
    const int d = k * g.max_degree();
    const int v2_size = g.num_nodes() + k * (k - 1) + d;
    const long long v1_size = (long long)(k - 1) * (v2_size - k) - d;
    if (v1_size < 1)
        throw std::domain_error("degenerate reduction instance: no universal nodes (k=" +
                                std::to_string(k) + ", |V2|=" + std::to_string(v2_size) + ")");
    const int n = v2_size + int(v1_size);

    auto edges = g.edge_list();
    Graph pads = Graph::from_edges(v2_size, edges);
    HardnessInstance inst;
    inst.h = with_universal_nodes(pads, int(v1_size));
    inst.v1 = NodeSet(n);
    inst.v2 = NodeSet(n);
    for (int u = 0; u < v2_size; ++u) inst.v2.set(u);
    for (int u = v2_size; u < n; ++u) inst.v1.set(u);
    inst.d = d;
    inst.source_n = g.num_nodes();
    inst.k = k;

    auto part = eccentricity_partition(inst.h);
    assert(part && part->v1 == inst.v1 && part->v2 == inst.v2);
    return inst;
}

// Biconditional audit: the source has a k-clique exactly when the gadget is
// not cohesive. The gadget scan is cheap despite its node count because the
// padding nodes are isolated inside v2 and never join a connected subset.
inline bool verify_reduction(const Graph& g, int k, int max_v2 = 40) {
    HardnessInstance inst = build_instance(g, k);
    if (inst.v2.count() > max_v2)
        throw CapExceeded("reduction verification refused: |V2|=" +
                          std::to_string(inst.v2.count()) + " exceeds cap " +
                          std::to_string(max_v2));
    const bool has_clique = clique_number(g) >= k;
    const bool not_cohesive = ndu2_cohesive(inst.h).status == VerdictStatus::NotCohesive;
    return has_clique == not_cohesive;
}

}  // namespace cohesion
