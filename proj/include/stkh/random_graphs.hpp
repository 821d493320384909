#pragma once

#include <random>

#include "stkh/tait.hpp"

namespace stkh {

// Seeded random connected signed planar graph with an explicit embedding,
// grown from a single edge by two embedding-preserving moves: doubling an
// edge (a parallel copy inside one of its faces) and subdividing an edge.
inline SignedPlanarGraph random_planar_graph(std::mt19937& rng, int target_edges) {
    std::vector<SignedPlanarGraph::Edge> es = {{0, 1, rng() % 2 ? 1 : -1}};
    std::vector<std::vector<EdgeEnd>> rot = {{{0, 0}}, {{0, 1}}};
    int nv = 2;
    while (static_cast<int>(es.size()) < target_edges) {
        int op = rng() % 2;
        int sign = rng() % 2 ? 1 : -1;
        int e = static_cast<int>(rng() % es.size());
        int ne = static_cast<int>(es.size());
        if (op == 0) {
            // Parallel copy of e, inserted next to it at both endpoints.
            es.push_back({es[e].u, es[e].v, sign});
            for (auto& r : rot)
                for (size_t p = 0; p < r.size(); ++p)
                    if (r[p].edge == e) {
                        r.insert(r.begin() + p + (r[p].end == 0 ? 1 : 0), {ne, r[p].end});
                        break;
                    }
        } else {
            // Subdivide e: new vertex w in the middle.
            int w = nv++;
            int v = es[e].v;
            es.push_back({w, v, sign});
            rot.push_back({{e, 1}, {ne, 0}});
            es[e].v = w;
            for (auto& r : rot)
                for (auto& ee : r)
                    if (ee.edge == e && ee.end == 1 && &r != &rot.back()) {
                        ee.edge = ne;
                        ee.end = 1;
                    }
        }
    }
    return SignedPlanarGraph(nv, std::move(es), std::move(rot));
}

// As above, but retries until the medial diagram is a knot (one component).
inline SignedPlanarGraph random_knot_graph(std::mt19937& rng, int target_edges,
                                           int max_tries = 1000) {
    for (int k = 0; k < max_tries; ++k) {
        SignedPlanarGraph g = random_planar_graph(rng, target_edges);
        if (medial(g).component_count() == 1) return g;
    }
    throw graph_error("random_knot_graph: no knot found within the retry budget");
}

}  // namespace stkh
