#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "stkh/matroid.hpp"
#include "stkh/random_graphs.hpp"

using namespace stkh;

static void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

static SignedPlanarGraph fig8_graph() {
    std::vector<SignedPlanarGraph::Edge> es = {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {0, 1, 1}};
    std::vector<std::vector<EdgeEnd>> rot = {
        {{2, 1}, {0, 0}, {3, 0}}, {{3, 1}, {0, 1}, {1, 0}}, {{1, 1}, {2, 0}}};
    return SignedPlanarGraph(3, std::move(es), std::move(rot));
}

static SignedPlanarGraph cycle_graph(int n, int sign) {
    std::vector<SignedPlanarGraph::Edge> es;
    for (int k = 0; k < n; ++k) es.push_back({k, (k + 1) % n, sign});
    return SignedPlanarGraph(n, std::move(es));
}

// Add a parallel copy of edge e (same sign unless overridden), keeping the
// embedding planar by inserting next to e at both endpoints.
static void add_parallel(std::vector<SignedPlanarGraph::Edge>& es,
                         std::vector<std::vector<EdgeEnd>>& rot, int e, int sign) {
    int ne = static_cast<int>(es.size());
    es.push_back({es[e].u, es[e].v, sign});
    for (auto& r : rot)
        for (size_t p = 0; p < r.size(); ++p)
            if (r[p].edge == e) {
                r.insert(r.begin() + p + (r[p].end == 0 ? 1 : 0), {ne, r[p].end});
                break;
            }
}

// Pretzel-style graph: triangle with edge multiplicities (a, b, c).
static SignedPlanarGraph pretzel_graph(int a, int b, int c) {
    SignedPlanarGraph t = cycle_graph(3, 1);
    auto es = t.edges();
    auto rot = t.rotation();
    for (int k = 1; k < a; ++k) add_parallel(es, rot, 0, 1);
    for (int k = 1; k < b; ++k) add_parallel(es, rot, 1, 1);
    for (int k = 1; k < c; ++k) add_parallel(es, rot, 2, 1);
    return SignedPlanarGraph(t.vertex_count(), std::move(es), std::move(rot));
}

int main() {
    std::filesystem::create_directories("../fixtures");
    auto put_graph = [&](const std::string& name, const SignedPlanarGraph& g,
                         const std::string& note = "") {
        Diagram d = medial(g);
        std::cout << name << ": edges=" << g.edge_count()
                  << " components=" << d.component_count() << " writhe=" << d.writhe() << "\n";
        if (d.component_count() != 1) {
            std::cout << "  NOT A KNOT\n";
            return;
        }
        std::string text = note.empty() ? "" : "# " + note + "\n";
        write_file("../fixtures/" + name + ".graph", text + emit_graph(g));
    };
    auto put_pd = [&](const std::string& name, const Diagram& d, const std::string& note = "") {
        std::string text = note.empty() ? "" : "# " + note + "\n";
        write_file("../fixtures/" + name + ".pd", text + emit_pd(d));
    };

    put_graph("figure8", fig8_graph(), "figure-eight knot Tait graph, edge order 1..4");
    put_pd("figure8", medial(fig8_graph()), "figure-eight knot");
    put_graph("trefoil", cycle_graph(3, 1), "trefoil Tait graph: positive triangle");
    put_pd("trefoil", medial(cycle_graph(3, 1)), "trefoil knot");
    put_pd("unknot", Diagram::round_unknot(), "round unknot");
    put_graph("torus_2_5", cycle_graph(5, 1), "(2,5) torus knot Tait graph");
    put_pd("torus_2_5", medial(cycle_graph(5, 1)), "(2,5) torus knot");
    put_graph("torus_2_7", cycle_graph(7, 1), "(2,7) torus knot Tait graph");
    put_pd("torus_2_7", medial(cycle_graph(7, 1)), "(2,7) torus knot");
    put_graph("torus_2_9", cycle_graph(9, 1), "(2,9) torus knot Tait graph");
    put_graph("alt8", pretzel_graph(2, 3, 3),
              "8-crossing alternating knot: triangle with edge multiplicities 2,3,3");
    put_pd("alt8", medial(pretzel_graph(2, 3, 3)),
           "8-crossing alternating knot: medial of a triangle with multiplicities 2,3,3");

    // Frozen mixed-sign random knots.
    {
        std::mt19937 rng(41);
        put_graph("mixed6", random_knot_graph(rng, 6), "mixed-sign 6-crossing knot (seed 41)");
    }
    {
        std::mt19937 rng(58);
        SignedPlanarGraph g = random_knot_graph(rng, 7);
        while (g.positive_edges() == 0 || g.positive_edges() == g.edge_count())
            g = random_knot_graph(rng, 7);
        put_graph("mixed7", g, "mixed-sign 7-crossing knot (seed 58)");
        put_pd("mixed7", medial(g), "mixed-sign 7-crossing knot (seed 58)");
    }
    {
        std::mt19937 rng(83);
        SignedPlanarGraph g = random_knot_graph(rng, 8);
        while (g.positive_edges() == 0 || g.positive_edges() == g.edge_count())
            g = random_knot_graph(rng, 8);
        put_graph("mixed8", g, "mixed-sign 8-crossing knot (seed 83)");
    }
    // Mutant pairs: a frozen graph with a genuine 2-separation plus its
    // 2-flip image.  The separation data is recorded in the fixture files.
    auto find_flip = [](const SignedPlanarGraph& g)
        -> std::optional<std::pair<FlipMove, SignedPlanarGraph>> {
        int nv = g.vertex_count();
        for (int u = 0; u < nv; ++u)
            for (int v = u + 1; v < nv; ++v) {
                std::vector<int> comp(nv, -1);
                int nc = 0;
                for (int s = 0; s < nv; ++s) {
                    if (s == u || s == v || comp[s] >= 0) continue;
                    std::vector<int> st = {s};
                    comp[s] = nc;
                    while (!st.empty()) {
                        int w = st.back();
                        st.pop_back();
                        for (auto [e, end] : g.rotation()[w]) {
                            int x = g.endpoint(e, 1 - end);
                            if (x != u && x != v && comp[x] < 0) {
                                comp[x] = nc;
                                st.push_back(x);
                            }
                        }
                    }
                    ++nc;
                }
                for (int pick = 0; pick < nc; ++pick) {
                    FlipMove m;
                    m.kind = FlipMove::Kind::two_flip;
                    m.u = u;
                    m.v = v;
                    for (int e = 0; e < g.edge_count(); ++e) {
                        int a = g.edge(e).u, b = g.edge(e).v;
                        if ((a != u && a != v && comp[a] == pick) ||
                            (b != u && b != v && comp[b] == pick))
                            m.side |= uint64_t(1) << e;
                    }
                    if (m.side == 0) continue;
                    int side_sz = std::popcount(m.side);
                    if (side_sz < 3 || g.edge_count() - side_sz < 3) continue;
                    try {
                        SignedPlanarGraph out = apply_flip(g, m);
                        if (emit_graph(out) == emit_graph(g)) continue;
                        Diagram dm = medial(out);
                        if (dm.component_count() != 1) continue;
                        if (emit_pd(dm) == emit_pd(medial(g))) continue;
                        return std::pair{m, out};
                    } catch (const graph_error&) {
                    }
                }
            }
        return std::nullopt;
    };
    auto put_pair = [&](const std::string& base, std::mt19937& rng, int edges) {
        for (int trial = 0; trial < 4000; ++trial) {
            SignedPlanarGraph g = random_planar_graph(rng, edges);
            if (medial(g).component_count() != 1) continue;
            int pos = g.positive_edges();
            if (pos == 0 || pos == g.edge_count()) continue;
            auto hit = find_flip(g);
            if (!hit) continue;
            auto& [m, out] = *hit;
            std::string sep = "2-separation vertices " + std::to_string(m.u + 1) + "," +
                              std::to_string(m.v + 1) + "; rotated side edges";
            for (int e = 0; e < g.edge_count(); ++e)
                if (m.side >> e & 1) sep += " " + std::to_string(e + 1);
            put_graph(base + "_a", g, "mutant pair, first diagram; " + sep);
            put_graph(base + "_b", out, "2-flip image of " + base + "_a; " + sep);
            put_pd(base + "_a", medial(g), "mutant pair, first diagram; " + sep);
            put_pd(base + "_b", medial(out), "2-flip image of " + base + "_a; " + sep);
            return;
        }
        std::cout << base << ": NO PAIR FOUND\n";
    };
    {
        std::mt19937 rng(2024);
        put_pair("mutant7a", rng, 7);
        put_pair("mutant7b", rng, 7);
    }
    {
        std::mt19937 rng(5);
        put_pair("mutant9", rng, 9);
    }
    {
        std::mt19937 rng(77);
        put_pair("mutant11", rng, 11);
    }
    std::cout << "fixtures written\n";
    return 0;
}
