// Colored graphic matroid, flips, mutation detection, probes.
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "stkh/matroid.hpp"
#include "stkh/random_graphs.hpp"

using namespace stkh;

#ifndef STKH_FIXTURES
#define STKH_FIXTURES "fixtures"
#endif

namespace {

SignedPlanarGraph load_graph(const std::string& name) {
    std::ifstream f(std::string(STKH_FIXTURES) + "/" + name + ".graph");
    REQUIRE(f.good());
    std::ostringstream os;
    os << f.rdbuf();
    return parse_graph(os.str());
}

SignedPlanarGraph fig8_graph() {
    std::vector<SignedPlanarGraph::Edge> es = {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {0, 1, 1}};
    std::vector<std::vector<EdgeEnd>> rot = {
        {{2, 1}, {0, 0}, {3, 0}}, {{3, 1}, {0, 1}, {1, 0}}, {{1, 1}, {2, 0}}};
    return SignedPlanarGraph(3, std::move(es), std::move(rot));
}

SignedPlanarGraph cycle_graph(int n, int sign) {
    std::vector<SignedPlanarGraph::Edge> es;
    for (int k = 0; k < n; ++k) es.push_back({k, (k + 1) % n, sign});
    return SignedPlanarGraph(n, std::move(es));
}

}  // namespace

TEST_CASE("colored matroid basics") {
    ColoredMatroid m = colored_matroid(fig8_graph());
    CHECK(m.n == 4);
    CHECK(m.rank == 2);
    CHECK(m.bases.size() == 5);
    CHECK(basis_exchange_ok(m));
    CHECK(basis_exchange_ok(colored_matroid(load_graph("mixed7"))));
}

TEST_CASE("matroid isomorphism: identity, relabeling, negatives") {
    SignedPlanarGraph g = fig8_graph();
    ColoredMatroid m = colored_matroid(g);
    auto self = matroid_isomorphic(m, m);
    REQUIRE(self);
    CHECK(self->perm == std::vector<int>{0, 1, 2, 3});
    // Relabeled edges: still isomorphic.
    std::vector<int> perm = {2, 0, 3, 1};
    auto rel = matroid_isomorphic(m, colored_matroid(g.with_edge_order(perm)));
    CHECK(rel.has_value());
    // Different ground set size, and same size but different colors.
    CHECK_FALSE(matroid_isomorphic(m, colored_matroid(cycle_graph(3, 1))).has_value());
    auto es = g.edges();
    es[0].sign = -1;
    SignedPlanarGraph neg(g.vertex_count(), std::move(es), g.rotation());
    CHECK_FALSE(matroid_isomorphic(m, colored_matroid(neg)).has_value());
}

TEST_CASE("2-flips preserve the colored matroid and change the diagram") {
    SignedPlanarGraph a = load_graph("mutant7a_a"), b = load_graph("mutant7a_b");
    CHECK(emit_graph(a) != emit_graph(b));
    CHECK(matroid_isomorphic(colored_matroid(a), colored_matroid(b)).has_value());
    CHECK(medial(b).component_count() == 1);
}

TEST_CASE("are_mutants on fixture pairs and non-pairs") {
    for (std::string base : {"mutant7a", "mutant7b", "mutant9"}) {
        MutantReport r = are_mutants(load_graph(base + "_a"), load_graph(base + "_b"));
        CHECK(r.mutants);
        REQUIRE(r.witness);
        // The witness transports bases of one matroid onto the other.
        ColoredMatroid ma = colored_matroid(load_graph(base + "_a"));
        ColoredMatroid mb = colored_matroid(load_graph(base + "_b"));
        std::vector<TreeMask> mapped;
        for (TreeMask t : ma.bases) {
            TreeMask img = 0;
            for (int e = 0; e < ma.n; ++e)
                if (t >> e & 1) img |= TreeMask(1) << r.witness->perm[e];
            mapped.push_back(img);
        }
        std::sort(mapped.begin(), mapped.end());
        CHECK(mapped == mb.bases);
    }
    CHECK_FALSE(are_mutants(fig8_graph(), load_graph("mixed6")).mutants);
}

TEST_CASE("E2 pages agree across a mutant pair") {
    E2Report r = compare_E2(load_graph("mutant7a_a"), load_graph("mutant7a_b"));
    CHECK(r.mutants);
    CHECK(r.equal);
    CHECK(!r.e2_1.empty());
    CHECK(r.e2_1 == r.e2_2);
}

TEST_CASE("conjecture probe is structurally consistent") {
    ProbeReport r = conjecture_probe(load_graph("mutant7a_a"), load_graph("mutant7a_b"));
    CHECK(r.pairs_compared > 0);
    CHECK(r.agreements + static_cast<long>(r.disagreements.size()) == r.pairs_compared);
    CHECK(r.nonzero_agreements <= r.agreements);
    CHECK(r.unmatched1.size() == r.unmatched2.size());
    // A graph against itself: everything matches, nothing disagrees.
    ProbeReport self = conjecture_probe(fig8_graph(), fig8_graph());
    CHECK(self.disagreements.empty());
    CHECK(self.unmatched1.empty());
    CHECK(self.pairs_compared == self.agreements);
}
