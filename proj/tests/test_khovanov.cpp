// Khovanov homology over the enhanced-state basis.
#include <doctest.h>

#include <random>

#include "stkh/khovanov.hpp"
#include "stkh/random_graphs.hpp"
#include "stkh/spanning_trees.hpp"

using namespace stkh;

namespace {

SignedPlanarGraph cycle_graph(int n, int sign) {
    std::vector<SignedPlanarGraph::Edge> es;
    for (int k = 0; k < n; ++k) es.push_back({k, (k + 1) % n, sign});
    return SignedPlanarGraph(n, std::move(es));
}

SignedPlanarGraph fig8_graph() {
    std::vector<SignedPlanarGraph::Edge> es = {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {0, 1, 1}};
    std::vector<std::vector<EdgeEnd>> rot = {
        {{2, 1}, {0, 0}, {3, 0}}, {{3, 1}, {0, 1}, {1, 0}}, {{1, 1}, {2, 0}}};
    return SignedPlanarGraph(3, std::move(es), std::move(rot));
}

int total_rank(const BigradedGroups& h) {
    int r = 0;
    for (const auto& [ij, g] : h) r += g.rank;
    return r;
}

}  // namespace

TEST_CASE("unknot homology") {
    Diagram o = Diagram::round_unknot();
    BigradedGroups u = khovanov_homology(o, false);
    REQUIRE(u.size() == 2);
    CHECK(u.at({0, 1}).str() == "Z");
    CHECK(u.at({0, -1}).str() == "Z");
    BigradedGroups r = khovanov_homology(o, true);
    REQUIRE(r.size() == 1);
    CHECK(r.begin()->first.i == 0);
    CHECK(r.begin()->second.str() == "Z");
    CHECK(euler_characteristic(r) == Laurent::monomial(1, -1));
}

TEST_CASE("right trefoil unreduced homology with its Z/2") {
    BigradedGroups h = khovanov_homology(medial(cycle_graph(3, 1)), false);
    REQUIRE(h.size() == 5);
    CHECK(h.at({0, 1}).str() == "Z");
    CHECK(h.at({0, 3}).str() == "Z");
    CHECK(h.at({2, 5}).str() == "Z");
    CHECK(h.at({3, 9}).str() == "Z");
    CHECK(h.at({3, 7}).rank == 0);
    REQUIRE(h.at({3, 7}).torsion.size() == 1);
    CHECK(h.at({3, 7}).torsion[0] == 2);
}

TEST_CASE("figure-eight reduced homology is thin of rank 5") {
    BigradedGroups h = khovanov_homology(medial(fig8_graph()), true);
    CHECK(total_rank(h) == 5);
    int delta = h.begin()->first.j - 2 * h.begin()->first.i;
    for (const auto& [ij, g] : h) {
        CHECK(g.torsion.empty());
        CHECK(ij.j - 2 * ij.i == delta);  // homologically thin
    }
}

TEST_CASE("boundary squares to zero") {
    std::mt19937 rng(17);
    for (int k = 0; k < 8; ++k) {
        Diagram d = medial(random_knot_graph(rng, 4 + static_cast<int>(rng() % 3)));
        for (bool reduced : {false, true}) {
            KhovanovComplex kc(d, reduced);
            for (const auto& [ij, states] : kc.basis())
                for (const auto& s : states) {
                    std::map<std::pair<uint64_t, uint64_t>, Int> acc;
                    for (const auto& [t, sgn] : kc.boundary(s))
                        for (const auto& [u, sgn2] : kc.boundary(t))
                            acc[{u.markers, u.plus}] += sgn * sgn2;
                    for (const auto& [key, v] : acc) CHECK(v == 0);
                }
        }
    }
}

TEST_CASE("euler characteristic descends to homology") {
    std::mt19937 rng(29);
    for (int k = 0; k < 6; ++k) {
        Diagram d = medial(random_knot_graph(rng, 4 + static_cast<int>(rng() % 3)));
        KhovanovComplex unred(d, false), red(d, true);
        Laurent xu = euler_characteristic(unred.homology());
        Laurent xr = euler_characteristic(red.homology());
        CHECK(xu == unred.chain_euler());
        CHECK(xr == red.chain_euler());
        // chi(unreduced) = (q + q^-1) V and chi(reduced) = q^-1 V.
        Laurent q2p1;
        q2p1.add_term(2, 1);
        q2p1.add_term(0, 1);
        CHECK(xu == xr * q2p1);
        CHECK(xr * Laurent::monomial(1, 1) == jones_q(d));
    }
}
