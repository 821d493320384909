// Ladder enumeration (k-incidence, Definition 2.7).
#include <doctest.h>

#include <random>

#include "stkh/ladders.hpp"
#include "stkh/random_graphs.hpp"

using namespace stkh;

namespace {

SignedPlanarGraph fig8_graph() {
    std::vector<SignedPlanarGraph::Edge> es = {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {0, 1, 1}};
    std::vector<std::vector<EdgeEnd>> rot = {
        {{2, 1}, {0, 0}, {3, 0}}, {{3, 1}, {0, 1}, {1, 0}}, {{1, 1}, {2, 0}}};
    return SignedPlanarGraph(3, std::move(es), std::move(rot));
}

}  // namespace

TEST_CASE("degenerate inputs") {
    TreeContext ctx = TreeContext::from_graph(fig8_graph());
    KhovanovComplex kc(ctx.d, true);
    CHECK(ladders(ctx, kc, 0, 0, 3).empty());
    CHECK_THROWS(ladders(ctx, kc, 0, 1, 0));
}

TEST_CASE("k = 1 ladders realize the direct incidence") {
    std::mt19937 rng(59);
    long nonzero = 0;
    for (int trial = 0; trial < 10; ++trial) {
        TreeContext ctx = TreeContext::from_graph(
            trial == 0 ? fig8_graph()
                       : random_knot_graph(rng, 5 + static_cast<int>(rng() % 2)));
        KhovanovComplex kc(ctx.d, true);
        for (int a = 0; a < ctx.tree_count(); ++a)
            for (int b = 0; b < ctx.tree_count(); ++b) {
                if (a == b || !ctx.poset.greater[a][b]) continue;
                Int direct = direct_incidence(kc, ctx.cycle(a, true), ctx.cycle(b, true),
                                              ctx.words[b]);
                Int from_ladders = 0;
                for (const Ladder& l : ladders(ctx, kc, a, b, 1)) {
                    CHECK(l.k == 1);
                    CHECK(l.t1 == a);
                    CHECK(l.t2 == b);
                    CHECK(l.trees.empty());
                    CHECK(l.xs.empty());
                    from_ladders += l.contribution;
                }
                CHECK(from_ladders == direct);
                if (direct != 0) ++nonzero;
            }
    }
    CHECK(nonzero > 0);
}

TEST_CASE("ladder structure invariants up to k = 3") {
    std::mt19937 rng(67);
    long seen = 0;
    for (int trial = 0; trial < 8 && seen == 0; ++trial) {
    TreeContext ctx = TreeContext::from_graph(random_knot_graph(rng, 6));
    KhovanovComplex kc(ctx.d, true);
    for (int a = 0; a < ctx.tree_count(); ++a)
        for (int b = 0; b < ctx.tree_count(); ++b) {
            if (a == b || !ctx.poset.greater[a][b]) continue;
            for (const Ladder& l : ladders(ctx, kc, a, b, 3)) {
                ++seen;
                REQUIRE(l.k >= 1);
                REQUIRE(l.k <= 3);
                CHECK(l.trees.size() == size_t(l.k - 1));
                CHECK(l.xs.size() == size_t(l.k - 1));
                CHECK(l.ys.size() == size_t(l.k - 1));
                CHECK(l.rung_markers.size() == size_t(l.k - 1));
                CHECK(l.rail_markers.size() == size_t(l.k));  // rails x_{i-1} -> y_i, i = 1..k
                // T1 > T_{j_1} > ... > T2 in the tree poset.
                int prev = a;
                for (int t : l.trees) {
                    CHECK(ctx.poset.greater[prev][t]);
                    prev = t;
                }
                CHECK((prev == a || ctx.poset.greater[prev][b] || prev == b));
                // Intermediate states live in the U-tilde of their tree.
                for (size_t i = 0; i < l.xs.size(); ++i) {
                    CHECK(ctx.tree_of_markers(l.xs[i].markers) == l.trees[i]);
                    CHECK(ctx.tree_of_markers(l.ys[i].markers) == l.trees[i]);
                }
            }
        }
    }
    CHECK(seen > 0);
}
