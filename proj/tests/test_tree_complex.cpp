// Fundamental cycles, direct incidence, poset, collapse, spectral sequence.
#include <doctest.h>

#include <random>

#include "stkh/collapse.hpp"
#include "stkh/random_graphs.hpp"
#include "stkh/spectral.hpp"
#include "stkh/tree_complex.hpp"

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

TEST_CASE("figure-eight tree poset and filtration depth") {
    TreeContext ctx = TreeContext::from_graph(fig8_graph());
    REQUIRE(ctx.tree_count() == 5);
    CHECK(ctx.poset.depth == 4);
    std::multiset<int> levels(ctx.poset.level.begin(), ctx.poset.level.end());
    CHECK(levels == std::multiset<int>{1, 2, 2, 3, 4});
    int comparable = 0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (ctx.poset.greater[i][j]) {
                ++comparable;
                CHECK(ctx.poset.level[j] > ctx.poset.level[i]);
                CHECK_FALSE(ctx.poset.greater[j][i]);
            }
    CHECK(comparable == 8);
}

TEST_CASE("fundamental cycles live in one marker state and one bidegree") {
    std::mt19937 rng(3);
    for (int k = 0; k < 6; ++k) {
        TreeContext ctx = TreeContext::from_graph(
            k == 0 ? fig8_graph() : random_knot_graph(rng, 4 + static_cast<int>(rng() % 3)));
        KhovanovComplex kc(ctx.d, true);
        for (int t = 0; t < ctx.tree_count(); ++t) {
            FundamentalCycle z = ctx.cycle(t, true);
            REQUIRE_FALSE(z.chain.empty());
            std::optional<Bidegree> ij;
            for (const auto& [key, coef] : z.chain) {
                CHECK(key.first == z.markers);
                CHECK((coef == 1 || coef == -1));
                Bidegree b = kc.grading(state_of(key));
                if (!ij) ij = b;
                CHECK(*ij == b);
            }
            // The shared marker state extends the partial smoothing of T.
            CHECK(ctx.tree_of_markers(z.markers) == t);
            // Untwist variants produce the same chain.
            for (int variant : {1, 2}) {
                FundamentalCycle z2 = fundamental_cycle(ctx.d, ctx.words[t], true, variant);
                CHECK(z2.chain == z.chain);
            }
        }
    }
}

TEST_CASE("classify_direct recognizes exactly the Theorem 2.3 patterns") {
    using enum Letter;
    ActivityWord base = {L, db, d, Lb};
    ActivityWord sw = base;
    sw[0] = d;
    sw[1] = Db;  // L d-bar -> d D-bar
    CHECK(classify_direct(base, sw));
    CHECK((classify_direct({db, D}, {Lb, d})));
    CHECK((classify_direct({lb, D}, {Db, d})));
    CHECK((classify_direct({D, db}, {l, Db})));
    // Wrong order, wrong letters, wrong count.
    CHECK_FALSE((classify_direct({d, Db}, {L, db})));
    CHECK_FALSE((classify_direct({L, d}, {d, D})));
    CHECK_FALSE(classify_direct(base, base));
    CHECK_FALSE((classify_direct({L, db, d}, {d, Db, L})));
    CHECK_THROWS(((void)classify_direct(ActivityWord{L}, ActivityWord{L, d})));
}

TEST_CASE("directly incident pairs have incidence ±1 and bidegree shift (-1,-1)") {
    std::mt19937 rng(101);
    int direct_pairs = 0;
    for (int k = 0; k < 25 && direct_pairs < 5; ++k) {
        SignedPlanarGraph g = random_knot_graph(rng, 5 + static_cast<int>(rng() % 2));
        if (g.positive_edges() == 0 || g.positive_edges() == g.edge_count()) continue;
        TreeContext ctx = TreeContext::from_graph(g);
        KhovanovComplex kc(ctx.d, true);
        for (int a = 0; a < ctx.tree_count(); ++a)
            for (int b = 0; b < ctx.tree_count(); ++b) {
                if (!classify_direct(ctx.words[a], ctx.words[b])) continue;
                ++direct_pairs;
                CHECK(grading_u(ctx.words[b]) == grading_u(ctx.words[a]) - 1);
                CHECK(grading_v(ctx.words[b]) == grading_v(ctx.words[a]) - 1);
                Int inc = direct_incidence(kc, ctx.cycle(a, true), ctx.cycle(b, true),
                                           ctx.words[b]);
                CHECK((inc == 1 || inc == -1));
            }
    }
    CHECK(direct_pairs >= 5);
}

TEST_CASE("collapse reproduces Khovanov homology") {
    std::mt19937 rng(7);
    for (int k = 0; k < 5; ++k) {
        SignedPlanarGraph g = k == 0   ? fig8_graph()
                              : k == 1 ? cycle_graph(3, 1)
                                       : random_knot_graph(rng, 5 + static_cast<int>(rng() % 2));
        TreeContext ctx = TreeContext::from_graph(g);
        for (bool reduced : {true, false}) {
            TreeComplexData tc = collapse_to_tree_complex(ctx, reduced, true);
            CHECK(tc.gens.size() == ctx.trees.size() * (reduced ? 1 : 2));
            CHECK(bigraded_str(tc.homology()) ==
                  bigraded_str(khovanov_homology(ctx.d, reduced)));
        }
    }
}

TEST_CASE("figure-eight reduced tree complex has zero differential") {
    TreeComplexData tc =
        collapse_to_tree_complex(TreeContext::from_graph(fig8_graph()), true);
    CHECK(tc.gens.size() == 5);
    CHECK(tc.d.empty());
}

TEST_CASE("spectral sequence pages") {
    std::mt19937 rng(13);
    for (int k = 0; k < 4; ++k) {
        TreeContext ctx = TreeContext::from_graph(
            k == 0 ? fig8_graph() : random_knot_graph(rng, 5 + static_cast<int>(rng() % 2)));
        SpectralSequence ss(ctx, true);
        // E_1 counts trees by (level, i, j).
        Page e1 = ss.page(1);
        int n1 = 0;
        for (const auto& [key, grp] : e1.groups) {
            CHECK(grp.torsion.empty());
            n1 += grp.rank;
        }
        CHECK(n1 == ctx.tree_count());
        // Stability: the page at r = depth is final.
        Page stop = ss.page(ss.depth());
        Page next = ss.page(ss.depth() + 1);
        CHECK(next.flagged);
        int rstop = 0, rnext = 0, rhom = 0;
        for (const auto& [key, grp] : stop.groups) rstop += grp.rank;
        for (const auto& [key, grp] : next.groups) rnext += grp.rank;
        CHECK(rstop == rnext);
        for (const auto& [ij, grp] : khovanov_homology(ctx.d, true)) rhom += grp.rank;
        CHECK(rnext == rhom);
    }
}
