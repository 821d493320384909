// Spanning trees, activities, brackets, Jones.
#include <doctest.h>

#include <random>

#include "stkh/bracket.hpp"
#include "stkh/random_graphs.hpp"
#include "stkh/spanning_trees.hpp"

using namespace stkh;

namespace {

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

// Kirchhoff matrix-tree count by Bareiss fraction-free elimination.
Int matrix_tree_count(const SignedPlanarGraph& g) {
    int n = g.vertex_count() - 1;
    if (n == 0) return 1;
    std::vector<std::vector<Int>> L(n, std::vector<Int>(n, 0));
    for (const auto& e : g.edges()) {
        if (e.u == e.v) continue;
        if (e.u < n) L[e.u][e.u] += 1;
        if (e.v < n) L[e.v][e.v] += 1;
        if (e.u < n && e.v < n) {
            L[e.u][e.v] -= 1;
            L[e.v][e.u] -= 1;
        }
    }
    Int prev = 1;
    for (int k = 0; k < n; ++k) {
        if (L[k][k] == 0) {
            int p = -1;
            for (int r = k + 1; r < n; ++r)
                if (L[r][k] != 0) p = r;
            if (p < 0) return 0;
            std::swap(L[k], L[p]);
            for (auto& x : L[k]) x = -x;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                L[i][j] = (L[i][j] * L[k][k] - L[i][k] * L[k][j]) / prev;
        prev = L[k][k];
    }
    return L[n - 1][n - 1];
}

}  // namespace

TEST_CASE("tree enumeration matches the matrix-tree determinant") {
    CHECK(enumerate_trees(fig8_graph()).size() == 5);
    CHECK(enumerate_trees(cycle_graph(3, 1)).size() == 3);
    std::mt19937 rng(23);
    for (int k = 0; k < 30; ++k) {
        SignedPlanarGraph g = random_planar_graph(rng, 3 + static_cast<int>(rng() % 8));
        auto trees = enumerate_trees(g);
        CHECK(Int(trees.size()) == matrix_tree_count(g));
        CHECK(std::is_sorted(trees.begin(), trees.end()));
        for (TreeMask t : trees) CHECK(std::popcount(t) == g.vertex_count() - 1);
    }
}

TEST_CASE("cut/cycle duality") {
    // Two parallel edges.
    SignedPlanarGraph p2(2, {{0, 1, 1}, {0, 1, 1}});
    CHECK(cut(p2, 1, 0) == 3);
    CHECK(cyc(p2, 1, 1) == 3);
    std::mt19937 rng(5);
    for (int k = 0; k < 15; ++k) {
        SignedPlanarGraph g = random_planar_graph(rng, 3 + static_cast<int>(rng() % 6));
        for (TreeMask t : enumerate_trees(g))
            for (int e = 0; e < g.edge_count(); ++e) {
                if (!(t >> e & 1)) continue;
                TreeMask ct = cut(g, t, e);
                for (int f = 0; f < g.edge_count(); ++f) {
                    if (t >> f & 1) continue;
                    CHECK(bool(ct >> f & 1) == bool(cyc(g, t, f) >> e & 1));
                }
            }
    }
}

TEST_CASE("figure-8 activity words and weights (Figure 1)") {
    SignedPlanarGraph g = fig8_graph();
    std::map<std::string, Laurent> got;
    for (TreeMask t : enumerate_trees(g)) {
        ActivityWord w = activity_word(g, t);
        got[word_str(w)] = thistlethwaite_monomial(w);
        // Capital letters reproduce the tree.
        TreeMask from_word = 0;
        for (int e = 0; e < g.edge_count(); ++e)
            if (letter_in_tree(w[e])) from_word |= TreeMask(1) << e;
        CHECK(from_word == t);
    }
    REQUIRE(got.size() == 5);
    CHECK(got.at("LLdd") == Laurent::monomial(1, -8));
    CHECK(got.at("LdDd") == Laurent::monomial(-1, -4));
    CHECK(got.at("ℓDDd") == Laurent::monomial(-1, 4));
    CHECK(got.at("ℓLdD") == Laurent::one());
    CHECK(got.at("ℓℓDD") == Laurent::monomial(1, 8));
    CHECK(parse_word("ℓLdD") == activity_word(g, 0b1010));
}

TEST_CASE("gradings u and v") {
    CHECK(grading_u(parse_word("LLdd")) == 2);
    CHECK(grading_v(parse_word("LLdd")) == 2);
    CHECK(grading_u(parse_word("ℓℓDD")) == -2);
    CHECK(grading_v(parse_word("ℓℓDD")) == 2);
    CHECK(grading_u({}) == 0);
    CHECK(grading_v({}) == 0);
}

TEST_CASE("partial smoothings and sigma") {
    CHECK(partial_smoothing(parse_word("LLdd")) == "**BB");
    CHECK(partial_smoothing(parse_word("LdDd")) == "*BAB");
    CHECK(partial_smoothing(parse_word("ℓℓDD")) == "**AA");
    CHECK(sigma("BB") == -2);
    CHECK(sigma("AA") == 2);
    CHECK(sigma("AB") == 0);
    CHECK_THROWS(sigma("*A"));
}

TEST_CASE("Thistlethwaite bracket equals the state sum") {
    std::mt19937 rng(31);
    for (int k = 0; k < 40; ++k) {
        SignedPlanarGraph g = random_planar_graph(rng, 2 + static_cast<int>(rng() % 8));
        CHECK(bracket_by_trees(g) == state_sum_bracket(medial(g)));
    }
    // mu(T) = A^{sigma(U)} (-A)^{3 w(U)} per tree: checked through the
    // single-edge cases.
    SignedPlanarGraph pos1(2, {{0, 1, 1}});
    CHECK(bracket_by_trees(pos1) == Laurent::monomial(-1, -3));
    SignedPlanarGraph neg1(2, {{0, 1, -1}});
    CHECK(bracket_by_trees(neg1) == Laurent::monomial(-1, 3));
}

TEST_CASE("Jones polynomials") {
    Laurent f8 = jones_q(medial(fig8_graph()));
    Laurent expect;
    for (auto [e, c] : {std::pair{-4, 1}, {-2, -1}, {0, 1}, {2, -1}, {4, 1}})
        expect.add_term(e, c);
    CHECK(f8 == expect);
    // Right trefoil: -t^4 + t^3 + t in q (t = q^2).
    Laurent tre = jones_q(medial(cycle_graph(3, 1)));
    Laurent expect_t;
    for (auto [e, c] : {std::pair{8, -1}, {6, 1}, {2, 1}}) expect_t.add_term(e, c);
    CHECK(tre == expect_t);
    CHECK(jones_q(Diagram::round_unknot()) == Laurent::one());
    // Alternating: tree count = L1 norm of the bracket.
    for (int n : {3, 5, 7})
        CHECK(Int(n) == bracket_by_trees(cycle_graph(n, 1)).l1_norm());
}
