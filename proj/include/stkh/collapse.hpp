#pragma once

#include <unordered_map>

#include "stkh/tree_complex.hpp"

namespace stkh {

// Generator of the collapsed spanning-tree complex: a fundamental cycle.
struct TreeGen {
    int tree;
    bool plus;      // sign variant (always + in the reduced complex)
    int u, v;       // tree bigrading; the - variant sits at (u+2, v+1)
    Bidegree ij;    // Khovanov bigrading of the cycle
};

struct TreeComplexData {
    bool reduced = true;
    std::vector<TreeGen> gens;
    std::vector<std::tuple<int, int, Int>> d;  // (from gen, to gen, coefficient)

    // Induced differential as a matrix between the (i,j) and (i+1,j) groups.
    Mat differential(Bidegree ij) const {
        std::vector<int> from, to;
        for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
            if (gens[g].ij == ij) from.push_back(g);
            if (gens[g].ij.i == ij.i + 1 && gens[g].ij.j == ij.j) to.push_back(g);
        }
        Mat m(static_cast<int>(to.size()), static_cast<int>(from.size()));
        for (const auto& [a, b, v] : d)
            for (size_t c = 0; c < from.size(); ++c)
                if (from[c] == a)
                    for (size_t r = 0; r < to.size(); ++r)
                        if (to[r] == b) m(static_cast<int>(r), static_cast<int>(c)) = v;
        return m;
    }

    BigradedGroups homology() const {
        std::set<Bidegree> degrees;
        for (const auto& g : gens) degrees.insert(g.ij);
        BigradedGroups h;
        for (Bidegree ij : degrees) {
            AbelianGroup grp =
                homology_group(differential({ij.i - 1, ij.j}), differential(ij));
            if (!grp.is_trivial()) h[ij] = grp;
        }
        return h;
    }

    Int entry(int from, int to) const {
        for (const auto& [a, b, v] : d)
            if (a == from && b == to) return v;
        return 0;
    }
};

// Deformation retract of the (reduced or unreduced) Khovanov complex onto
// the spanning-tree complex: within each U-tilde the fundamental cycle(s)
// replace the lexicographically smallest unit-coefficient state(s) of their
// support, then every other state of that U-tilde is eliminated by algebraic
// Gaussian elimination with unit pivots in lexicographic state order.
// Trees are processed minimal-tree-first (deepest filtration level first).
// With `check_locality`, asserts after each tree that the not-yet-collapsed
// U-tildes still carry their original internal incidence numbers.
inline TreeComplexData collapse_to_tree_complex(const TreeContext& ctx, bool reduced,
                                                bool check_locality = false) {
    KhovanovComplex kc(ctx.d, reduced);
    TreeComplexData out;
    out.reduced = reduced;

    // Global state list in lexicographic (markers, plus) order.
    std::vector<EnhancedState> states;
    for (const auto& [ij, ss] : kc.basis())
        for (const auto& s : ss) states.push_back(s);
    std::sort(states.begin(), states.end(), [](const auto& a, const auto& b) {
        return std::pair{a.markers, a.plus} < std::pair{b.markers, b.plus};
    });
    int n = static_cast<int>(states.size());
    std::unordered_map<EnhancedState, int, EnhancedStateHash> id;
    for (int k = 0; k < n; ++k) id[states[k]] = k;
    std::vector<int> tree_of(n);
    for (int k = 0; k < n; ++k) tree_of[k] = ctx.tree_of_markers(states[k].markers);

    std::vector<std::map<int, Int>> col(n);
    for (int k = 0; k < n; ++k)
        for (const auto& [t, c] : kc.boundary(states[k]))
            if (c != 0) col[k][id.at(t)] += c;

    std::vector<char> alive(n, 1);
    std::vector<int> gen_of(n, -1);

    auto row_transform = [&](std::map<int, Int>& v, int p,
                             const std::vector<std::pair<int, Int>>& chain, const Int& gp) {
        auto it = v.find(p);
        if (it == v.end()) return;
        Int a = it->second / gp;
        for (const auto& [s, g] : chain)
            if (s != p) {
                v[s] -= g * a;
                if (v[s] == 0) v.erase(s);
            }
        if (a == 0)
            v.erase(p);
        else
            v[p] = a;
    };

    // Insert a generator (chain expressed over the current basis) in place
    // of its lexicographically smallest unit-coefficient non-generator
    // state.  Returns the pivot id now denoting the generator.
    auto insert_generator = [&](std::vector<std::pair<int, Int>> chain) {
        int p = -1;
        Int gp = 0;
        for (const auto& [s, g] : chain)
            if (alive[s] && gen_of[s] < 0 && (g == 1 || g == -1)) {
                p = s;
                gp = g;
                break;
            }
        if (p < 0) throw diagram_error("collapse pivot is not a unit");
        std::map<int, Int> dgen;
        for (const auto& [s, g] : chain)
            for (const auto& [r, c] : col[s]) dgen[r] += g * c;
        std::erase_if(dgen, [](const auto& e) { return e.second == 0; });
        col[p] = std::move(dgen);
        for (int s = 0; s < n; ++s)
            if (alive[s] && s != p) row_transform(col[s], p, chain, gp);
        return p;
    };

    auto eliminate = [&](int a, int b, const Int& eps) {
        std::map<int, Int> pivot_col = col[a];
        for (int s = 0; s < n; ++s) {
            if (!alive[s] || s == a) continue;
            auto it = col[s].find(b);
            if (it == col[s].end()) continue;
            Int f = it->second / eps;
            for (const auto& [r, c] : pivot_col) {
                col[s][r] -= f * c;
                if (col[s][r] == 0) col[s].erase(r);
            }
        }
        alive[a] = alive[b] = 0;
    };

    // Minimal tree first: deepest filtration level, ties by tree index.
    std::vector<int> tree_order(ctx.tree_count());
    std::iota(tree_order.begin(), tree_order.end(), 0);
    std::sort(tree_order.begin(), tree_order.end(), [&](int a, int b) {
        return std::pair{-ctx.poset.level[a], a} < std::pair{-ctx.poset.level[b], b};
    });

    std::vector<char> finished(ctx.tree_count(), 0);
    // Past insertions, needed to re-coordinatize later chains (only the
    // second sign variant of the same tree is ever affected).
    std::vector<std::tuple<int, std::vector<std::pair<int, Int>>, Int>> insertions;
    for (int t : tree_order) {
        // Insert the fundamental cycle generator(s).
        for (bool plus : reduced ? std::vector<bool>{true} : std::vector<bool>{true, false}) {
            FundamentalCycle z = ctx.cycle(t, plus);
            std::map<int, Int> raw;
            for (const auto& [k, v] : z.chain) {
                auto it = id.find(state_of(k));
                if (it == id.end())
                    throw diagram_error("fundamental cycle leaves the state basis");
                raw[it->second] = v;
            }
            for (const auto& [ip, ichain, igp] : insertions)
                row_transform(raw, ip, ichain, igp);
            std::vector<std::pair<int, Int>> chain(raw.begin(), raw.end());
            int p = insert_generator(chain);
            insertions.push_back({p, chain, raw.at(p)});
            TreeGen g;
            g.tree = t;
            g.plus = plus;
            g.u = ctx.grading_u_of(t) + (plus ? 0 : 2);
            g.v = ctx.grading_v_of(t) + (plus ? 0 : 1);
            g.ij = kc.grading(state_of(z.chain.begin()->first));
            gen_of[p] = static_cast<int>(out.gens.size());
            out.gens.push_back(g);
        }
        // Eliminate the rest of this U-tilde, lexicographically.
        for (;;) {
            int pa = -1, pb = -1;
            for (int a = 0; a < n && pa < 0; ++a) {
                if (!alive[a] || gen_of[a] >= 0 || tree_of[a] != t) continue;
                for (const auto& [b, c] : col[a])
                    if (alive[b] && gen_of[b] < 0 && tree_of[b] == t && (c == 1 || c == -1)) {
                        pa = a;
                        pb = b;
                        break;
                    }
            }
            if (pa < 0) break;
            eliminate(pa, pb, col[pa].at(pb));
        }
        for (int s = 0; s < n; ++s)
            if (alive[s] && gen_of[s] < 0 && tree_of[s] == t)
                throw diagram_error("twisted unknot collapse is stuck");
        finished[t] = 1;
        if (check_locality) {
            for (int s = 0; s < n; ++s) {
                if (!alive[s] || gen_of[s] >= 0 || finished[tree_of[s]]) continue;
                std::map<int, Int> want;
                for (const auto& [tt, c] : kc.boundary(states[s]))
                    if (tree_of[id.at(tt)] == tree_of[s]) want[id.at(tt)] += c;
                std::erase_if(want, [](const auto& e) { return e.second == 0; });
                for (const auto& [r, c] : col[s])
                    if (alive[r] && tree_of[r] == tree_of[s] && gen_of[r] < 0 &&
                        want[r] != c)
                        throw diagram_error("collapse changed a foreign incidence number");
                for (const auto& [r, c] : want)
                    if (col[s].find(r) == col[s].end() || col[s].at(r) != c)
                        throw diagram_error("collapse changed a foreign incidence number");
            }
        }
    }

    // Read off the induced differential between the surviving generators.
    for (int s = 0; s < n; ++s) {
        if (!alive[s] || gen_of[s] < 0) continue;
        for (const auto& [r, c] : col[s])
            if (alive[r] && gen_of[r] >= 0 && c != 0)
                out.d.push_back({gen_of[s], gen_of[r], c});
    }
    return out;
}

}  // namespace stkh
