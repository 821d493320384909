#pragma once

#include "stkh/tree_complex.hpp"

namespace stkh {

// A ladder of enhanced states from Z(T1) to Z(T2) witnessing a k-incidence
// (Definition: x_0 = Z1, y_k = Z2, intermediate pairs x_i, y_i in the same
// U-tilde minus its fundamental-cycle pivot, with <dx_i, y_{i+1}> != 0 and
// <dx_i, y_i> != 0), together with its induced incidence contribution and
// the admissible activity sequence it gives rise to.
struct Ladder {
    int k = 1;
    int t1 = -1, t2 = -1;
    std::vector<int> trees;             // intermediate trees j_1 .. j_{k-1}
    std::vector<EnhancedState> xs, ys;  // x_i, y_i for 1 <= i <= k-1
    Int contribution = 0;
    // Admissible activity sequence data: the crossing whose marker changes
    // on each rung x_i -> y_i and on each rail x_{i-1} -> y_i.
    std::vector<int> rung_markers;
    std::vector<int> rail_markers;
    // Whether each rail marker is live in the word(s) at its endpoints.
    std::vector<bool> rail_live;
};

namespace detail {

inline int changed_marker(uint64_t from, uint64_t to) {
    uint64_t d = from ^ to;
    if (std::popcount(d) != 1) return -1;
    return std::countr_zero(d);
}

}  // namespace detail

// All ladders from T1 to T2 of length <= kmax.  The k = 1 "ladder" is the
// direct incidence.  `node_budget` caps the number of DFS extensions.
inline std::vector<Ladder> ladders(const TreeContext& ctx, const KhovanovComplex& kc,
                                   int t1, int t2, int kmax, long node_budget = 500000) {
    if (kmax < 1) throw graph_error("ladders: kmax must be >= 1");
    std::vector<Ladder> out;
    if (t1 == t2) return out;
    FundamentalCycle z1 = ctx.cycle(t1, true);
    FundamentalCycle z2 = ctx.cycle(t2, true);

    // k = 1: direct incidence.
    Int di = direct_incidence(kc, z1, z2, ctx.words[t2]);
    if (di != 0) {
        Ladder l;
        l.k = 1;
        l.t1 = t1;
        l.t2 = t2;
        l.contribution = di;
        int m = detail::changed_marker(z1.markers, z2.markers);
        if (m >= 0) {
            l.rail_markers.push_back(m);
            l.rail_live.push_back(letter_live(ctx.words[t1][m]) ||
                                  letter_live(ctx.words[t2][m]));
        }
        out.push_back(std::move(l));
    }
    if (kmax == 1) return out;

    // Fundamental-cycle pivot state per tree (the state replaced by Z in
    // the collapsed basis); intermediate rungs must avoid it.
    std::vector<ChainKey> pivot(ctx.tree_count());
    for (int t = 0; t < ctx.tree_count(); ++t) {
        FundamentalCycle z = ctx.cycle(t, true);
        pivot[t] = z.chain.begin()->first;
    }

    Chain dz1 = boundary_chain(kc, z1.chain);

    // Incidences into a given state: all x with <dx, y> != 0, restricted to
    // x in the same U-tilde as y.
    std::map<ChainKey, std::vector<std::pair<EnhancedState, Int>>> pred_cache;
    auto predecessors = [&](const EnhancedState& y, int tree) {
        auto it = pred_cache.find(key_of(y));
        if (it != pred_cache.end()) return it->second;
        std::vector<std::pair<EnhancedState, Int>> ps;
        int n = kc.diagram().crossing_count();
        for (int c = 0; c < n; ++c) {
            if (!((y.markers >> c) & 1)) continue;
            uint64_t m2 = y.markers & ~(uint64_t(1) << c);
            if (ctx.tree_of_markers(m2) != tree) continue;
            int loops = kc.smoothing(m2).loop_count;
            for (uint64_t plus = 0; plus < (uint64_t(1) << loops); ++plus) {
                EnhancedState x{m2, plus};
                if (!kc.admissible(x)) continue;
                for (const auto& [ty, cf] : kc.boundary(x))
                    if (ty == y && cf != 0) ps.push_back({x, cf});
            }
        }
        pred_cache[key_of(y)] = ps;
        return ps;
    };

    long budget = node_budget;
    // DFS: extend a partial ladder ending at x_{i} (last rung source) with
    // accumulated product <dZ1,y1> * prod <dx,y><dx,y'>.
    struct Frame {
        std::vector<int> trees;
        std::vector<EnhancedState> xs, ys;
        std::vector<int> rungs, rails;
        std::vector<bool> rail_live;
        uint64_t used = 0;  // crossings already changed by a rail or rung
        Int acc = 1;
    };
    auto emit = [&](const Frame& f, const Int& last, int last_marker, bool last_live) {
        Ladder l;
        l.k = static_cast<int>(f.trees.size()) + 1;
        l.t1 = t1;
        l.t2 = t2;
        l.trees = f.trees;
        l.xs = f.xs;
        l.ys = f.ys;
        l.rung_markers = f.rungs;
        l.rail_markers = f.rails;
        l.rail_live = f.rail_live;
        l.rail_markers.push_back(last_marker);
        l.rail_live.push_back(last_live);
        l.contribution = ((l.k - 1) % 2 ? -f.acc : f.acc) * last;
        out.push_back(std::move(l));
    };

    // Recursive extension from the current x (a single enhanced state).
    auto dfs = [&](auto&& self, Frame& f, const EnhancedState& x) -> void {
        if (--budget < 0) return;
        // Close the ladder: <dx, Z2> != 0.
        Chain dx;
        for (const auto& [ty, cf] : kc.boundary(x)) chain_add(dx, key_of(ty), cf);
        Int closing = chain_pairing(dx, z2.chain);
        if (closing != 0) {
            int m = detail::changed_marker(x.markers, z2.markers);
            // Each marker changes at most once along a genuine ladder
            // (exactly k A->B and k-1 B->A changes in total).
            if (m >= 0 && !((f.used >> m) & 1)) {
                bool live = letter_live(ctx.words[f.trees.back()][m]) ||
                            letter_live(ctx.words[t2][m]);
                emit(f, closing, m, live);
            }
        }
        if (static_cast<int>(f.trees.size()) + 1 >= kmax) return;
        // Extend: pick the next rung y' with <dx, y'> != 0 in a tree j'
        // with j >= j' > t2 (poset), y' not a pivot, then x' above y'.
        for (const auto& [ky, cf] : dx) {
            int j2 = ctx.tree_of_markers(ky.first);
            if (j2 == t1 || j2 == t2) continue;
            int j = f.trees.back();
            if (j2 != j && !ctx.poset.greater[j][j2]) continue;
            if (!ctx.poset.greater[j2][t2]) continue;
            if (ky == pivot[j2]) continue;
            int rail = detail::changed_marker(x.markers, ky.first);
            if (rail < 0 || ((f.used >> rail) & 1)) continue;
            bool rail_is_live = letter_live(ctx.words[j][rail]) ||
                                letter_live(ctx.words[j2][rail]);
            for (const auto& [x2, cf2] : predecessors(state_of(ky), j2)) {
                if (key_of(x2) == pivot[j2]) continue;
                int rung = detail::changed_marker(x2.markers, ky.first);
                if (rung < 0 || rung == rail || ((f.used >> rung) & 1)) continue;
                uint64_t save_used = f.used;
                f.used |= (uint64_t(1) << rail) | (uint64_t(1) << rung);
                f.trees.push_back(j2);
                f.xs.push_back(x2);
                f.ys.push_back(state_of(ky));
                f.rungs.push_back(rung);
                f.rails.push_back(rail);
                f.rail_live.push_back(rail_is_live);
                Int save = f.acc;
                f.acc *= cf * cf2;
                self(self, f, x2);
                f.acc = save;
                f.used = save_used;
                f.trees.pop_back();
                f.xs.pop_back();
                f.ys.pop_back();
                f.rungs.pop_back();
                f.rails.pop_back();
                f.rail_live.pop_back();
            }
        }
    };

    // First rail: components of dZ1 in intermediate U-tildes.
    for (const auto& [ky, cf] : dz1) {
        int j = ctx.tree_of_markers(ky.first);
        if (j == t1 || j == t2) continue;
        if (!ctx.poset.greater[t1][j] || !ctx.poset.greater[j][t2]) continue;
        if (ky == pivot[j]) continue;
        int rail = detail::changed_marker(z1.markers, ky.first);
        if (rail < 0) continue;
        for (const auto& [x1, cf1] : predecessors(state_of(ky), j)) {
            if (key_of(x1) == pivot[j]) continue;
            int rung = detail::changed_marker(x1.markers, ky.first);
            if (rung < 0 || rung == rail) continue;
            Frame f;
            f.trees = {j};
            f.xs = {x1};
            f.ys = {state_of(ky)};
            f.rungs = {rung};
            f.rails = {rail};
            f.used = (uint64_t(1) << rail) | (uint64_t(1) << rung);
            f.rail_live = {rail >= 0 && (letter_live(ctx.words[t1][rail]) ||
                                         letter_live(ctx.words[j][rail]))};
            f.acc = cf * cf1;
            dfs(dfs, f, x1);
        }
    }
    return out;
}

}  // namespace stkh
