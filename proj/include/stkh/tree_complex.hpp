#pragma once

#include "stkh/khovanov.hpp"
#include "stkh/spanning_trees.hpp"

namespace stkh {

// Chain in the Khovanov complex, keyed by (markers, plus) bit masks.
using ChainKey = std::pair<uint64_t, uint64_t>;
using Chain = std::map<ChainKey, Int>;

inline ChainKey key_of(const EnhancedState& s) { return {s.markers, s.plus}; }
inline EnhancedState state_of(const ChainKey& k) { return {k.first, k.second}; }

inline void chain_add(Chain& c, const ChainKey& k, const Int& v) {
    if (v == 0) return;
    auto it = c.find(k);
    if (it == c.end()) {
        c[k] = v;
    } else {
        it->second += v;
        if (it->second == 0) c.erase(it);
    }
}

inline Chain boundary_chain(const KhovanovComplex& kc, const Chain& z) {
    Chain out;
    for (const auto& [k, coef] : z)
        for (const auto& [t, c] : kc.boundary(state_of(k))) chain_add(out, key_of(t), coef * c);
    return out;
}

// Dual-basis inner product of two chains.
inline Int chain_pairing(const Chain& a, const Chain& b) {
    Int s = 0;
    for (const auto& [k, v] : a) {
        auto it = b.find(k);
        if (it != b.end()) s += v * it->second;
    }
    return s;
}

struct FundamentalCycle {
    int tree = -1;          // index into the tree list, or -1 if standalone
    bool plus_variant = true;
    uint64_t markers = 0;   // shared marker state of all summands
    Chain chain;
};

// --- fundamental cycles ---------------------------------------------------

namespace detail {

// One untwisting step of U(T): crossing c had a monogon between slots
// (slot, slot+1).
struct Untwist {
    int crossing;
    int slot;
    bool monogon_has_p;
};

// Untwisting sequence of the twisted unknot U(T): dead crossings smoothed
// per the partial smoothing, live crossings untwisted innermost-monogon
// first, preferring monogons away from the basepoint.  `variant` rotates
// the otherwise-free choice among the preferred monogons of each step (the
// resulting cycle is independent of it, which the property suite checks).
inline std::vector<Untwist> untwist_sequence(const Diagram& d, const ActivityWord& w,
                                             const std::vector<Marker>& full_markers,
                                             int variant = 0) {
    int n = d.crossing_count();
    std::vector<char> live(n, 0);
    int live_count = 0;
    for (int e = 0; e < n; ++e)
        if (letter_live(w[e])) {
            live[e] = 1;
            ++live_count;
        }
    // Strand connections between live-crossing darts through arcs and
    // smoothed dead crossings, with a contains-basepoint flag per segment.
    std::map<int, std::pair<int, bool>> conn;
    for (int c = 0; c < n; ++c) {
        if (!live[c]) continue;
        for (int s = 0; s < 4; ++s) {
            int start = 4 * c + s;
            if (conn.count(start)) continue;
            int cur = start;
            bool has_p = false;
            for (;;) {
                int a = d.dart_arc(cur);
                has_p = has_p || (a == d.basepoint());
                int next = d.dart_mate(cur);
                int c2 = next / 4;
                if (live[c2]) {
                    conn[start] = {next, has_p};
                    conn[next] = {start, has_p};
                    break;
                }
                cur = 4 * c2 + smoothing_partner(full_markers[c2], next % 4);
            }
        }
    }

    std::vector<Untwist> order;
    std::vector<char> remaining = live;
    for (int step = 0; step < live_count; ++step) {
        std::vector<Untwist> eligible;
        for (int c = 0; c < n; ++c) {
            if (!remaining[c]) continue;
            for (int s = 0; s < 4; ++s) {
                int dart = 4 * c + s;
                auto it = conn.find(dart);
                if (it == conn.end()) continue;
                if (it->second.first != 4 * c + (s + 1) % 4) continue;
                if (smoothing_partner(full_markers[c], s) != (s + 1) % 4) continue;
                eligible.push_back({c, s, it->second.second});
            }
        }
        std::vector<Untwist> preferred;
        for (const auto& u : eligible)
            if (!u.monogon_has_p) preferred.push_back(u);
        if (preferred.empty()) preferred = eligible;
        if (preferred.empty())
            throw diagram_error("untwisting stuck: U(T) is not a twisted unknot");
        Untwist pick = preferred[variant % preferred.size()];
        int best_c = pick.crossing, best_s = pick.slot;
        order.push_back(pick);
        remaining[best_c] = 0;
        int s2 = 4 * best_c + (best_s + 2) % 4, s3 = 4 * best_c + (best_s + 3) % 4;
        auto [y, f1] = conn.at(s2);
        auto [z, f2] = conn.at(s3);
        for (int t : {4 * best_c, 4 * best_c + 1, 4 * best_c + 2, 4 * best_c + 3}) conn.erase(t);
        if (y != s3 && y != s2) {
            conn[y] = {z, f1 || f2};
            conn[z] = {y, f1 || f2};
        }
    }
    return order;
}

// Untwisting plan of U(T): the untwist sequence plus the final loop
// partition and, per step, the monogon circle ("child") and the through
// circle ("parent").  Untwisting kink t merges its monogon circle into the
// through circle, so the circles present while kinks t..k-1 still stand are
// the classes of final loops connected through kinks 0..t-1; rep(t, l) is
// the smallest loop in l's class at that stage.
struct UntwistPlan {
    std::vector<Untwist> order;
    std::vector<int> loop_of;  // final-smoothing loop of each arc
    int loop_count = 0;
    std::vector<int> child, parent;

    int rep(int t, int l) const {
        std::vector<int> par(loop_count);
        std::iota(par.begin(), par.end(), 0);
        auto find = [&](int x) {
            while (par[x] != x) x = par[x] = par[par[x]];
            return x;
        };
        for (int i = 0; i < t; ++i) {
            int a = find(child[i]), b = find(parent[i]);
            if (a != b) par[std::max(a, b)] = std::min(a, b);
        }
        return find(l);
    }
};

inline UntwistPlan make_untwist_plan(const Diagram& d, const ActivityWord& w,
                                     const std::vector<Marker>& full, int variant = 0) {
    UntwistPlan p;
    std::tie(p.loop_of, p.loop_count) = d.smooth_loops(full);
    p.order = untwist_sequence(d, w, full, variant);
    int k = static_cast<int>(p.order.size());
    if (p.loop_count != k + 1)
        throw diagram_error("maximally disconnected state has wrong loop count");
    p.child.resize(k);
    p.parent.resize(k);
    for (int t = 0; t < k; ++t) {
        int c = p.order[t].crossing, s = p.order[t].slot;
        p.child[t] = p.loop_of[d.crossings()[c].arc[s]];
        p.parent[t] = p.loop_of[d.crossings()[c].arc[(s + 2) % 4]];
    }
    for (int t = 0; t < k; ++t) {
        int whole = p.rep(t + 1, p.child[t]);
        int c_rep = p.rep(t, p.child[t]);
        int p_rep = p.rep(t, p.parent[t]);
        if (c_rep == p_rep || (whole != c_rep && whole != p_rep))
            throw diagram_error("untwisting stages are inconsistent");
    }
    return p;
}

}  // namespace detail

// Fundamental cycle Z(T): linear combination of enhanced states on the
// maximally disconnected state of U(T), built from the round unknot by the
// per-twist expansion rules.  `plus_variant` selects the start label.
inline FundamentalCycle fundamental_cycle(const Diagram& d, const ActivityWord& w,
                                          bool plus_variant, int untwist_variant = 0) {
    FundamentalCycle fc;
    fc.plus_variant = plus_variant;
    auto full = tree_markers(w);
    for (size_t e = 0; e < full.size(); ++e)
        if (full[e] == Marker::B) fc.markers |= uint64_t(1) << e;
    auto plan = detail::make_untwist_plan(d, w, full, untwist_variant);
    int k = static_cast<int>(plan.order.size());
    auto rep = [&](int t, int l) { return plan.rep(t, l); };
    const auto& child = plan.child;
    const auto& parent = plan.parent;

    // Labels live on circle-class representatives; attach kinks in reverse
    // untwisting order, splitting one class per step.
    std::map<uint64_t, int> terms;  // plus-mask over class reps -> coefficient
    terms[plus_variant ? (uint64_t(1) << rep(k, 0)) : 0] = 1;
    for (int t = k - 1; t >= 0; --t) {
        int whole = rep(t + 1, child[t]);
        int c_rep = rep(t, child[t]);
        int p_rep = rep(t, parent[t]);
        bool merge_type = full[plan.order[t].crossing] == Marker::A;  // letters l, Lb
        std::map<uint64_t, int> next;
        for (const auto& [mask, coef] : terms) {
            bool eps = (mask >> whole) & 1;
            uint64_t rest = mask & ~(uint64_t(1) << whole);
            uint64_t pbit = uint64_t(1) << p_rep, cbit = uint64_t(1) << c_rep;
            if (!merge_type) {
                // Split-type twist, section x -> x (x) 1: new circle "-",
                // strand keeps its label.
                next[rest | (eps ? pbit : 0)] += coef;
            } else {
                // Merge-type twist, section x -> x (x) X - (X.x) (x) 1:
                // "+" strand gives (+,+); "-" strand gives (-,+) - (+,-).
                if (eps) {
                    next[rest | pbit | cbit] += coef;
                } else {
                    next[rest | cbit] += coef;
                    next[rest | pbit] -= coef;
                }
            }
        }
        terms = std::move(next);
    }
    for (const auto& [mask, coef] : terms)
        if (coef != 0) fc.chain[{fc.markers, mask}] = coef;
    if (fc.chain.empty()) throw diagram_error("fundamental cycle vanished");
    return fc;
}

// Direct incidence <dT1, T2>: the coefficient of Z2 in the image of dZ1
// under the deformation retraction of U(T2) onto its core circle.  The
// retraction is the composite of the elementary one-kink retractions along
// the untwist sequence of U(T2):
//   merge-type kink (section x -> x (x) X - (X.x) (x) 1):
//       x (x) X -> x,   x (x) 1 -> 0,   B-marker states -> 0
//   split-type kink (section x -> x (x) 1):
//       x (x) 1 -> x,   x (x) X -> -X.x,   A-marker states -> 0
// Every live marker of a surviving state must equal the tree smoothing, so
// only the components of dZ1 on the marker state of s(T2) contribute.  (The
// literal inner product <dZ1, Z2> over the orthonormal state basis can
// vanish on directly incident pairs through sign cancellation; the
// retraction value is the entry of the collapsed complex.)
inline Int direct_incidence(const KhovanovComplex& kc, const FundamentalCycle& z1,
                            const FundamentalCycle& z2, const ActivityWord& w2) {
    if (z2.chain.empty()) throw diagram_error("empty fundamental cycle");
    const Diagram& d = kc.diagram();
    auto full = tree_markers(w2);
    auto plan = detail::make_untwist_plan(d, w2, full);
    int k = static_cast<int>(plan.order.size());
    int bp_loop = plan.loop_of[d.basepoint()];

    // The kink sections and retractions are written in the untwisted sign
    // convention, matching fundamental_cycle; the diagonal sign twists of
    // the per-kink isomorphisms are constant across the states of one
    // marker state, so they cancel between the Z-basis and the retraction
    // and the untwisted value is the matrix entry relative to the
    // fundamental-cycle basis (checked against the algebraic collapse).

    Int total = 0;
    for (const auto& [key, coef] : boundary_chain(kc, z1.chain)) {
        if (key.first != z2.markers) continue;
        uint64_t mask = key.second;  // plus labels on circle-class reps
        Int c = coef;
        bool dead = false;
        for (int t = 0; t < k && !dead; ++t) {
            int whole = plan.rep(t + 1, plan.child[t]);
            int c_rep = plan.rep(t, plan.child[t]);
            int p_rep = plan.rep(t, plan.parent[t]);
            bool gamma = (mask >> c_rep) & 1;  // monogon circle label
            bool beta = (mask >> p_rep) & 1;   // through strand label
            uint64_t rest = mask & ~((uint64_t(1) << c_rep) | (uint64_t(1) << p_rep));
            bool merge_type = full[plan.order[t].crossing] == Marker::A;
            if (merge_type) {
                if (!gamma) {
                    dead = true;
                } else {
                    mask = rest | (beta ? (uint64_t(1) << whole) : 0);
                }
            } else {
                if (!gamma) {
                    mask = rest | (beta ? (uint64_t(1) << whole) : 0);
                } else if (!beta) {
                    mask = rest | (uint64_t(1) << whole);
                    c = -c;
                } else {
                    dead = true;
                }
            }
            // Reduced retraction: the circle carrying the basepoint keeps
            // its "+" label at every stage.
            if (!dead && kc.reduced() && plan.rep(t + 1, bp_loop) == whole &&
                !((mask >> whole) & 1))
                dead = true;
        }
        if (dead) continue;
        bool final_plus = (mask >> plan.rep(k, 0)) & 1;
        if (final_plus == z2.plus_variant) total += c;
    }
    return total;
}

// --- Theorem 2.3 word patterns --------------------------------------------

// True iff w2 arises from w1 by changing exactly two letters, at positions
// p < q, matching one of: L d-bar -> d D-bar; d-bar D -> L-bar d;
// l-bar D -> D-bar d; D d-bar -> l D-bar.
inline bool classify_direct(const ActivityWord& w1, const ActivityWord& w2) {
    if (w1.size() != w2.size()) throw graph_error("classify_direct: word length mismatch");
    std::vector<int> diff;
    for (size_t i = 0; i < w1.size(); ++i)
        if (w1[i] != w2[i]) diff.push_back(static_cast<int>(i));
    if (diff.size() != 2) return false;
    auto quad = std::array<Letter, 4>{w1[diff[0]], w1[diff[1]], w2[diff[0]], w2[diff[1]]};
    using enum Letter;
    static const std::array<Letter, 4> patterns[] = {
        {L, db, d, Db},
        {db, D, Lb, d},
        {lb, D, Db, d},
        {D, db, l, Db},
    };
    for (const auto& p : patterns)
        if (quad == p) return true;
    return false;
}

// --- spanning tree poset and filtration -----------------------------------

struct TreePoset {
    std::vector<std::vector<char>> greater;  // greater[i][j] = (T_i > T_j)
    std::vector<int> level;                  // 1 = maximal tree
    int max_tree = -1, min_tree = -1;
    int depth = 0;                           // number of filtration levels
};

// T > T' iff every A of T' is A-or-* in T, and some * or... strictly: some
// position has A in T and B in T'.
inline bool smoothing_greater(const std::string& x, const std::string& y) {
    bool strict = false;
    for (size_t i = 0; i < x.size(); ++i) {
        if (y[i] == 'A' && x[i] != 'A' && x[i] != '*') return false;
        if (x[i] == 'A' && y[i] == 'B') strict = true;
    }
    return strict;
}

inline TreePoset tree_poset(const std::vector<ActivityWord>& words) {
    int n = static_cast<int>(words.size());
    TreePoset p;
    std::vector<std::string> sm(n);
    for (int i = 0; i < n; ++i) sm[i] = partial_smoothing(words[i]);
    p.greater.assign(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) p.greater[i][j] = smoothing_greater(sm[i], sm[j]);
    // Transitive closure.
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (p.greater[i][k])
                for (int j = 0; j < n; ++j)
                    if (p.greater[k][j]) p.greater[i][j] = 1;
    for (int i = 0; i < n; ++i)
        if (p.greater[i][i]) throw graph_error("tree poset relation is not antisymmetric");
    // Unique maximal and minimal elements.
    for (int i = 0; i < n; ++i) {
        bool maximal = true, minimal = true;
        for (int j = 0; j < n; ++j) {
            if (p.greater[j][i]) maximal = false;
            if (p.greater[i][j]) minimal = false;
        }
        if (maximal) {
            if (p.max_tree >= 0) throw graph_error("tree poset has two maximal trees");
            p.max_tree = i;
        }
        if (minimal) {
            if (p.min_tree >= 0) throw graph_error("tree poset has two minimal trees");
            p.min_tree = i;
        }
    }
    // level(T) = longest descending chain from the maximal tree to T,
    // counted inclusively.
    p.level.assign(n, 1);
    // Longest-path relaxation over the DAG (edges i -> j when T_i > T_j).
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (p.greater[i][j] && p.level[j] < p.level[i] + 1) {
                    p.level[j] = p.level[i] + 1;
                    changed = true;
                }
    }
    p.depth = *std::max_element(p.level.begin(), p.level.end());
    return p;
}

// --- tree/diagram context --------------------------------------------------

// Shared context tying a diagram, a Tait graph with aligned edge order
// (edge e <-> crossing e), its spanning trees, words, and poset.
struct TreeContext {
    Diagram d;
    SignedPlanarGraph g;
    std::vector<TreeMask> trees;
    std::vector<ActivityWord> words;
    std::vector<std::string> smoothings;
    std::vector<uint64_t> dead_mask, dead_val;  // bit per crossing; val = B bits
    TreePoset poset;

    static TreeContext from_diagram(const Diagram& d) {
        return TreeContext(d, tait_graph(d, canonical_coloring(d)));
    }
    static TreeContext from_graph(const SignedPlanarGraph& g) {
        return TreeContext(medial(g), g);
    }

    TreeContext(const Diagram& d_, const SignedPlanarGraph& g_) : d(d_), g(g_) {
        trees = enumerate_trees(g);
        for (TreeMask t : trees) words.push_back(activity_word(g, t));
        for (const auto& w : words) smoothings.push_back(partial_smoothing(w));
        for (const auto& s : smoothings) {
            uint64_t dm = 0, dv = 0;
            for (size_t e = 0; e < s.size(); ++e) {
                if (s[e] == '*') continue;
                dm |= uint64_t(1) << e;
                if (s[e] == 'B') dv |= uint64_t(1) << e;
            }
            dead_mask.push_back(dm);
            dead_val.push_back(dv);
        }
        poset = tree_poset(words);
    }

    int tree_count() const { return static_cast<int>(trees.size()); }

    // The unique tree whose partial smoothing the marker state extends.
    int tree_of_markers(uint64_t markers) const {
        int found = -1;
        for (int i = 0; i < tree_count(); ++i)
            if ((markers & dead_mask[i]) == dead_val[i]) {
                if (found >= 0) throw graph_error("marker state matches two partial smoothings");
                found = i;
            }
        if (found < 0) throw graph_error("marker state matches no partial smoothing");
        return found;
    }

    int grading_u_of(int t) const { return grading_u(words[t]); }
    int grading_v_of(int t) const { return grading_v(words[t]); }

    FundamentalCycle cycle(int t, bool plus_variant) const {
        FundamentalCycle fc = fundamental_cycle(d, words[t], plus_variant);
        fc.tree = t;
        return fc;
    }
};

}  // namespace stkh
