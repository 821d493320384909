#pragma once

#include <cstdint>

#include "stkh/bracket.hpp"
#include "stkh/signed_graph.hpp"
#include "stkh/tait.hpp"

namespace stkh {

// Spanning tree of a SignedPlanarGraph as a bit mask over edge positions.
using TreeMask = uint64_t;

// Per-edge activity letters.  Barred letters mark negative edges; capital
// letters mark tree edges; L/l are live, D/d dead.
enum class Letter : uint8_t { L, D, l, d, Lb, Db, lb, db };

using ActivityWord = std::vector<Letter>;

inline bool letter_in_tree(Letter x) {
    return x == Letter::L || x == Letter::D || x == Letter::Lb || x == Letter::Db;
}
inline bool letter_live(Letter x) {
    return x == Letter::L || x == Letter::l || x == Letter::Lb || x == Letter::lb;
}
inline bool letter_negative(Letter x) { return static_cast<uint8_t>(x) >= 4; }

inline std::string letter_str(Letter x) {
    switch (x) {
        case Letter::L: return "L";
        case Letter::D: return "D";
        case Letter::l: return "ℓ";        // ℓ
        case Letter::d: return "d";
        case Letter::Lb: return "L̄";      // L̄
        case Letter::Db: return "D̄";
        case Letter::lb: return "ℓ̄";
        case Letter::db: return "d̄";
    }
    return "?";
}

inline std::string word_str(const ActivityWord& w) {
    std::string s;
    for (Letter x : w) s += letter_str(x);
    return s;
}

// Parses the UTF-8 word format produced by word_str.
inline ActivityWord parse_word(const std::string& s) {
    ActivityWord w;
    size_t i = 0;
    auto take = [&](const std::string& tok) {
        if (s.compare(i, tok.size(), tok) == 0) {
            i += tok.size();
            return true;
        }
        return false;
    };
    while (i < s.size()) {
        bool ok = false;
        for (Letter x : {Letter::Lb, Letter::Db, Letter::lb, Letter::db, Letter::L, Letter::D,
                         Letter::l, Letter::d}) {
            if (take(letter_str(x))) {
                w.push_back(x);
                ok = true;
                break;
            }
        }
        if (!ok) throw std::runtime_error("bad activity word: " + s);
    }
    return w;
}

namespace detail {

// Union-find over vertices.
class DSU {
public:
    explicit DSU(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[std::max(a, b)] = std::min(a, b);
        return true;
    }

private:
    std::vector<int> parent_;
};

inline void enumerate_rec(const SignedPlanarGraph& g, int e, DSU dsu, int joined, TreeMask mask,
                          std::vector<TreeMask>& out) {
    int n = g.vertex_count(), m = g.edge_count();
    if (joined == n - 1) {
        out.push_back(mask);
        return;
    }
    if (e == m || joined + (m - e) < n - 1) return;
    const auto& ed = g.edge(e);
    // Exclude e: only if the rest can still connect.
    {
        DSU rest = dsu;
        int j = joined;
        for (int f = e + 1; f < m; ++f)
            if (rest.unite(g.edge(f).u, g.edge(f).v)) ++j;
        if (j == n - 1) enumerate_rec(g, e + 1, dsu, joined, mask, out);
    }
    // Include e.
    if (dsu.find(ed.u) != dsu.find(ed.v)) {
        DSU with = dsu;
        with.unite(ed.u, ed.v);
        enumerate_rec(g, e + 1, with, joined + 1, mask | (TreeMask(1) << e), out);
    }
}

}  // namespace detail

// All spanning trees, in lexicographic edge-mask order.
inline std::vector<TreeMask> enumerate_trees(const SignedPlanarGraph& g) {
    std::vector<TreeMask> out;
    detail::enumerate_rec(g, 0, detail::DSU(g.vertex_count()), 0, 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

// Edges that reconnect T \ e (includes e itself).  Requires e in T.
inline TreeMask cut(const SignedPlanarGraph& g, TreeMask tree, int e) {
    if (!(tree >> e & 1)) throw graph_error("cut: edge not in tree");
    detail::DSU dsu(g.vertex_count());
    for (int f = 0; f < g.edge_count(); ++f)
        if (f != e && (tree >> f & 1)) dsu.unite(g.edge(f).u, g.edge(f).v);
    int side = dsu.find(g.edge(e).u);
    TreeMask result = 0;
    for (int f = 0; f < g.edge_count(); ++f) {
        int a = dsu.find(g.edge(f).u), b = dsu.find(g.edge(f).v);
        if (a != b && (a == side || b == side)) result |= TreeMask(1) << f;
    }
    return result;
}

// Edges of the unique cycle in T + f.  Requires f not in T.
inline TreeMask cyc(const SignedPlanarGraph& g, TreeMask tree, int f) {
    if (tree >> f & 1) throw graph_error("cyc: edge already in tree");
    // BFS through tree edges from one endpoint of f to the other.
    int src = g.edge(f).u, dst = g.edge(f).v;
    if (src == dst) return TreeMask(1) << f;  // loop edge
    std::vector<int> via(g.vertex_count(), -1), prev(g.vertex_count(), -1);
    std::vector<int> queue = {src};
    prev[src] = src;
    for (size_t qi = 0; qi < queue.size() && prev[dst] < 0; ++qi) {
        int v = queue[qi];
        for (int e = 0; e < g.edge_count(); ++e) {
            if (!(tree >> e & 1)) continue;
            const auto& ed = g.edge(e);
            int w = ed.u == v ? ed.v : ed.v == v ? ed.u : -1;
            if (w < 0 || prev[w] >= 0) continue;
            prev[w] = v;
            via[w] = e;
            queue.push_back(w);
        }
    }
    if (prev[dst] < 0) throw graph_error("cyc: tree does not span");
    TreeMask result = TreeMask(1) << f;
    for (int v = dst; v != src; v = prev[v]) result |= TreeMask(1) << via[v];
    return result;
}

// Activity of every edge with respect to T: live = lowest edge of its cut
// (tree edges) or cycle (non-tree edges).
inline ActivityWord activity_word(const SignedPlanarGraph& g, TreeMask tree) {
    ActivityWord w(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        bool in_tree = tree >> e & 1;
        TreeMask set = in_tree ? cut(g, tree, e) : cyc(g, tree, e);
        bool live = std::countr_zero(set) == e;
        bool neg = g.edge(e).sign < 0;
        Letter x;
        if (in_tree)
            x = live ? (neg ? Letter::Lb : Letter::L) : (neg ? Letter::Db : Letter::D);
        else
            x = live ? (neg ? Letter::lb : Letter::l) : (neg ? Letter::db : Letter::d);
        w[e] = x;
    }
    return w;
}

// mu(T) = (-1)^{p+r+x+z} A^{-3p+q+3r-s+3x-y-3z+w} for letter counts
// L^p D^q l^r d^s Lb^x Db^y lb^z db^w.
inline Laurent thistlethwaite_monomial(const ActivityWord& word) {
    int cnt[8] = {0};
    for (Letter x : word) ++cnt[static_cast<int>(x)];
    int p = cnt[0], q = cnt[1], r = cnt[2], s = cnt[3];
    int x = cnt[4], y = cnt[5], z = cnt[6], w = cnt[7];
    int sign = ((p + r + x + z) % 2 == 0) ? 1 : -1;
    int exp = -3 * p + q + 3 * r - s + 3 * x - y - 3 * z + w;
    return Laurent::monomial(sign, exp);
}

// <D> = sum over spanning trees of mu(T).
inline Laurent bracket_by_trees(const SignedPlanarGraph& g) {
    Laurent total;
    for (TreeMask t : enumerate_trees(g)) total += thistlethwaite_monomial(activity_word(g, t));
    return total;
}

inline int grading_u(const ActivityWord& w) {
    int u = 0;
    for (Letter x : w) {
        if (x == Letter::L) ++u;
        else if (x == Letter::l) --u;
        else if (x == Letter::Lb) --u;
        else if (x == Letter::lb) ++u;
    }
    return u;
}

inline int grading_v(const ActivityWord& w) {
    int v = 0;
    for (Letter x : w)
        if (x == Letter::L || x == Letter::D) ++v;
    return v;
}

// Partial smoothing: '*' at live positions, A/B at dead positions
// (D->A, d->B, Db->B, db->A).
inline std::string partial_smoothing(const ActivityWord& w) {
    std::string s;
    for (Letter x : w) {
        if (letter_live(x)) {
            s += '*';
        } else {
            bool a = (x == Letter::D || x == Letter::db);
            s += a ? 'A' : 'B';
        }
    }
    return s;
}

// Full marker state of the maximally disconnected state of U(T):
// L->B, D->A, l->A, d->B, Lb->A, Db->B, lb->B, db->A.
inline std::vector<Marker> tree_markers(const ActivityWord& w) {
    std::vector<Marker> m;
    m.reserve(w.size());
    for (Letter x : w) {
        bool a = (x == Letter::D || x == Letter::l || x == Letter::Lb || x == Letter::db);
        m.push_back(a ? Marker::A : Marker::B);
    }
    return m;
}

// sigma of a fully smoothed state: #A - #B.  Errors on '*'.
inline int sigma(const std::string& smoothing) {
    int s = 0;
    for (char ch : smoothing) {
        if (ch == 'A') ++s;
        else if (ch == 'B') --s;
        else throw graph_error("sigma: unresolved live position");
    }
    return s;
}

// Jones polynomial of a diagram in q = A^-2 (t = q^2), via the spanning
// tree expansion of a Tait graph under the canonical coloring.
inline Laurent jones_q(const Diagram& d) {
    Laurent bracket = bracket_by_trees(tait_graph(d, canonical_coloring(d)));
    return jones_q_from_bracket(bracket, d.writhe());
}

}  // namespace stkh
