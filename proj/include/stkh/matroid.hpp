#pragma once

#include <optional>
#include <set>

#include "stkh/collapse.hpp"
#include "stkh/spectral.hpp"

namespace stkh {

// Colored graphic matroid of a signed planar graph: ground set = edge
// positions colored by signs, bases = spanning trees.
struct ColoredMatroid {
    int n = 0;                    // ground set size
    std::vector<int> color;       // +1 / -1 per element
    std::vector<TreeMask> bases;  // sorted element subsets
    int rank = 0;                 // common basis cardinality
};

inline ColoredMatroid colored_matroid(const SignedPlanarGraph& g) {
    ColoredMatroid m;
    m.n = g.edge_count();
    for (const auto& e : g.edges()) m.color.push_back(e.sign);
    m.bases = enumerate_trees(g);
    m.rank = g.vertex_count() - 1;
    for (TreeMask b : m.bases)
        if (std::popcount(b) != m.rank) throw graph_error("bases of unequal cardinality");
    return m;
}

// Basis exchange axiom on up to `max_pairs` ordered basis pairs: for every
// e in B1 \ B2 some f in B2 \ B1 has B1 - e + f a basis.
inline bool basis_exchange_ok(const ColoredMatroid& m, long max_pairs = 2000) {
    std::set<TreeMask> basis_set(m.bases.begin(), m.bases.end());
    long seen = 0;
    for (TreeMask b1 : m.bases)
        for (TreeMask b2 : m.bases) {
            if (b1 == b2) continue;
            if (++seen > max_pairs) return true;
            TreeMask only1 = b1 & ~b2, only2 = b2 & ~b1;
            for (int e = 0; e < m.n; ++e) {
                if (!(only1 >> e & 1)) continue;
                bool found = false;
                for (int f = 0; f < m.n && !found; ++f)
                    if ((only2 >> f & 1) &&
                        basis_set.count((b1 & ~(TreeMask(1) << e)) | (TreeMask(1) << f)))
                        found = true;
                if (!found) return false;
            }
        }
    return true;
}

// --- flip moves -----------------------------------------------------------
//
// Whitney's 2-isomorphism moves on a connected plane graph.  The vertex
// moves come in pairs: a vertex splitting produces a disconnected graph,
// which only becomes representable again after the matching vertex
// identification, so both kinds carry the full composite (1-flip) data and
// apply identically; the kind records which half the move emphasises.
struct FlipMove {
    enum class Kind { vertex_identification, vertex_splitting, two_flip };
    Kind kind = Kind::two_flip;
    // 1-flip: split vertex v along its rotation arc [pos, pos+len) (that
    // side must meet the rest of the graph only at v), then identify the
    // split-off vertex with u, splicing the arc before rotation entry upos.
    // 2-flip: u, v are the separation pair and `side` names the edges of
    // the part rotated about the u-v axis.
    int v = -1;
    int pos = 0, len = 0;
    int u = -1;
    int upos = 0;
    uint64_t side = 0;
};

namespace detail {

inline SignedPlanarGraph apply_one_flip(const SignedPlanarGraph& g, const FlipMove& m) {
    int nv = g.vertex_count();
    if (m.v < 0 || m.v >= nv || m.u < 0 || m.u >= nv) throw graph_error("flip vertex out of range");
    const auto& rv = g.rotation()[m.v];
    int deg = static_cast<int>(rv.size());
    if (m.len <= 0 || m.len >= deg || m.pos < 0 || m.pos >= deg)
        throw graph_error("flip rotation arc is not a proper arc");
    // The detached side: edge ends at positions pos .. pos+len-1 (cyclic).
    std::vector<EdgeEnd> arc;
    for (int k = 0; k < m.len; ++k) arc.push_back(rv[(m.pos + k) % deg]);
    // Grow the side: every vertex reachable from the arc without passing
    // through v.  For a valid splitting it must come back to v only.
    std::vector<char> side_vert(nv, 0), side_edge(g.edge_count(), 0);
    std::vector<int> stack;
    for (auto [e, end] : arc) {
        side_edge[e] = 1;
        int w = g.endpoint(e, 1 - end);
        if (w != m.v && !side_vert[w]) {
            side_vert[w] = 1;
            stack.push_back(w);
        }
    }
    while (!stack.empty()) {
        int w = stack.back();
        stack.pop_back();
        for (auto [e, end] : g.rotation()[w]) {
            side_edge[e] = 1;
            int x = g.endpoint(e, 1 - end);
            if (x != m.v && !side_vert[x]) {
                side_vert[x] = 1;
                stack.push_back(x);
            }
        }
    }
    // Every side edge end at v must lie inside the named arc, otherwise v
    // does not cut the side off along this arc.
    std::vector<char> in_arc(deg, 0);
    for (int k = 0; k < m.len; ++k) in_arc[(m.pos + k) % deg] = 1;
    for (int p = 0; p < deg; ++p)
        if (side_edge[rv[p].edge] != in_arc[p])
            throw graph_error("vertex splitting needs a cut vertex separating the arc");
    if (m.u != m.v && side_vert[m.u])
        throw graph_error("identification vertex must lie outside the split-off side");
    if (m.u == m.v) return g;

    // Move the arc's edge ends from v to u.
    auto edges = g.edges();
    for (auto [e, end] : arc) {
        if (end == 0) edges[e].u = m.u;
        else edges[e].v = m.u;
    }
    auto rot = g.rotation();
    std::vector<EdgeEnd> keep;
    for (int p = 0; p < deg; ++p)
        if (!in_arc[p]) keep.push_back(rv[p]);
    rot[m.v] = keep;
    auto& ru = rot[m.u];
    int upos = m.upos;
    if (upos < 0 || upos > static_cast<int>(ru.size()))
        throw graph_error("flip insertion position out of range");
    ru.insert(ru.begin() + upos, arc.begin(), arc.end());
    SignedPlanarGraph out(nv, std::move(edges), std::move(rot));
    if (g.has_outer_mark() && g.outer_corner().vertex != m.v && g.outer_corner().vertex != m.u)
        out.set_outer_corner(g.outer_corner().vertex, g.outer_corner().pos);
    return out;
}

inline SignedPlanarGraph apply_two_flip(const SignedPlanarGraph& g, const FlipMove& m) {
    int nv = g.vertex_count();
    if (m.u < 0 || m.u >= nv || m.v < 0 || m.v >= nv || m.u == m.v)
        throw graph_error("2-flip needs two distinct separation vertices");
    if (m.side == 0 || m.side == (uint64_t(1) << g.edge_count()) - 1)
        throw graph_error("2-flip side must be a proper nonempty edge set");
    // Side closure: internal vertices of the side may meet side edges only.
    std::vector<char> internal(nv, 0);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!(m.side >> e & 1)) continue;
        for (int end = 0; end < 2; ++end) {
            int w = g.endpoint(e, end);
            if (w != m.u && w != m.v) internal[w] = 1;
        }
    }
    for (int w = 0; w < nv; ++w)
        if (internal[w])
            for (auto [e, end] : g.rotation()[w])
                if (!(m.side >> e & 1))
                    throw graph_error("named edge set is not closed off by the separation pair");
    bool touches_u = false, touches_v = false;
    for (int e = 0; e < g.edge_count(); ++e)
        if (m.side >> e & 1) {
            if (g.edge(e).u == m.u || g.edge(e).v == m.u) touches_u = true;
            if (g.edge(e).u == m.v || g.edge(e).v == m.v) touches_v = true;
        }
    if (!touches_u || !touches_v)
        throw graph_error("2-flip side must reach both separation vertices");

    // Swap the side's attachments: ends at u move to v and vice versa.
    auto edges = g.edges();
    for (int e = 0; e < g.edge_count(); ++e) {
        if (!(m.side >> e & 1)) continue;
        auto swap_end = [&](int& w) { w = (w == m.u) ? m.v : (w == m.v) ? m.u : w; };
        swap_end(edges[e].u);
        swap_end(edges[e].v);
    }
    // Embedding: the side is rotated about the in-plane u-v axis, which
    // mirrors it.  Internal rotations reverse; at u and v the side's darts
    // must form one rotation arc, and the arcs are exchanged reversed.
    auto rot = g.rotation();
    for (int w = 0; w < nv; ++w)
        if (internal[w]) std::reverse(rot[w].begin(), rot[w].end());
    auto split_arc = [&](int w) {
        const auto& r = g.rotation()[w];
        int deg = static_cast<int>(r.size());
        int start = -1;
        for (int p = 0; p < deg; ++p) {
            bool in = m.side >> r[p].edge & 1;
            bool prev_in = m.side >> r[(p + deg - 1) % deg].edge & 1;
            if (in && !prev_in) {
                if (start >= 0) throw graph_error("2-flip side darts are interleaved at " +
                                                  std::to_string(w + 1));
                start = p;
            }
        }
        if (start < 0) throw graph_error("2-flip side darts are interleaved at " +
                                         std::to_string(w + 1));
        std::vector<EdgeEnd> arc, rest;
        for (int k = 0; k < deg; ++k) {
            const auto& ee = r[(start + k) % deg];
            (m.side >> ee.edge & 1 ? arc : rest).push_back(ee);
        }
        for (size_t k = 0; k + static_cast<int>(arc.size()) < static_cast<size_t>(deg); ++k)
            if (m.side >> r[(start + arc.size() + k) % deg].edge & 1)
                throw graph_error("2-flip side darts are interleaved at " +
                                  std::to_string(w + 1));
        return std::pair{arc, rest};
    };
    auto [arc_u, rest_u] = split_arc(m.u);
    auto [arc_v, rest_v] = split_arc(m.v);
    std::reverse(arc_u.begin(), arc_u.end());
    std::reverse(arc_v.begin(), arc_v.end());
    rot[m.u] = rest_u;
    rot[m.u].insert(rot[m.u].end(), arc_v.begin(), arc_v.end());
    rot[m.v] = rest_v;
    rot[m.v].insert(rot[m.v].end(), arc_u.begin(), arc_u.end());
    SignedPlanarGraph out(nv, std::move(edges), std::move(rot));
    if (g.has_outer_mark()) {
        auto [ow, op] = g.outer_corner();
        if (!internal[ow] && ow != m.u && ow != m.v &&
            op < static_cast<int>(out.rotation()[ow].size()))
            out.set_outer_corner(ow, op);
    }
    return out;
}

}  // namespace detail

// Applies a flip move; the colored matroid is asserted unchanged (edge
// positions keep their identity, so the basis families must be equal).
inline SignedPlanarGraph apply_flip(const SignedPlanarGraph& g, const FlipMove& m) {
    SignedPlanarGraph out = m.kind == FlipMove::Kind::two_flip ? detail::apply_two_flip(g, m)
                                                               : detail::apply_one_flip(g, m);
    if (enumerate_trees(out) != enumerate_trees(g))
        throw graph_error("flip move changed the colored matroid");
    for (int e = 0; e < g.edge_count(); ++e)
        if (out.edge(e).sign != g.edge(e).sign)
            throw graph_error("flip move changed an edge sign");
    return out;
}

// --- matroid isomorphism --------------------------------------------------

// Color-preserving ground set bijection carrying bases to bases; perm[i] is
// the image of element i.
struct GroundSetBijection {
    std::vector<int> perm;
};

// Exact backtracking search for a colored matroid isomorphism, pruned by
// color, per-element basis-membership degree, and pairwise co-basis counts
// against already-assigned elements.  Elements are tried in ground-set
// order with ascending candidates, so the lexicographically least witness
// is returned.
inline std::optional<GroundSetBijection> matroid_isomorphic(const ColoredMatroid& a,
                                                            const ColoredMatroid& b) {
    if (a.n != b.n || a.rank != b.rank || a.bases.size() != b.bases.size()) return std::nullopt;
    int n = a.n;
    auto degrees = [n](const ColoredMatroid& m) {
        std::vector<long> deg(n, 0);
        for (TreeMask t : m.bases)
            for (int e = 0; e < n; ++e)
                if (t >> e & 1) ++deg[e];
        return deg;
    };
    auto co_counts = [n](const ColoredMatroid& m) {
        std::vector<std::vector<long>> co(n, std::vector<long>(n, 0));
        for (TreeMask t : m.bases)
            for (int e = 0; e < n; ++e)
                if (t >> e & 1)
                    for (int f = 0; f < n; ++f)
                        if (t >> f & 1) ++co[e][f];
        return co;
    };
    auto deg_a = degrees(a), deg_b = degrees(b);
    auto co_a = co_counts(a), co_b = co_counts(b);
    std::set<TreeMask> bases_b(b.bases.begin(), b.bases.end());

    std::vector<int> perm(n, -1), used(n, 0);
    auto extend = [&](auto&& self, int e) -> bool {
        if (e == n) {
            for (TreeMask t : a.bases) {
                TreeMask img = 0;
                for (int k = 0; k < n; ++k)
                    if (t >> k & 1) img |= TreeMask(1) << perm[k];
                if (!bases_b.count(img)) return false;
            }
            return true;
        }
        for (int f = 0; f < n; ++f) {
            if (used[f] || a.color[e] != b.color[f] || deg_a[e] != deg_b[f]) continue;
            bool ok = true;
            for (int k = 0; k < e && ok; ++k)
                if (co_a[e][k] != co_b[f][perm[k]]) ok = false;
            if (!ok) continue;
            perm[e] = f;
            used[f] = 1;
            if (self(self, e + 1)) return true;
            perm[e] = -1;
            used[f] = 0;
        }
        return false;
    };
    if (!extend(extend, 0)) return std::nullopt;
    return GroundSetBijection{perm};
}

// --- mutation detection ---------------------------------------------------

struct MutantReport {
    bool mutants = false;
    std::optional<GroundSetBijection> witness;
};

inline MutantReport are_mutants(const SignedPlanarGraph& g1, const SignedPlanarGraph& g2) {
    MutantReport r;
    r.witness = matroid_isomorphic(colored_matroid(g1), colored_matroid(g2));
    r.mutants = r.witness.has_value();
    return r;
}

// Diagrams are compared through the Tait graphs of their canonical
// checkerboard colorings (the same coloring rule on both sides).
inline MutantReport are_mutants(const Diagram& d1, const Diagram& d2) {
    return are_mutants(tait_graph(d1, canonical_coloring(d1)),
                       tait_graph(d2, canonical_coloring(d2)));
}

// --- E2 comparison --------------------------------------------------------

struct E2Report {
    bool mutants = false;
    std::optional<GroundSetBijection> witness;
    std::map<PageKey, AbelianGroup> e2_1, e2_2;
    bool equal = false;
};

namespace detail {

inline std::map<PageKey, AbelianGroup> integral_e2(const SignedPlanarGraph& g) {
    TreeContext ctx = TreeContext::from_graph(g);
    return SpectralSequence(ctx, true).page(2).groups;
}

}  // namespace detail

// Computes both integral E2 terms and reports bidegree-wise equality.  When
// a matroid isomorphism exists, the edge order of the first graph is
// transported to the second along the witness first, so that both
// filtrations are built over matched activity words.
inline E2Report compare_E2(const SignedPlanarGraph& g1, const SignedPlanarGraph& g2) {
    E2Report r;
    r.witness = matroid_isomorphic(colored_matroid(g1), colored_matroid(g2));
    r.mutants = r.witness.has_value();
    r.e2_1 = detail::integral_e2(g1);
    r.e2_2 = detail::integral_e2(r.witness ? g2.with_edge_order(r.witness->perm) : g2);
    r.equal = r.e2_1 == r.e2_2;
    return r;
}

inline E2Report compare_E2(const Diagram& d1, const Diagram& d2) {
    return compare_E2(tait_graph(d1, canonical_coloring(d1)),
                      tait_graph(d2, canonical_coloring(d2)));
}

// --- conjecture probe -----------------------------------------------------

// Entrywise comparison of the induced tree-complex differentials of two
// mutant diagrams, with trees matched across the diagrams by identical
// activity words (after transporting the edge order along the witness).
struct ProbeEntry {
    std::string from_word, to_word;
    Int v1 = 0, v2 = 0;
};

struct ProbeReport {
    GroundSetBijection witness;
    long pairs_compared = 0;
    long agreements = 0;           // matched pairs with equal entries
    long nonzero_agreements = 0;   // ... both entries nonzero
    std::vector<ProbeEntry> disagreements;
    std::vector<std::string> unmatched1, unmatched2;  // words without a unique partner
};

inline ProbeReport conjecture_probe(const SignedPlanarGraph& g1, const SignedPlanarGraph& g2) {
    auto witness = matroid_isomorphic(colored_matroid(g1), colored_matroid(g2));
    if (!witness) throw graph_error("conjecture probe needs matroid-isomorphic inputs");
    ProbeReport r;
    r.witness = *witness;
    TreeContext ctx1 = TreeContext::from_graph(g1);
    TreeContext ctx2 = TreeContext::from_graph(g2.with_edge_order(witness->perm));
    TreeComplexData tc1 = collapse_to_tree_complex(ctx1, true);
    TreeComplexData tc2 = collapse_to_tree_complex(ctx2, true);

    // Match trees by identical activity words; duplicated words on either
    // side are reported unmatched (the pairing would be ambiguous).
    auto by_word = [](const TreeContext& ctx) {
        std::map<std::string, std::vector<int>> m;
        for (int t = 0; t < ctx.tree_count(); ++t) m[word_str(ctx.words[t])].push_back(t);
        return m;
    };
    auto w1 = by_word(ctx1), w2 = by_word(ctx2);
    std::vector<std::pair<int, int>> matched;  // (tree in ctx1, tree in ctx2)
    for (const auto& [word, ts] : w1) {
        auto it = w2.find(word);
        if (ts.size() == 1 && it != w2.end() && it->second.size() == 1)
            matched.push_back({ts[0], it->second[0]});
        else
            for (size_t k = 0; k < ts.size(); ++k) r.unmatched1.push_back(word);
    }
    for (const auto& [word, ts] : w2) {
        auto it = w1.find(word);
        if (it == w1.end() || it->second.size() != 1 || ts.size() != 1)
            for (size_t k = 0; k < ts.size(); ++k) r.unmatched2.push_back(word);
    }

    auto gen_of_tree = [](const TreeComplexData& tc, int trees) {
        std::vector<int> g(trees, -1);
        for (int k = 0; k < static_cast<int>(tc.gens.size()); ++k) g[tc.gens[k].tree] = k;
        return g;
    };
    auto got1 = gen_of_tree(tc1, ctx1.tree_count());
    auto got2 = gen_of_tree(tc2, ctx2.tree_count());
    for (const auto& [a1, a2] : matched)
        for (const auto& [b1, b2] : matched) {
            if (a1 == b1) continue;
            Int v1 = tc1.entry(got1[a1], got1[b1]);
            Int v2 = tc2.entry(got2[a2], got2[b2]);
            ++r.pairs_compared;
            if (v1 == v2) {
                ++r.agreements;
                if (v1 != 0) ++r.nonzero_agreements;
            } else {
                r.disagreements.push_back(
                    {word_str(ctx1.words[a1]), word_str(ctx1.words[b1]), v1, v2});
            }
        }
    return r;
}

inline ProbeReport conjecture_probe(const Diagram& d1, const Diagram& d2) {
    return conjecture_probe(tait_graph(d1, canonical_coloring(d1)),
                            tait_graph(d2, canonical_coloring(d2)));
}

}  // namespace stkh
