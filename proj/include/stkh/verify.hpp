#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "stkh/bracket.hpp"
#include "stkh/collapse.hpp"
#include "stkh/matroid.hpp"
#include "stkh/random_graphs.hpp"
#include "stkh/spectral.hpp"

namespace stkh {

struct CriterionResult {
    std::string name;
    bool pass = false;
    double millis = 0;
    std::vector<std::string> notes;
};

struct VerifyReport {
    std::vector<CriterionResult> results;
    bool all_pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        return true;
    }
};

namespace verify_detail {

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    if (!f) throw std::runtime_error("cannot open fixture " + p.string());
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

struct Fixtures {
    // name -> Tait graph (only knot-diagram fixtures are stored).
    std::vector<std::pair<std::string, SignedPlanarGraph>> graphs;
    std::vector<std::pair<std::string, Diagram>> diagrams;  // from .pd files

    const SignedPlanarGraph& graph(const std::string& name) const {
        for (const auto& [n, g] : graphs)
            if (n == name) return g;
        throw std::runtime_error("missing fixture " + name + ".graph");
    }
};

inline Fixtures load_fixtures(const std::string& dir) {
    Fixtures fx;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
        if (p.extension() == ".graph")
            fx.graphs.push_back({p.stem().string(), parse_graph(slurp(p))});
        else if (p.extension() == ".pd")
            fx.diagrams.push_back({p.stem().string(), parse_pd(slurp(p))});
    }
    if (fx.graphs.empty()) throw std::runtime_error("no .graph fixtures in " + dir);
    return fx;
}

// 2-separations of g realizing a nontrivial 2-flip, used by the
// flip-invariance property.
inline std::vector<std::pair<FlipMove, SignedPlanarGraph>> two_flips(const SignedPlanarGraph& g,
                                                                     size_t max_out = 2) {
    std::vector<std::pair<FlipMove, SignedPlanarGraph>> out;
    int nv = g.vertex_count();
    for (int u = 0; u < nv && out.size() < max_out; ++u)
        for (int v = u + 1; v < nv && out.size() < max_out; ++v) {
            std::vector<int> comp(nv, -1);
            int nc = 0;
            for (int s = 0; s < nv; ++s) {
                if (s == u || s == v || comp[s] >= 0) continue;
                std::vector<int> st = {s};
                comp[s] = nc;
                while (!st.empty()) {
                    int w = st.back();
                    st.pop_back();
                    for (auto [e, end] : g.rotation()[w]) {
                        int x = g.endpoint(e, 1 - end);
                        if (x != u && x != v && comp[x] < 0) {
                            comp[x] = nc;
                            st.push_back(x);
                        }
                    }
                }
                ++nc;
            }
            for (int pick = 0; pick < nc && out.size() < max_out; ++pick) {
                FlipMove m;
                m.kind = FlipMove::Kind::two_flip;
                m.u = u;
                m.v = v;
                for (int e = 0; e < g.edge_count(); ++e) {
                    int a = g.edge(e).u, b = g.edge(e).v;
                    if ((a != u && a != v && comp[a] == pick) ||
                        (b != u && b != v && comp[b] == pick))
                        m.side |= uint64_t(1) << e;
                }
                if (m.side == 0) continue;
                try {
                    out.push_back({m, apply_flip(g, m)});
                } catch (const graph_error&) {
                }
            }
        }
    return out;
}

inline Laurent laurent_from(std::initializer_list<std::pair<int, int>> terms) {
    Laurent p;
    for (auto [e, c] : terms) p.add_term(e, c);
    return p;
}

template <class F>
inline CriterionResult timed(const std::string& name, F&& body) {
    using Clock = std::chrono::steady_clock;
    CriterionResult r;
    r.name = name;
    auto t0 = Clock::now();
    try {
        r.pass = true;
        body(r);
    } catch (const std::exception& e) {
        r.pass = false;
        r.notes.push_back(std::string("exception: ") + e.what());
    }
    r.millis = std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(
                   Clock::now() - t0)
                   .count();
    return r;
}

inline void fail(CriterionResult& r, const std::string& note) {
    r.pass = false;
    r.notes.push_back(note);
}

// Fixture Tait graphs with at most `max_edges` edges whose medial is a knot.
inline std::vector<std::pair<std::string, SignedPlanarGraph>> knot_graphs(const Fixtures& fx,
                                                                          int max_edges) {
    std::vector<std::pair<std::string, SignedPlanarGraph>> out;
    for (const auto& [name, g] : fx.graphs)
        if (g.edge_count() <= max_edges && medial(g).component_count() == 1)
            out.push_back({name, g});
    return out;
}

}  // namespace verify_detail

// Criterion 1: the Figure 1 worked example of the figure-eight knot.
inline CriterionResult verify_figure8(const verify_detail::Fixtures& fx) {
    using namespace verify_detail;
    return timed("figure8", [&](CriterionResult& r) {
        const SignedPlanarGraph& g = fx.graph("figure8");
        auto trees = enumerate_trees(g);
        if (trees.size() != 5) fail(r, "expected 5 spanning trees");
        std::map<std::string, Laurent> expect = {
            {"LLdd", Laurent::monomial(1, -8)},  {"LdDd", Laurent::monomial(-1, -4)},
            {"ℓDDd", Laurent::monomial(-1, 4)},  {"ℓLdD", Laurent::one()},
            {"ℓℓDD", Laurent::monomial(1, 8)},
        };
        std::map<std::string, Laurent> got;
        for (TreeMask t : trees) {
            ActivityWord w = activity_word(g, t);
            got[word_str(w)] = thistlethwaite_monomial(w);
        }
        if (got != expect) fail(r, "activity words or Thistlethwaite weights differ from Figure 1");
        Laurent bracket = bracket_by_trees(g);
        if (bracket != laurent_from({{-8, 1}, {-4, -1}, {0, 1}, {4, -1}, {8, 1}}))
            fail(r, "bracket differs from A^-8 - A^-4 + 1 - A^4 + A^8");
        Diagram d = medial(g);
        if (d.writhe() != 0) fail(r, "writhe of the figure-8 diagram is not 0");
        // V(t) = t^-2 - t^-1 + 1 - t + t^2, in q with t = q^2.
        if (jones_q(d) != laurent_from({{-4, 1}, {-2, -1}, {0, 1}, {2, -1}, {4, 1}}))
            fail(r, "Jones polynomial differs from Figure 1");
        r.notes.push_back("5 trees, bracket and V(t) match Figure 1");
    });
}

// Criterion 2: the section 2.4 filtration example of the figure-eight knot.
inline CriterionResult verify_filtration(const verify_detail::Fixtures& fx) {
    using namespace verify_detail;
    return timed("filtration", [&](CriterionResult& r) {
        TreeContext ctx = TreeContext::from_graph(fx.graph("figure8"));
        if (ctx.tree_count() != 5) {
            fail(r, "expected 5 trees");
            return;
        }
        // Paper indices T1..T5 resolved through the activity words.
        std::map<std::string, int> idx;
        for (int t = 0; t < 5; ++t) idx[word_str(ctx.words[t])] = t;
        std::vector<std::string> paper_words = {"LLdd", "LdDd", "ℓDDd", "ℓLdD", "ℓℓDD"};
        std::vector<int> T(6, -1);
        for (int k = 1; k <= 5; ++k) {
            auto it = idx.find(paper_words[k - 1]);
            if (it == idx.end()) {
                fail(r, "missing activity word " + paper_words[k - 1]);
                return;
            }
            T[k] = it->second;
        }
        std::vector<std::string> expect_sm = {"**BB", "*BAB", "*AAB", "**BA", "**AA"};
        for (int k = 1; k <= 5; ++k)
            if (ctx.smoothings[T[k]] != expect_sm[k - 1])
                fail(r, "partial smoothing of T" + std::to_string(k) + " is not " +
                            expect_sm[k - 1]);
        // Comparabilities: exactly the closure of T5>T3>T2>T1 and T5>T4>T1.
        std::set<std::pair<int, int>> expect_rel = {{5, 3}, {5, 2}, {5, 1}, {5, 4},
                                                    {3, 2}, {3, 1}, {2, 1}, {4, 1}};
        for (int a = 1; a <= 5; ++a)
            for (int b = 1; b <= 5; ++b) {
                bool got = ctx.poset.greater[T[a]][T[b]];
                bool want = expect_rel.count({a, b}) > 0;
                if (got != want)
                    fail(r, "poset relation T" + std::to_string(a) + ">T" + std::to_string(b) +
                                (want ? " missing" : " unexpected"));
            }
        // Levels 1..4: F1 = psi(T5), F2 = psi(T3)+psi(T4), F3 = psi(T2),
        // F4 = psi(T1).
        std::vector<int> want_level = {0, 4, 3, 2, 2, 1};  // level of T[k]
        for (int k = 1; k <= 5; ++k)
            if (ctx.poset.level[T[k]] != want_level[k])
                fail(r, "level of T" + std::to_string(k) + " is " +
                            std::to_string(ctx.poset.level[T[k]]) + ", expected " +
                            std::to_string(want_level[k]));
        if (ctx.poset.depth != 4) fail(r, "filtration depth is not 4");
        r.notes.push_back("chains T5>T3>T2>T1, T5>T4>T1 and F^1..F^4 match section 2.4");
    });
}

// Criterion 3: bracket_by_trees equals the full state-sum bracket.
inline CriterionResult verify_thistlethwaite(const verify_detail::Fixtures& fx, unsigned seed) {
    using namespace verify_detail;
    return timed("thistlethwaite", [&](CriterionResult& r) {
        std::mt19937 rng(seed);
        int checked = 0;
        for (int k = 0; k < 200; ++k) {
            SignedPlanarGraph g = random_planar_graph(rng, 2 + static_cast<int>(rng() % 9));
            if (bracket_by_trees(g) != state_sum_bracket(medial(g))) {
                fail(r, "tree bracket != state sum on random graph " + std::to_string(k));
                return;
            }
            ++checked;
        }
        int alternating_checked = 0;
        for (const auto& [name, g] : fx.graphs) {
            if (g.edge_count() > 10) continue;
            if (bracket_by_trees(g) != state_sum_bracket(medial(g))) {
                fail(r, "tree bracket != state sum on fixture " + name);
                return;
            }
            ++checked;
            // Alternating (all-same-sign) Tait graphs: no cancellation, so
            // the tree count is the L1 norm of the bracket.
            int pos = g.positive_edges();
            if (pos == 0 || pos == g.edge_count()) {
                if (Int(enumerate_trees(g).size()) != bracket_by_trees(g).l1_norm()) {
                    fail(r, "tree count != bracket L1 norm on alternating fixture " + name);
                    return;
                }
                ++alternating_checked;
            }
        }
        r.notes.push_back("Theorem 2.1 exact on 200 random graphs + " +
                          std::to_string(checked - 200) + " fixtures (" +
                          std::to_string(alternating_checked) + " alternating L1 checks)");
    });
}

// Criterion 4: bigraded Euler characteristics against the Jones polynomial.
inline CriterionResult verify_euler(const verify_detail::Fixtures& fx) {
    using namespace verify_detail;
    return timed("euler", [&](CriterionResult& r) {
        int checked = 0;
        for (const auto& [name, g] : knot_graphs(fx, 10)) {
            Diagram d = medial(g);
            Laurent v = jones_q(d);  // V(q^2) as a polynomial in q
            Laurent chi_u = euler_characteristic(khovanov_homology(d, false));
            Laurent chi_r = euler_characteristic(khovanov_homology(d, true));
            if (chi_u != laurent_from({{1, 1}, {-1, 1}}) * v)
                fail(r, "unreduced chi != (q+1/q) V(q^2) on " + name);
            if (chi_r != Laurent::monomial(1, -1) * v)
                fail(r, "reduced chi != q^-1 V(q^2) on " + name);
            ++checked;
        }
        // Round unknot anchors.
        Diagram o = Diagram::round_unknot();
        if (euler_characteristic(khovanov_homology(o, false)) != laurent_from({{1, 1}, {-1, 1}}))
            fail(r, "unreduced unknot chi != q + 1/q");
        if (euler_characteristic(khovanov_homology(o, true)) != Laurent::monomial(1, -1))
            fail(r, "reduced unknot chi != q^-1");
        r.notes.push_back("Euler characteristic identity on " + std::to_string(checked) +
                          " fixture knots + unknot");
    });
}

// Criterion 5: Theorem 2.3 -- direct incidence iff word patterns.
inline CriterionResult verify_incidence(unsigned seed) {
    using namespace verify_detail;
    return timed("incidence", [&](CriterionResult& r) {
        std::mt19937 rng(seed);
        long pairs = 0, incident = 0;
        for (int accepted = 0; accepted < 100;) {
            SignedPlanarGraph g = random_planar_graph(rng, 4 + static_cast<int>(rng() % 5));
            int pos = g.positive_edges();
            if (pos == 0 || pos == g.edge_count()) continue;  // mixed signs only
            if (medial(g).component_count() != 1) continue;
            ++accepted;
            TreeContext ctx = TreeContext::from_graph(g);
            KhovanovComplex kc(ctx.d, true, /*with_basis=*/false);
            int n = ctx.tree_count();
            std::vector<FundamentalCycle> z;
            for (int t = 0; t < n; ++t) z.push_back(ctx.cycle(t, true));
            // Exhaustive on small graphs, (u,v)-prefiltered above 6 edges
            // (every Theorem 2.3 pattern shifts (u,v) by (-1,-1)).
            bool exhaustive = g.edge_count() <= 6;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    if (a == b) continue;
                    bool cd = classify_direct(ctx.words[a], ctx.words[b]);
                    bool right_deg = ctx.grading_u_of(b) == ctx.grading_u_of(a) - 1 &&
                                     ctx.grading_v_of(b) == ctx.grading_v_of(a) - 1;
                    if (!exhaustive && !cd && !right_deg) continue;
                    Int di = direct_incidence(kc, z[a], z[b], ctx.words[b]);
                    ++pairs;
                    if ((di != 0) != cd) {
                        fail(r, "direct_incidence vs classify_direct mismatch: " +
                                    word_str(ctx.words[a]) + " -> " + word_str(ctx.words[b]));
                        return;
                    }
                    if (di != 0 && (di < -1 || di > 1)) {
                        fail(r, "direct incidence not in {-1,0,1}");
                        return;
                    }
                    if (cd) {
                        ++incident;
                        // Structural claim: T2 = (T1 \ e) u f, e positive
                        // tree edge, f negative non-tree edge, f in cut(T1,e).
                        TreeMask t1 = ctx.trees[a], t2 = ctx.trees[b];
                        TreeMask lost = t1 & ~t2, gained = t2 & ~t1;
                        if (std::popcount(lost) != 1 || std::popcount(gained) != 1) {
                            fail(r, "incident pair is not a single edge exchange");
                            return;
                        }
                        int e = std::countr_zero(lost), f = std::countr_zero(gained);
                        if (g.edge(e).sign <= 0 || g.edge(f).sign >= 0 ||
                            !(cut(g, t1, e) >> f & 1)) {
                            fail(r, "incident exchange lacks the e-positive/f-negative "
                                    "cut structure");
                            return;
                        }
                    }
                }
        }
        r.notes.push_back("Theorem 2.3 equivalence on " + std::to_string(pairs) +
                          " tree pairs (" + std::to_string(incident) + " incident)");
    });
}

// Criterion 6: Theorem 2.2 / Lemma 2.4 -- the collapsed tree complex.
inline CriterionResult verify_collapse(const verify_detail::Fixtures& fx) {
    using namespace verify_detail;
    return timed("collapse", [&](CriterionResult& r) {
        int checked = 0;
        for (const auto& [name, g] : knot_graphs(fx, 10)) {
            TreeContext ctx = TreeContext::from_graph(g);
            KhovanovComplex kc(ctx.d, true);
            TreeComplexData tc = collapse_to_tree_complex(ctx, true);
            if (tc.homology() != kc.homology()) {
                fail(r, "reduced tree-complex homology differs on " + name);
                return;
            }
            if (g.edge_count() <= 8) {
                KhovanovComplex ku(ctx.d, false);
                TreeComplexData tu = collapse_to_tree_complex(ctx, false);
                if (tu.homology() != ku.homology()) {
                    fail(r, "unreduced tree-complex homology differs on " + name);
                    return;
                }
            }
            // Lemma 2.4: nonzero direct incidences equal the induced
            // differential entries.
            std::vector<int> gen_of(ctx.tree_count(), -1);
            for (int k = 0; k < static_cast<int>(tc.gens.size()); ++k)
                gen_of[tc.gens[k].tree] = k;
            std::vector<FundamentalCycle> z;
            for (int t = 0; t < ctx.tree_count(); ++t) z.push_back(ctx.cycle(t, true));
            for (int a = 0; a < ctx.tree_count(); ++a)
                for (int b = 0; b < ctx.tree_count(); ++b) {
                    if (a == b || !classify_direct(ctx.words[a], ctx.words[b])) continue;
                    Int di = direct_incidence(kc, z[a], z[b], ctx.words[b]);
                    if (di != 0 && tc.entry(gen_of[a], gen_of[b]) != di) {
                        fail(r, "induced <dT1,T2> != <dZ1,Z2> on " + name);
                        return;
                    }
                }
            ++checked;
        }
        r.notes.push_back("collapse homology and Lemma 2.4 entries exact on " +
                          std::to_string(checked) + " fixture knots");
    });
}

// Criterion 7: the Theorem 2.5 spectral sequence.
inline CriterionResult verify_spectral(const verify_detail::Fixtures& fx) {
    using namespace verify_detail;
    return timed("spectral", [&](CriterionResult& r) {
        int checked = 0;
        for (const auto& [name, g] : knot_graphs(fx, 9)) {
            TreeContext ctx = TreeContext::from_graph(g);
            SpectralSequence ss(ctx, true);
            auto e1 = ss.page(1);
            // E1 ranks per (u,v) equal tree counts per (u,v).
            std::map<std::pair<int, int>, int> tree_uv, e1_uv;
            for (int t = 0; t < ctx.tree_count(); ++t)
                tree_uv[{ctx.grading_u_of(t), ctx.grading_v_of(t)}]++;
            for (const auto& gen : ss.generators())
                e1_uv[{ctx.grading_u_of(gen.tree), ctx.grading_v_of(gen.tree)}]++;
            if (tree_uv != e1_uv) {
                fail(r, "E1 ranks per (u,v) differ from tree counts on " + name);
                return;
            }
            // E1 from the rational page formula agrees with the generator
            // counts, blockwise and conversely.
            for (const auto& [ij, states] : ss.complex().basis())
                for (int p = 1; p <= ss.depth(); ++p) {
                    int dim = ss.dim_Er(ij, p, 1);
                    auto it = e1.groups.find({p, ij.i, ij.j});
                    int want = it == e1.groups.end() ? 0 : it->second.rank;
                    if (dim != want) {
                        fail(r, "E1 rank formula mismatch on " + name);
                        return;
                    }
                }
            // Collapse bound: E_{c(D)} = E_{c(D)+1} over Q, and its total
            // ranks per bidegree equal the reduced homology ranks.
            int c = medial(g).crossing_count();
            int stop = std::max(2, std::min(c, ss.depth()));
            auto einf = ss.page(stop);
            if (einf.groups != ss.page(stop + 1).groups) {
                fail(r, "page E_" + std::to_string(stop) + " is not stable on " + name);
                return;
            }
            std::map<Bidegree, int> einf_rank, h_rank;
            for (const auto& [k, grp] : einf.groups) einf_rank[{k.i, k.j}] += grp.rank;
            for (const auto& [ij, grp] : ss.complex().homology())
                if (grp.rank > 0) h_rank[ij] = grp.rank;
            std::erase_if(einf_rank, [](const auto& e) { return e.second == 0; });
            if (einf_rank != h_rank) {
                fail(r, "E_infinity ranks differ from reduced homology on " + name);
                return;
            }
            ++checked;
        }
        r.notes.push_back("Theorem 2.5 page checks exact on " + std::to_string(checked) +
                          " fixture knots");
    });
}

// Criterion 8: the 11-crossing mutation flagship (Corollaries 3.4 and 3.7).
// The paper's Figure 4 (Kinoshita-Terasaka / Conway) ships only as an image,
// so the artifact's flagship is a reproducibly generated genuine 11-crossing
// 2-flip mutant pair with its 2-separation recorded in the fixture.
inline CriterionResult verify_mutation(const verify_detail::Fixtures& fx) {
    using namespace verify_detail;
    return timed("mutation", [&](CriterionResult& r) {
        const SignedPlanarGraph& a = fx.graph("mutant11_a");
        const SignedPlanarGraph& b = fx.graph("mutant11_b");
        if (a.edge_count() != 11) fail(r, "flagship pair is not 11-crossing");
        MutantReport m = are_mutants(a, b);
        if (!m.mutants || !m.witness) {
            fail(r, "are_mutants found no witness for the flagship pair");
            return;
        }
        E2Report e2 = compare_E2(a, b);
        if (!e2.equal) fail(r, "integral E2 terms of the flagship pair differ");
        if (khovanov_homology(medial(a), true) != khovanov_homology(medial(b), true))
            fail(r, "reduced Khovanov homologies of the flagship pair differ");
        r.notes.push_back("11-crossing 2-flip mutants: witness found, E2 and reduced "
                          "homology agree");
    });
}

// Criterion 9: negative control -- figure-8 vs trefoil.
inline CriterionResult verify_negative(const verify_detail::Fixtures& fx) {
    using namespace verify_detail;
    return timed("negative", [&](CriterionResult& r) {
        const SignedPlanarGraph& f8 = fx.graph("figure8");
        const SignedPlanarGraph& tr = fx.graph("trefoil");
        if (are_mutants(f8, tr).mutants) fail(r, "figure-8 and trefoil flagged as mutants");
        E2Report e2 = compare_E2(f8, tr);
        if (e2.e2_1 == e2.e2_2) fail(r, "figure-8 and trefoil E2 terms coincide");
        r.notes.push_back("figure-8 vs trefoil: not mutants, E2 terms differ");
    });
}

// Criterion 10: property suite.
inline CriterionResult verify_properties(const verify_detail::Fixtures& fx, unsigned seed) {
    using namespace verify_detail;
    return timed("properties", [&](CriterionResult& r) {
        // d o d = 0 on every built complex.
        for (const auto& [name, g] : knot_graphs(fx, 9)) {
            Diagram d = medial(g);
            for (bool reduced : {true, false}) {
                if (!reduced && g.edge_count() > 8) continue;
                KhovanovComplex kc(d, reduced);
                for (const auto& [ij, states] : kc.basis())
                    for (const auto& s : states) {
                        Chain dd;
                        for (const auto& [t, c] : kc.boundary(s))
                            for (const auto& [t2, c2] : kc.boundary(t))
                                chain_add(dd, key_of(t2), Int(c) * c2);
                        if (!dd.empty()) {
                            fail(r, "d o d != 0 on " + name);
                            return;
                        }
                    }
            }
        }
        // Fundamental cycles are cycles in their own U-tilde and independent
        // of the untwisting order.
        for (const auto& [name, g] : knot_graphs(fx, 9)) {
            TreeContext ctx = TreeContext::from_graph(g);
            KhovanovComplex kc(ctx.d, true, /*with_basis=*/false);
            for (int t = 0; t < ctx.tree_count(); ++t) {
                FundamentalCycle z = fundamental_cycle(ctx.d, ctx.words[t], true, 0);
                for (int variant : {1, 2})
                    if (fundamental_cycle(ctx.d, ctx.words[t], true, variant).chain != z.chain) {
                        fail(r, "fundamental cycle depends on untwist order on " + name);
                        return;
                    }
                for (const auto& [k, v] : boundary_chain(kc, z.chain))
                    if (ctx.tree_of_markers(k.first) == t) {
                        fail(r, "fundamental cycle is not a cycle in its U-tilde on " + name);
                        return;
                    }
            }
        }
        // Flip moves preserve the colored matroid.
        int flips = 0;
        {
            std::mt19937 rng(seed);
            std::vector<SignedPlanarGraph> pool;
            for (const auto& [name, g] : fx.graphs) pool.push_back(g);
            for (int k = 0; k < 30; ++k)
                pool.push_back(random_planar_graph(rng, 5 + static_cast<int>(rng() % 5)));
            for (const auto& g : pool)
                for (const auto& [m, out] : two_flips(g)) {
                    ColoredMatroid before = colored_matroid(g), after = colored_matroid(out);
                    if (before.bases != after.bases || before.color != after.color) {
                        fail(r, "a 2-flip changed the colored matroid");
                        return;
                    }
                    ++flips;
                }
        }
        if (flips < 5) fail(r, "fewer than 5 flip moves exercised");
        // Basepoint independence of reduced homology on knots.
        for (const auto& [name, g] : knot_graphs(fx, 8)) {
            Diagram d = medial(g);
            BigradedGroups h0 = khovanov_homology(d, true);
            for (int arc = 1; arc < d.arc_count(); ++arc)
                if (khovanov_homology(d.with_basepoint(arc), true) != h0) {
                    fail(r, "reduced homology depends on the basepoint on " + name);
                    return;
                }
        }
        r.notes.push_back("d^2=0, untwist-order independence, " + std::to_string(flips) +
                          " matroid-preserving flips, basepoint independence");
    });
}

// Conjecture evidence (not pass/fail on the conjectures themselves): the
// probe must run and report structured evidence on at least 3 mutant pairs.
inline CriterionResult verify_probes(const verify_detail::Fixtures& fx) {
    using namespace verify_detail;
    return timed("probes", [&](CriterionResult& r) {
        int ran = 0;
        for (std::string base : {"mutant7a", "mutant7b", "mutant9"}) {
            ProbeReport p = conjecture_probe(fx.graph(base + "_a"), fx.graph(base + "_b"));
            std::ostringstream os;
            os << base << ": compared=" << p.pairs_compared << " agree=" << p.agreements
               << " nonzero-agree=" << p.nonzero_agreements
               << " disagree=" << p.disagreements.size() << " unmatched=" << p.unmatched1.size()
               << "/" << p.unmatched2.size();
            for (const auto& e : p.disagreements)
                os << " [" << e.from_word << " -> " << e.to_word << ": " << e.v1.str() << " vs "
                   << e.v2.str() << "]";
            r.notes.push_back(os.str());
            ++ran;
        }
        if (ran < 3) fail(r, "fewer than 3 mutant pairs probed");
    });
}

inline VerifyReport run_verify(const std::string& fixtures_dir,
                               const std::vector<std::string>& only = {}, unsigned seed = 7) {
    verify_detail::Fixtures fx = verify_detail::load_fixtures(fixtures_dir);
    auto wanted = [&](const std::string& name) {
        return only.empty() || std::find(only.begin(), only.end(), name) != only.end();
    };
    VerifyReport rep;
    if (wanted("figure8")) rep.results.push_back(verify_figure8(fx));
    if (wanted("filtration")) rep.results.push_back(verify_filtration(fx));
    if (wanted("thistlethwaite")) rep.results.push_back(verify_thistlethwaite(fx, seed));
    if (wanted("euler")) rep.results.push_back(verify_euler(fx));
    if (wanted("incidence")) rep.results.push_back(verify_incidence(seed));
    if (wanted("collapse")) rep.results.push_back(verify_collapse(fx));
    if (wanted("spectral")) rep.results.push_back(verify_spectral(fx));
    if (wanted("mutation")) rep.results.push_back(verify_mutation(fx));
    if (wanted("negative")) rep.results.push_back(verify_negative(fx));
    if (wanted("properties")) rep.results.push_back(verify_properties(fx, seed));
    if (wanted("probes")) rep.results.push_back(verify_probes(fx));
    return rep;
}

}  // namespace stkh
