// stkh: spanning-tree Khovanov homology toolkit.
//
// Subcommands: trees, bracket, jones, homology, ss, collapse, ladders,
// mutants, probe, verify.  Exit codes: 0 success (mutants: true),
// 1 mutants false / verification failed, 2 input error, 3 size guard.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stkh/collapse.hpp"
#include "stkh/ladders.hpp"
#include "stkh/matroid.hpp"
#include "stkh/spectral.hpp"
#include "stkh/verify.hpp"

using namespace stkh;
using json = nlohmann::ordered_json;

namespace {

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct size_guard_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string format = "table";
    int basepoint = -1;
    std::vector<int> edge_order;  // 1-based positions of the new order
    bool reduced = true;
    int max_crossings = 14;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw input_error("cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

// A loaded diagram plus the Tait graph driving the tree machinery.  Graph
// inputs keep their own edge order; PD inputs use the canonical coloring
// with edge order = crossing order.
struct Input {
    Diagram d;
    SignedPlanarGraph g;
};

Input load_input(const std::string& path, const Options& opt) {
    std::filesystem::path p(path);
    Input in{Diagram::round_unknot(), SignedPlanarGraph(1, {}, {{}})};
    try {
        if (p.extension() == ".graph") {
            in.g = parse_graph(slurp(path));
            if (!opt.edge_order.empty()) {
                std::vector<int> perm;
                for (int k : opt.edge_order) perm.push_back(k - 1);
                in.g = in.g.with_edge_order(perm);
            }
            in.d = medial(in.g);
        } else if (p.extension() == ".pd") {
            in.d = parse_pd(slurp(path));
            if (!opt.edge_order.empty()) {
                std::vector<int> perm;
                for (int k : opt.edge_order) perm.push_back(k - 1);
                in.d = in.d.permute_crossings(perm);
            }
            in.g = tait_graph(in.d, canonical_coloring(in.d));
        } else {
            throw input_error("unknown input extension (want .pd or .graph): " + path);
        }
        if (opt.basepoint >= 0) in.d = in.d.with_basepoint(opt.basepoint);
    } catch (const input_error&) {
        throw;
    } catch (const std::exception& e) {
        throw input_error(std::string(e.what()) + " in " + path);
    }
    if (in.d.crossing_count() > opt.max_crossings)
        throw size_guard_error(path + " has " + std::to_string(in.d.crossing_count()) +
                               " crossings; raise --max-crossings to proceed");
    return in;
}

json laurent_json(const Laurent& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({e, c.str()});
    return terms;
}

json group_json(const AbelianGroup& g) {
    json t = json::array();
    for (const Int& x : g.torsion) t.push_back(x.str());
    return json{{"rank", g.rank}, {"torsion", t}};
}

json bigraded_json(const BigradedGroups& h) {
    json out = json::array();
    for (const auto& [ij, grp] : h) {
        json rec = group_json(grp);
        rec["i"] = ij.i;
        rec["j"] = ij.j;
        out.push_back({{"i", ij.i}, {"j", ij.j}, {"rank", grp.rank},
                       {"torsion", rec["torsion"]}});
    }
    return out;
}

void emit(const json& j, const Options& opt, const std::string& table) {
    if (opt.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << table;
}

std::string poly_str(const Laurent& p, const std::string& var) { return p.str(var); }

// --- subcommand bodies -----------------------------------------------------

int cmd_trees(const std::string& path, const Options& opt) {
    Input in = load_input(path, opt);
    TreeContext ctx(in.d, in.g);
    json rows = json::array();
    std::ostringstream tab;
    tab << "index  edge_mask  word  u  v  monomial  smoothing  level\n";
    for (int t = 0; t < ctx.tree_count(); ++t) {
        Laurent mu = thistlethwaite_monomial(ctx.words[t]);
        rows.push_back({{"index", t},
                        {"edge_mask", ctx.trees[t]},
                        {"word", word_str(ctx.words[t])},
                        {"u", ctx.grading_u_of(t)},
                        {"v", ctx.grading_v_of(t)},
                        {"monomial", laurent_json(mu)},
                        {"smoothing", ctx.smoothings[t]},
                        {"level", ctx.poset.level[t]}});
        tab << t << "  " << ctx.trees[t] << "  " << word_str(ctx.words[t]) << "  "
            << ctx.grading_u_of(t) << "  " << ctx.grading_v_of(t) << "  " << poly_str(mu, "A")
            << "  " << ctx.smoothings[t] << "  " << ctx.poset.level[t] << "\n";
    }
    emit(json{{"trees", rows}}, opt, tab.str());
    return 0;
}

int cmd_bracket(const std::string& path, const Options& opt) {
    Input in = load_input(path, opt);
    Laurent b = bracket_by_trees(in.g);
    emit(json{{"variable", "A"}, {"terms", laurent_json(b)}}, opt,
         "<D> = " + poly_str(b, "A") + "\n");
    return 0;
}

int cmd_jones(const std::string& path, const Options& opt) {
    Input in = load_input(path, opt);
    Laurent vq = jones_q_from_bracket(bracket_by_trees(in.g), in.d.writhe());
    json j{{"variable", "q"}, {"terms", laurent_json(vq)}};
    std::string tab = "V = " + poly_str(vq, "q") + "   (q^2 = t)\n";
    bool even = true;
    for (const auto& [e, c] : vq.terms())
        if (e % 2 != 0) even = false;
    if (even) {
        Laurent vt = vq.divide_exponents(2);
        j["t_terms"] = laurent_json(vt);
        tab = "V(t) = " + poly_str(vt, "t") + "\n";
    }
    emit(j, opt, tab);
    return 0;
}

int cmd_homology(const std::string& path, const Options& opt) {
    Input in = load_input(path, opt);
    BigradedGroups h = khovanov_homology(in.d, opt.reduced);
    std::ostringstream tab;
    tab << (opt.reduced ? "reduced" : "unreduced") << " Khovanov homology:\n" << bigraded_str(h);
    emit(json{{"reduced", opt.reduced}, {"groups", bigraded_json(h)}}, opt, tab.str());
    return 0;
}

int cmd_ss(const std::string& path, const Options& opt, int page) {
    Input in = load_input(path, opt);
    TreeContext ctx(in.d, in.g);
    SpectralSequence ss(ctx, true);
    Page pg = ss.page(page);
    json groups = json::array();
    std::ostringstream tab;
    tab << "E_" << page << (pg.flagged ? " (stabilized)" : "") << ":\n";
    for (const auto& [k, grp] : pg.groups) {
        groups.push_back({{"p", k.p}, {"i", k.i}, {"j", k.j}, {"rank", grp.rank},
                          {"torsion", group_json(grp)["torsion"]}});
        tab << "(" << k.p << "," << k.i << "," << k.j << ") " << grp.str() << "\n";
    }
    json j{{"r", page}, {"stabilized", pg.flagged}, {"groups", groups}};
    if (page == 1) {
        json d1 = json::array();
        for (const auto& [a, b, v] : pg.d1) d1.push_back({a, b, v.str()});
        j["d1"] = d1;
        tab << "d1 entries: " << pg.d1.size() << "\n";
    }
    emit(j, opt, tab.str());
    return 0;
}

int cmd_collapse(const std::string& path, const Options& opt) {
    Input in = load_input(path, opt);
    TreeContext ctx(in.d, in.g);
    TreeComplexData tc = collapse_to_tree_complex(ctx, opt.reduced);
    json gens = json::array();
    for (const auto& g : tc.gens)
        gens.push_back({{"tree", g.tree}, {"plus", g.plus}, {"u", g.u}, {"v", g.v},
                        {"i", g.ij.i}, {"j", g.ij.j}});
    json diff = json::array();
    for (const auto& [a, b, v] : tc.d) diff.push_back({a, b, v.str()});
    BigradedGroups h = tc.homology();
    std::ostringstream tab;
    tab << tc.gens.size() << " generators, " << tc.d.size()
        << " differential entries; homology:\n" << bigraded_str(h);
    emit(json{{"reduced", opt.reduced}, {"generators", gens}, {"differential", diff},
              {"homology", bigraded_json(h)}},
         opt, tab.str());
    return 0;
}

int cmd_ladders(const std::string& path, const Options& opt, int kmax, int t1, int t2) {
    Input in = load_input(path, opt);
    TreeContext ctx(in.d, in.g);
    KhovanovComplex kc(in.d, true);
    std::vector<std::pair<int, int>> pairs;
    if (t1 >= 0 && t2 >= 0) {
        pairs.push_back({t1, t2});
    } else {
        for (int a = 0; a < ctx.tree_count(); ++a)
            for (int b = 0; b < ctx.tree_count(); ++b)
                if (ctx.poset.greater[a][b]) pairs.push_back({a, b});
    }
    json out = json::array();
    std::ostringstream tab;
    for (auto [a, b] : pairs) {
        auto ls = ladders(ctx, kc, a, b, kmax);
        if (ls.empty()) continue;
        Int total = 0;
        json jl = json::array();
        for (const auto& l : ls) {
            total += l.contribution;
            json rails = json::array(), rungs = json::array(), live = json::array();
            for (int m : l.rail_markers) rails.push_back(m);
            for (int m : l.rung_markers) rungs.push_back(m);
            for (bool x : l.rail_live) live.push_back(x);
            json through = json::array();
            for (int t : l.trees) through.push_back(t);
            jl.push_back({{"k", l.k}, {"trees", through},
                          {"contribution", l.contribution.str()}, {"rail_markers", rails},
                          {"rung_markers", rungs}, {"rail_live", live}});
        }
        out.push_back({{"t1", a}, {"t2", b}, {"word1", word_str(ctx.words[a])},
                       {"word2", word_str(ctx.words[b])}, {"ladders", jl},
                       {"total", total.str()}});
        tab << word_str(ctx.words[a]) << " -> " << word_str(ctx.words[b]) << ": " << ls.size()
            << " ladder(s), total " << total.str() << "\n";
    }
    emit(json{{"kmax", kmax}, {"pairs", out}}, opt, tab.str());
    return 0;
}

int cmd_mutants(const std::string& p1, const std::string& p2, const Options& opt) {
    Input a = load_input(p1, opt), b = load_input(p2, opt);
    MutantReport m = are_mutants(a.g, b.g);
    json j{{"mutants", m.mutants}};
    std::ostringstream tab;
    if (m.witness) {
        j["witness"] = m.witness->perm;
        tab << "mutants: witness edge bijection";
        for (int x : m.witness->perm) tab << " " << x + 1;
        tab << "\n";
    } else {
        tab << "not mutants\n";
    }
    emit(j, opt, tab.str());
    return m.mutants ? 0 : 1;
}

int cmd_probe(const std::string& p1, const std::string& p2, const Options& opt) {
    Input a = load_input(p1, opt), b = load_input(p2, opt);
    E2Report e2 = compare_E2(a.g, b.g);
    json j{{"mutants", e2.mutants}, {"e2_equal", e2.equal}};
    auto e2_json = [](const std::map<PageKey, AbelianGroup>& m) {
        json out = json::array();
        for (const auto& [k, grp] : m)
            out.push_back({{"p", k.p}, {"i", k.i}, {"j", k.j}, {"rank", grp.rank},
                           {"torsion", group_json(grp)["torsion"]}});
        return out;
    };
    j["e2_1"] = e2_json(e2.e2_1);
    j["e2_2"] = e2_json(e2.e2_2);
    std::ostringstream tab;
    tab << (e2.mutants ? "mutants" : "not mutants") << "; E2 "
        << (e2.equal ? "equal" : "UNEQUAL") << "\n";
    if (e2.mutants) {
        ProbeReport p = conjecture_probe(a.g, b.g);
        j["witness"] = p.witness.perm;
        j["pairs_compared"] = p.pairs_compared;
        j["agreements"] = p.agreements;
        j["nonzero_agreements"] = p.nonzero_agreements;
        json dis = json::array();
        for (const auto& e : p.disagreements)
            dis.push_back({{"from", e.from_word}, {"to", e.to_word}, {"v1", e.v1.str()},
                           {"v2", e.v2.str()}});
        j["disagreements"] = dis;
        j["unmatched1"] = p.unmatched1;
        j["unmatched2"] = p.unmatched2;
        tab << "probe: compared=" << p.pairs_compared << " agree=" << p.agreements
            << " nonzero-agree=" << p.nonzero_agreements
            << " disagree=" << p.disagreements.size() << " unmatched=" << p.unmatched1.size()
            << "/" << p.unmatched2.size() << "\n";
        for (const auto& e : p.disagreements)
            tab << "  " << e.from_word << " -> " << e.to_word << ": " << e.v1.str() << " vs "
                << e.v2.str() << "\n";
    }
    emit(j, opt, tab.str());
    return 0;
}

int cmd_verify(const std::string& fixtures, const std::vector<std::string>& only, unsigned seed,
               const Options& opt) {
    VerifyReport rep = run_verify(fixtures, only, seed);
    json out = json::array();
    std::ostringstream tab;
    for (const auto& r : rep.results) {
        out.push_back({{"name", r.name}, {"pass", r.pass}, {"ms", r.millis},
                       {"notes", r.notes}});
        tab << (r.pass ? "PASS " : "FAIL ") << r.name << "  (" << static_cast<long>(r.millis)
            << " ms)\n";
        for (const auto& n : r.notes) tab << "    " << n << "\n";
    }
    tab << (rep.all_pass() ? "all criteria passed\n" : "SOME CRITERIA FAILED\n");
    emit(json{{"criteria", out}, {"all_pass", rep.all_pass()}}, opt, tab.str());
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spanning-tree Khovanov homology, spectral sequences, and mutation"};
    app.require_subcommand(1);

    Options opt;
    std::string input, input2;
    int page = 1, kmax = 2, t1 = -1, t2 = -1;
    unsigned seed = 7;
    std::string fixtures = "fixtures";
    std::vector<std::string> only;

    auto add_common = [&](CLI::App* c, int inputs) {
        if (inputs >= 1)
            c->add_option("input,--input", input, "input file (.pd or .graph)")
                ->required()
                ->envname("STKH_INPUT");
        if (inputs >= 2)
            c->add_option("input2", input2, "second input file (.pd or .graph)")->required();
        c->add_option("--format", opt.format, "output format: table or json")
            ->check(CLI::IsMember({"table", "json"}))
            ->envname("STKH_FORMAT");
        c->add_option("--basepoint", opt.basepoint, "basepoint arc id (0-based)")
            ->envname("STKH_BASEPOINT");
        c->add_option("--edge-order", opt.edge_order,
                      "edge order override: 1-based old positions in new order")
            ->delimiter(',')
            ->envname("STKH_EDGE_ORDER");
        c->add_option("--max-crossings", opt.max_crossings, "size guard (default 14)")
            ->envname("STKH_MAX_CROSSINGS");
        return c;
    };
    auto add_reduced = [&](CLI::App* c) {
        c->add_flag("--reduced,!--unreduced", opt.reduced,
                    "reduced (default) or unreduced complex");
    };

    auto* c_trees = add_common(app.add_subcommand("trees", "spanning tree table"), 1);
    auto* c_bracket = add_common(app.add_subcommand("bracket", "Kauffman bracket by trees"), 1);
    auto* c_jones = add_common(app.add_subcommand("jones", "Jones polynomial"), 1);
    auto* c_hom = add_common(app.add_subcommand("homology", "Khovanov homology"), 1);
    add_reduced(c_hom);
    auto* c_ss = add_common(app.add_subcommand("ss", "spectral sequence page"), 1);
    c_ss->add_option("--page", page, "page number r (default 1)")->envname("STKH_PAGE");
    auto* c_col = add_common(app.add_subcommand("collapse", "collapsed tree complex"), 1);
    add_reduced(c_col);
    auto* c_lad = add_common(app.add_subcommand("ladders", "k-incidence ladders"), 1);
    c_lad->add_option("--kmax", kmax, "maximum ladder length (default 2)")->envname("STKH_KMAX");
    c_lad->add_option("--t1", t1, "source tree index (default: all comparable pairs)");
    c_lad->add_option("--t2", t2, "target tree index");
    auto* c_mut = add_common(app.add_subcommand("mutants", "mutation decision"), 2);
    auto* c_probe = add_common(app.add_subcommand("probe", "E2 comparison + conjecture probe"), 2);
    auto* c_ver = app.add_subcommand("verify", "acceptance suite");
    c_ver->add_option("--fixtures", fixtures, "fixtures directory (default ./fixtures)")
        ->envname("STKH_FIXTURES");
    c_ver->add_option("--only", only, "run only the named criteria")->delimiter(',');
    c_ver->add_option("--seed", seed, "seed for randomized criteria")->envname("STKH_SEED");
    c_ver->add_option("--format", opt.format, "output format: table or json")
        ->check(CLI::IsMember({"table", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_trees->parsed()) return cmd_trees(input, opt);
        if (c_bracket->parsed()) return cmd_bracket(input, opt);
        if (c_jones->parsed()) return cmd_jones(input, opt);
        if (c_hom->parsed()) return cmd_homology(input, opt);
        if (c_ss->parsed()) return cmd_ss(input, opt, page);
        if (c_col->parsed()) return cmd_collapse(input, opt);
        if (c_lad->parsed()) return cmd_ladders(input, opt, kmax, t1, t2);
        if (c_mut->parsed()) return cmd_mutants(input, input2, opt);
        if (c_probe->parsed()) return cmd_probe(input, input2, opt);
        if (c_ver->parsed()) return cmd_verify(fixtures, only, seed, opt);
    } catch (const size_guard_error& e) {
        std::cerr << "size guard: " << e.what() << "\n";
        return 3;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
