#pragma once

#include "stkh/tree_complex.hpp"

namespace stkh {

// One spot of a spectral-sequence page: filtration level p, homological
// degree i, internal degree j.
struct PageKey {
    int p, i, j;
    friend auto operator<=>(const PageKey&, const PageKey&) = default;
};

struct Page {
    int r = 0;
    bool flagged = false;  // r exceeds the stabilization bound (page already stable)
    std::map<PageKey, AbelianGroup> groups;
    // d_1 as sparse triplets (from generator, to generator, coefficient);
    // filled for r == 1 only.
    std::vector<std::tuple<int, int, Int>> d1;
};

// The spanning-tree filtration of the (reduced or unreduced) Khovanov
// complex and its spectral sequence.  F^p is spanned by the U-tilde of all
// trees of level >= p; every admissible state lies in exactly one U-tilde,
// so the filtration subspaces are coordinate subspaces of the state basis.
class SpectralSequence {
public:
    // E_1 generator: a fundamental cycle (tree, sign variant).
    struct Gen {
        int tree;
        bool plus;
        int p;  // filtration level of the tree
        Bidegree ij;
    };

    explicit SpectralSequence(const TreeContext& ctx, bool reduced = true)
        : ctx_(ctx), kc_(ctx_.d, reduced) {
        for (int t = 0; t < ctx_.tree_count(); ++t) {
            cycles_.push_back(ctx_.cycle(t, true));
            if (!reduced) cycles_.push_back(ctx_.cycle(t, false));
        }
        for (const auto& z : cycles_) {
            Gen g;
            g.tree = z.tree;
            g.plus = z.plus_variant;
            g.p = ctx_.poset.level[z.tree];
            g.ij = kc_.grading(state_of(z.chain.begin()->first));
            gens_.push_back(g);
        }
    }

    const TreeContext& context() const { return ctx_; }
    const KhovanovComplex& complex() const { return kc_; }
    const std::vector<Gen>& generators() const { return gens_; }
    const FundamentalCycle& cycle_of(int g) const { return cycles_[g]; }

    // Stabilization bound: d_r needs two occupied levels r apart, so every
    // page with r >= depth is final.
    int depth() const { return ctx_.poset.depth; }

    int level_of_markers(uint64_t markers) const {
        return ctx_.poset.level[ctx_.tree_of_markers(markers)];
    }

    // Trees per filtration level (index p-1), i.e. F^p = F^{p+1} + these.
    std::vector<std::vector<int>> trees_by_level() const {
        std::vector<std::vector<int>> out(depth());
        for (int t = 0; t < ctx_.tree_count(); ++t)
            out[ctx_.poset.level[t] - 1].push_back(t);
        return out;
    }

    // d_1 entries: direct incidences one filtration level apart.
    std::vector<std::tuple<int, int, Int>> d1_triplets() const {
        std::vector<std::tuple<int, int, Int>> out;
        int n = static_cast<int>(gens_.size());
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (gens_[b].p != gens_[a].p + 1) continue;
                if (gens_[b].ij.i != gens_[a].ij.i + 1 || gens_[b].ij.j != gens_[a].ij.j)
                    continue;
                Int v = direct_incidence(kc_, cycles_[a], cycles_[b],
                                         ctx_.words[gens_[b].tree]);
                if (v != 0) out.push_back({a, b, v});
            }
        return out;
    }

    Page page(int r) const {
        if (r < 0) throw graph_error("spectral page index must be >= 0");
        Page pg;
        pg.r = r;
        pg.flagged = r > depth();
        if (r == 0) {
            // E_0^{p} = F^p/F^{p+1} = direct sum of level-p U-tildes.
            std::map<PageKey, int> counts;
            for (const auto& [ij, states] : kc_.basis())
                for (const auto& s : states)
                    counts[{level_of_markers(s.markers), ij.i, ij.j}]++;
            for (const auto& [k, c] : counts) pg.groups[k] = AbelianGroup{c, {}};
            return pg;
        }
        if (r == 1) {
            std::map<PageKey, int> counts;
            for (const auto& g : gens_) counts[{g.p, g.ij.i, g.ij.j}]++;
            for (const auto& [k, c] : counts) pg.groups[k] = AbelianGroup{c, {}};
            pg.d1 = d1_triplets();
            return pg;
        }
        if (r == 2) {
            // Integral E_2 = H(E_1, d_1), blockwise: d_1 maps (p,i,j) to
            // (p+1,i+1,j).
            std::map<PageKey, std::vector<int>> blocks;
            for (int g = 0; g < static_cast<int>(gens_.size()); ++g)
                blocks[{gens_[g].p, gens_[g].ij.i, gens_[g].ij.j}].push_back(g);
            auto d1 = d1_triplets();
            auto block_map = [&](const PageKey& from, const PageKey& to) {
                auto itf = blocks.find(from);
                auto itt = blocks.find(to);
                int nf = itf == blocks.end() ? 0 : static_cast<int>(itf->second.size());
                int nt = itt == blocks.end() ? 0 : static_cast<int>(itt->second.size());
                Mat m(nt, nf);
                if (nf && nt)
                    for (const auto& [a, b, v] : d1)
                        for (int col = 0; col < nf; ++col)
                            if (itf->second[col] == a)
                                for (int row = 0; row < nt; ++row)
                                    if (itt->second[row] == b) m(row, col) = v;
                return m;
            };
            for (const auto& [k, idx] : blocks) {
                PageKey prev{k.p - 1, k.i - 1, k.j}, next{k.p + 1, k.i + 1, k.j};
                AbelianGroup h = homology_group(block_map(prev, k), block_map(k, next));
                if (!h.is_trivial()) pg.groups[k] = h;
            }
            return pg;
        }
        // r >= 3: rational ranks by the classical filtered-complex formula
        //   E_r^{p,i,j} = Z_r^{p,i,j} / (Z_{r-1}^{p+1,i,j} + d Z_{r-1}^{p-r+1,i-1,j}).
        for (const auto& [ij, states] : kc_.basis())
            for (int p = 1; p <= depth(); ++p) {
                int dim = dim_Er(ij, p, r);
                if (dim > 0) pg.groups[{p, ij.i, ij.j}] = AbelianGroup{dim, {}};
            }
        return pg;
    }

    // dim_Q Z_r^{p,i,j} = {x in F^p of bidegree (i,j) : dx in F^{p+r}}.
    int dim_Zr(Bidegree ij, int p, int r) const {
        // F^p is everything for p <= 1 and zero beyond the depth; the
        // target cut p + r is fixed by the unclamped p and saturates once
        // it exceeds the depth.
        int cut = std::min(p + r, depth() + 1);
        p = std::max(p, 1);
        cut = std::max(cut, p);
        if (p > depth()) return 0;
        auto key = std::tuple{ij.i, ij.j, p, cut};
        auto hit = zr_cache_.find(key);
        if (hit != zr_cache_.end()) return hit->second;
        auto itf = kc_.basis().find(ij);
        int dim = 0;
        if (itf != kc_.basis().end()) {
            const auto& cols_all = sparse_cols(ij);
            const auto& src_level = levels(ij);
            const auto& dst_level = levels({ij.i + 1, ij.j});
            SparseCols block;
            int nrows = static_cast<int>(dst_level.size());
            for (size_t k = 0; k < cols_all.size(); ++k) {
                if (src_level[k] < p) continue;
                std::map<int, Int> col;
                for (const auto& [row, v] : cols_all[k])
                    if (dst_level[row] < cut) col[row] = v;
                block.push_back(std::move(col));
            }
            int ncols = static_cast<int>(block.size());
            dim = ncols - sparse_rank(std::move(block), nrows);
        }
        zr_cache_[key] = dim;
        return dim;
    }

    // dim_Q E_r^{p,i,j} by inclusion-exclusion on the classical formula
    //   E_r^p = Z_r^p / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1}):
    // the two denominator parts meet in d Z_r^{p-r+1}, and d restricted to
    // any Z_s has kernel {x in F : dx = 0} independent of s, so
    //   dim E_r^p = Z_r^p - Z_{r-1}^{p+1} - Z_{r-1}^{p-r+1} + Z_r^{p-r+1}
    // with the last two living in bidegree (i-1, j).
    int dim_Er(Bidegree ij, int p, int r) const {
        Bidegree prev{ij.i - 1, ij.j};
        return dim_Zr(ij, p, r) - dim_Zr(ij, p + 1, r - 1) - dim_Zr(prev, p - r + 1, r - 1) +
               dim_Zr(prev, p - r + 1, r);
    }

private:
    TreeContext ctx_;
    KhovanovComplex kc_;
    std::vector<FundamentalCycle> cycles_;
    std::vector<Gen> gens_;
    mutable std::map<Bidegree, SparseCols> cols_cache_;
    mutable std::map<Bidegree, std::vector<int>> level_cache_;
    mutable std::map<std::tuple<int, int, int, int>, int> zr_cache_;

    int block_dim(Bidegree ij) const {
        auto it = kc_.basis().find(ij);
        return it == kc_.basis().end() ? 0 : static_cast<int>(it->second.size());
    }

    int state_level(const EnhancedState& s) const { return level_of_markers(s.markers); }

    const SparseCols& sparse_cols(Bidegree ij) const {
        auto it = cols_cache_.find(ij);
        if (it == cols_cache_.end()) it = cols_cache_.emplace(ij, kc_.sparse_differential(ij)).first;
        return it->second;
    }

    const std::vector<int>& levels(Bidegree ij) const {
        auto it = level_cache_.find(ij);
        if (it == level_cache_.end()) {
            std::vector<int> lv;
            auto bit = kc_.basis().find(ij);
            if (bit != kc_.basis().end())
                for (const auto& s : bit->second) lv.push_back(state_level(s));
            it = level_cache_.emplace(ij, std::move(lv)).first;
        }
        return it->second;
    }
};

}  // namespace stkh
