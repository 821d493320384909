#pragma once

#include <unordered_map>

#include "stkh/diagram.hpp"
#include "stkh/snf.hpp"

namespace stkh {

// Enhanced Kauffman state: B-markers as a bit mask over crossings, loop
// enhancements as a bit mask over the loop ids of that smoothing
// (bit set = "+").  The "+" label is the low-degree generator, so the
// reduced complex (basepoint loop forced "+") is a subcomplex and the
// reduced unknot sits in bidegree (0,-1).
struct EnhancedState {
    uint64_t markers = 0;
    uint64_t plus = 0;
    friend bool operator==(const EnhancedState&, const EnhancedState&) = default;
};

struct EnhancedStateHash {
    size_t operator()(const EnhancedState& s) const {
        return std::hash<uint64_t>()(s.markers * 0x9e3779b97f4a7c15ULL ^ s.plus);
    }
};

struct Bidegree {
    int i, j;
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

// Loop partition of a smoothing, cached per marker mask.
struct Smoothing {
    std::vector<int> loop_of_arc;
    int loop_count = 0;
};

// Mapping (i,j) -> finitely generated abelian group.
using BigradedGroups = std::map<Bidegree, AbelianGroup>;

inline Laurent euler_characteristic(const BigradedGroups& h) {
    Laurent chi;
    for (const auto& [ij, grp] : h)
        chi.add_term(ij.j, (ij.i % 2 == 0) ? Int(grp.rank) : Int(-grp.rank));
    return chi;
}

inline std::string bigraded_str(const BigradedGroups& h) {
    std::ostringstream os;
    for (const auto& [ij, grp] : h)
        os << "(" << ij.i << "," << ij.j << ") " << grp.str() << "\n";
    return os.str();
}

// The (co)chain complex of enhanced states with differential of bidegree
// (1,0): changing one A-marker to B, with sign (-1)^{#B-markers after it}.
class KhovanovComplex {
public:
    // `with_basis = false` skips enumerating the full state basis; only
    // boundary()/grading()/smoothing() are then usable.
    KhovanovComplex(const Diagram& d, bool reduced, bool with_basis = true)
        : diagram_(d), reduced_(reduced) {
        build(with_basis);
    }

    const Diagram& diagram() const { return diagram_; }
    bool reduced() const { return reduced_; }

    // Number of positive/negative crossings.
    int n_plus() const { return n_plus_; }
    int n_minus() const { return n_minus_; }

    const Smoothing& smoothing(uint64_t markers) const {
        auto it = smoothings_.find(markers);
        if (it != smoothings_.end()) return it->second;
        auto [loop, count] = diagram_.smooth_loops(unpack_markers(markers));
        return smoothings_.emplace(markers, Smoothing{std::move(loop), count}).first->second;
    }

    // Gradings: i = #B - n_-;  j = #B + n_+ - 2 n_- - tau, tau = #plus - #minus.
    Bidegree grading(const EnhancedState& s) const {
        int nb = std::popcount(s.markers);
        int loops = smoothing(s.markers).loop_count;
        int tau = 2 * std::popcount(s.plus) - loops;
        return {nb - n_minus_, nb + n_plus_ - 2 * n_minus_ - tau};
    }

    bool admissible(const EnhancedState& s) const {
        if (!reduced_) return true;
        int p = smoothing(s.markers).loop_of_arc[diagram_.basepoint()];
        return (s.plus >> p) & 1;
    }

    // All admissible enhanced states grouped by bidegree, each group in a
    // deterministic order.
    const std::map<Bidegree, std::vector<EnhancedState>>& basis() const { return basis_; }
    int index_of(const EnhancedState& s) const {
        auto it = index_.find(s);
        return it == index_.end() ? -1 : it->second;
    }

    // The boundary of a single enhanced state as (state, coefficient) pairs.
    std::vector<std::pair<EnhancedState, int>> boundary(const EnhancedState& s) const {
        std::vector<std::pair<EnhancedState, int>> out;
        int n = diagram_.crossing_count();
        const Smoothing& from = smoothing(s.markers);
        for (int c = 0; c < n; ++c) {
            if ((s.markers >> c) & 1) continue;  // already B
            uint64_t markers2 = s.markers | (uint64_t(1) << c);
            int sign = (std::popcount(s.markers >> (c + 1)) % 2 == 0) ? 1 : -1;
            const Smoothing& to = smoothing(markers2);
            // Transfer enhancements.  Loops not touching crossing c map by
            // any contained arc; the touched loops merge or split.
            auto arc_at = [&](int slot) { return diagram_.crossings()[c].arc[slot]; };
            int a0 = from.loop_of_arc[arc_at(0)];
            int a2 = from.loop_of_arc[arc_at(2)];
            auto carry = [&](uint64_t extra_plus_on, uint64_t skip_from_loops) {
                // Base enhancement transfer for unaffected loops.
                uint64_t plus2 = extra_plus_on;
                std::vector<char> seen(to.loop_count, 0);
                for (int arc = 0; arc < diagram_.arc_count(); ++arc) {
                    int lf = from.loop_of_arc[arc];
                    if ((skip_from_loops >> lf) & 1) continue;
                    int lt = to.loop_of_arc[arc];
                    if (seen[lt]) continue;
                    seen[lt] = 1;
                    if ((s.plus >> lf) & 1) plus2 |= uint64_t(1) << lt;
                }
                return plus2;
            };
            if (to.loop_count == from.loop_count - 1) {
                // Merge a0 (+/-) with a2: (+,+)->0, (+,-)->+, (-,-)->-.
                bool p0 = (s.plus >> a0) & 1, p2 = (s.plus >> a2) & 1;
                if (p0 && p2) continue;
                int merged = to.loop_of_arc[arc_at(0)];
                uint64_t skip = (uint64_t(1) << a0) | (uint64_t(1) << a2);
                uint64_t extra = (p0 || p2) ? (uint64_t(1) << merged) : 0;
                out.push_back({{markers2, carry(extra, skip)}, sign});
            } else if (to.loop_count == from.loop_count + 1) {
                // Split loop a0 (== a2): + -> (+,+); - -> (+,-)+(-,+).
                int l1 = to.loop_of_arc[arc_at(0)];
                int l2 = to.loop_of_arc[arc_at(2)];
                if (l1 == l2) throw diagram_error("split did not separate loops");
                uint64_t skip = uint64_t(1) << a0;
                if ((s.plus >> a0) & 1) {
                    out.push_back(
                        {{markers2, carry((uint64_t(1) << l1) | (uint64_t(1) << l2), skip)},
                         sign});
                } else {
                    out.push_back({{markers2, carry(uint64_t(1) << l1, skip)}, sign});
                    out.push_back({{markers2, carry(uint64_t(1) << l2, skip)}, sign});
                }
            } else {
                throw diagram_error("smoothing change is neither merge nor split");
            }
        }
        if (reduced_) {
            std::erase_if(out, [&](const auto& t) { return !admissible(t.first); });
        }
        return out;
    }

    // Differential matrix from bidegree (i,j) to (i+1,j).
    Mat differential(Bidegree ij) const {
        auto from = basis_.find(ij);
        auto to = basis_.find({ij.i + 1, ij.j});
        int nf = from == basis_.end() ? 0 : static_cast<int>(from->second.size());
        int nt = to == basis_.end() ? 0 : static_cast<int>(to->second.size());
        Mat m(nt, nf);
        if (nf == 0 || nt == 0) return m;
        for (int col = 0; col < nf; ++col)
            for (const auto& [t, coef] : boundary(from->second[col])) {
                int row = local_index(t);
                m(row, col) += coef;
            }
        return m;
    }

    // Sparse differential from bidegree (i,j): columns over the (i,j)
    // basis, rows indexed within the (i+1,j) basis.
    SparseCols sparse_differential(Bidegree ij) const {
        auto from = basis_.find(ij);
        SparseCols cols(from == basis_.end() ? 0 : from->second.size());
        if (from == basis_.end()) return cols;
        for (size_t c = 0; c < from->second.size(); ++c)
            for (const auto& [t, coef] : boundary(from->second[c])) {
                Int& x = cols[c][local_index(t)];
                x += coef;
                if (x == 0) cols[c].erase(local_index(t));
            }
        return cols;
    }

    BigradedGroups homology() const {
        BigradedGroups h;
        for (const auto& [ij, states] : basis_) {
            auto dim = [&](Bidegree b) {
                auto it = basis_.find(b);
                return it == basis_.end() ? 0 : static_cast<int>(it->second.size());
            };
            AbelianGroup g = homology_group_sparse(
                sparse_differential({ij.i - 1, ij.j}), static_cast<int>(states.size()),
                sparse_differential(ij), dim({ij.i + 1, ij.j}));
            if (!g.is_trivial()) h[ij] = g;
        }
        return h;
    }

    // Bigraded Euler characteristic of the chain groups (equals that of the
    // homology).
    Laurent chain_euler() const {
        Laurent chi;
        for (const auto& [ij, states] : basis_)
            chi.add_term(ij.j, (ij.i % 2 == 0) ? Int(states.size()) : Int(-(long long)states.size()));
        return chi;
    }

    // Index of state s within its bidegree's basis list.
    int local_index(const EnhancedState& s) const {
        auto it = index_.find(s);
        if (it == index_.end()) throw diagram_error("state not in basis");
        return it->second;
    }

    std::vector<Marker> unpack_markers(uint64_t mask) const {
        std::vector<Marker> ms(diagram_.crossing_count());
        for (int c = 0; c < diagram_.crossing_count(); ++c)
            ms[c] = (mask >> c) & 1 ? Marker::B : Marker::A;
        return ms;
    }

private:
    Diagram diagram_;
    bool reduced_;
    int n_plus_ = 0, n_minus_ = 0;
    mutable std::unordered_map<uint64_t, Smoothing> smoothings_;
    std::map<Bidegree, std::vector<EnhancedState>> basis_;
    std::unordered_map<EnhancedState, int, EnhancedStateHash> index_;

    void build(bool with_basis) {
        int n = diagram_.crossing_count();
        for (int c = 0; c < n; ++c)
            (diagram_.crossing_sign(c) > 0 ? n_plus_ : n_minus_)++;
        if (!with_basis) return;
        for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
            const Smoothing& sm = smoothing(mask);
            for (uint64_t plus = 0; plus < (uint64_t(1) << sm.loop_count); ++plus) {
                EnhancedState s{mask, plus};
                if (!admissible(s)) continue;
                basis_[grading(s)].push_back(s);
            }
        }
        for (auto& [ij, states] : basis_)
            for (int k = 0; k < static_cast<int>(states.size()); ++k) index_[states[k]] = k;
    }
};

inline BigradedGroups khovanov_homology(const Diagram& d, bool reduced) {
    return KhovanovComplex(d, reduced).homology();
}

}  // namespace stkh
