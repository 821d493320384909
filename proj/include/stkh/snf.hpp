#pragma once

#include <map>
#include <optional>
#include <set>

#include "stkh/laurent.hpp"

namespace stkh {

// Dense matrix over arbitrary-precision integers.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& operator()(int r, int c) { return a_[size_t(r) * cols_ + c]; }
    const Int& operator()(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

    std::vector<Int> col(int c) const {
        std::vector<Int> v(rows_);
        for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }
    void set_col(int c, const std::vector<Int>& v) {
        for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw std::runtime_error("mat: dimension mismatch");
        Mat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Int& x = (*this)(i, k);
                if (x == 0) continue;
                for (int j = 0; j < o.cols_; ++j)
                    if (o(k, j) != 0) r(i, j) += x * o(k, j);
            }
        return r;
    }

    std::vector<Int> apply(const std::vector<Int>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw std::runtime_error("mat: vector size");
        std::vector<Int> r(rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0 && v[j] != 0) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    bool is_zero() const {
        for (const Int& x : a_)
            if (x != 0) return false;
        return true;
    }

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

// Smith normal form U*A*V = D with U, V unimodular and D diagonal with
// positive invariant factors d_1 | d_2 | ... on the first `rank` entries.
struct SmithForm {
    Mat d;           // diagonal form, same shape as A
    Mat u, u_inv;    // rows(A) x rows(A)
    Mat v, v_inv;    // cols(A) x cols(A)
    int rank = 0;
    std::vector<Int> factors;  // the positive diagonal entries

    Int diag(int i) const { return i < rank ? factors[i] : Int(0); }
};

inline SmithForm smith_normal_form(Mat a) {
    const int m = a.rows(), n = a.cols();
    SmithForm s;
    s.u = Mat::identity(m);
    s.u_inv = Mat::identity(m);
    s.v = Mat::identity(n);
    s.v_inv = Mat::identity(n);

    // Elementary operations, mirrored into the transforms.
    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
        for (int c = 0; c < m; ++c) std::swap(s.u(i, c), s.u(j, c));
        for (int r = 0; r < m; ++r) std::swap(s.u_inv(r, i), s.u_inv(r, j));
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < m; ++r) std::swap(a(r, i), a(r, j));
        for (int r = 0; r < n; ++r) std::swap(s.v(r, i), s.v(r, j));
        for (int c = 0; c < n; ++c) std::swap(s.v_inv(i, c), s.v_inv(j, c));
    };
    // row i += k * row j  (so u_inv col j -= k * col i)
    auto add_row = [&](int i, int j, const Int& k) {
        if (k == 0) return;
        for (int c = 0; c < n; ++c) a(i, c) += k * a(j, c);
        for (int c = 0; c < m; ++c) s.u(i, c) += k * s.u(j, c);
        for (int r = 0; r < m; ++r) s.u_inv(r, j) -= k * s.u_inv(r, i);
    };
    // col i += k * col j  (so v_inv row j -= k * row i)
    auto add_col = [&](int i, int j, const Int& k) {
        if (k == 0) return;
        for (int r = 0; r < m; ++r) a(r, i) += k * a(r, j);
        for (int r = 0; r < n; ++r) s.v(r, i) += k * s.v(r, j);
        for (int c = 0; c < n; ++c) s.v_inv(j, c) -= k * s.v_inv(i, c);
    };
    auto negate_row = [&](int i) {
        for (int c = 0; c < n; ++c) a(i, c) = -a(i, c);
        for (int c = 0; c < m; ++c) s.u(i, c) = -s.u(i, c);
        for (int r = 0; r < m; ++r) s.u_inv(r, i) = -s.u_inv(r, i);
    };

    int t = 0;
    while (t < m && t < n) {
        // Find a nonzero pivot of least absolute value in the trailing block.
        int pr = -1, pc = -1;
        for (int r = t; r < m; ++r)
            for (int c = t; c < n; ++c)
                if (a(r, c) != 0 &&
                    (pr < 0 || boost::multiprecision::abs(a(r, c)) <
                                   boost::multiprecision::abs(a(pr, pc)))) {
                    pr = r;
                    pc = c;
                }
        if (pr < 0) break;
        swap_rows(t, pr);
        swap_cols(t, pc);

        bool again = true;
        while (again) {
            again = false;
            for (int r = t + 1; r < m; ++r) {
                if (a(r, t) == 0) continue;
                Int q = a(r, t) / a(t, t);
                add_row(r, t, -q);
                if (a(r, t) != 0) {
                    swap_rows(t, r);  // smaller remainder becomes pivot
                    again = true;
                }
            }
            for (int c = t + 1; c < n; ++c) {
                if (a(t, c) == 0) continue;
                Int q = a(t, c) / a(t, t);
                add_col(c, t, -q);
                if (a(t, c) != 0) {
                    swap_cols(t, c);
                    again = true;
                }
            }
        }
        // Divisibility: pivot must divide everything below-right.
        bool redo = false;
        for (int r = t + 1; r < m && !redo; ++r)
            for (int c = t + 1; c < n && !redo; ++c)
                if (a(r, c) % a(t, t) != 0) {
                    add_row(t, r, 1);
                    redo = true;
                }
        if (redo) continue;
        if (a(t, t) < 0) negate_row(t);
        ++t;
    }
    s.rank = t;
    s.factors.reserve(t);
    for (int i = 0; i < t; ++i) s.factors.push_back(a(i, i));
    s.d = std::move(a);
    return s;
}

inline int mat_rank(const Mat& a) { return smith_normal_form(a).rank; }

// Z-basis of ker(A): the kernel is saturated, so the trailing columns of V
// form a basis.
inline Mat kernel_basis(const SmithForm& s) {
    int n = s.v.rows();
    int k = n - s.rank;
    Mat b(n, k);
    for (int j = 0; j < k; ++j)
        for (int r = 0; r < n; ++r) b(r, j) = s.v(r, s.rank + j);
    return b;
}

// One integer solution of A x = b, if any: x = V y with y_i = (U b)_i / d_i.
inline std::optional<std::vector<Int>> solve(const SmithForm& s, const std::vector<Int>& b) {
    std::vector<Int> ub = s.u.apply(b);
    int n = s.v.rows();
    std::vector<Int> y(n, 0);
    for (int i = 0; i < static_cast<int>(ub.size()); ++i) {
        if (i < s.rank) {
            if (ub[i] % s.factors[i] != 0) return std::nullopt;
            if (i < n) y[i] = ub[i] / s.factors[i];
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return s.v.apply(y);
}

// Finitely generated abelian group: Z^rank plus cyclic torsion factors
// (each > 1, in divisibility order).
struct AbelianGroup {
    int rank = 0;
    std::vector<Int> torsion;

    bool is_trivial() const { return rank == 0 && torsion.empty(); }
    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

    std::string str() const {
        if (is_trivial()) return "0";
        std::string s;
        auto app = [&](const std::string& part) {
            if (!s.empty()) s += " + ";
            s += part;
        };
        if (rank == 1) app("Z");
        else if (rank > 1) app("Z^" + std::to_string(rank));
        for (const Int& t : torsion) app("Z/" + t.str());
        return s;
    }
};

// A subquotient N/D of an ambient Z^n, with explicit generator cycles and
// a coordinate map for arbitrary elements of N.
class Subquotient {
public:
    // num: generators of the numerator (columns, ambient x *).
    // den: generators of the denominator, must lie in span(num).
    Subquotient(const Mat& num, const Mat& den) {
        // Z-basis of the numerator subgroup: im(num) = span of columns of
        // U^-1 * D, i.e. (U^-1 col i) * d_i for i < rank.
        SmithForm sn = smith_normal_form(num);
        int k = sn.rank;
        basis_ = Mat(num.rows(), k);
        for (int j = 0; j < k; ++j)
            for (int r = 0; r < num.rows(); ++r)
                basis_(r, j) = sn.u_inv(r, j) * sn.factors[j];
        basis_snf_ = smith_normal_form(basis_);

        // Denominator in numerator coordinates.
        Mat y(k, den.cols());
        for (int c = 0; c < den.cols(); ++c) {
            auto sol = solve(basis_snf_, den.col(c));
            if (!sol) throw std::runtime_error("subquotient: denominator outside numerator");
            for (int r = 0; r < k; ++r) y(r, c) = (*sol)[r];
        }
        rel_snf_ = smith_normal_form(y);

        // Quotient presentation: Z^k / im(y); generator i of the presented
        // group has order rel diag (0 beyond rank), generators are
        // basis * (U_y^-1 columns).
        orders_.assign(k, 0);
        for (int i = 0; i < rel_snf_.rank; ++i) orders_[i] = rel_snf_.factors[i];
        for (int i = 0; i < k; ++i) {
            if (orders_[i] == 1) continue;
            if (orders_[i] == 0) ++group_.rank;
            else group_.torsion.push_back(orders_[i]);
            live_.push_back(i);
        }
    }

    const AbelianGroup& group() const { return group_; }
    // Orders of the live generators (0 = infinite), matching generators().
    std::vector<Int> live_orders() const {
        std::vector<Int> o;
        for (int i : live_) o.push_back(orders_[i]);
        return o;
    }
    int generator_count() const { return static_cast<int>(live_.size()); }

    // Ambient representative of live generator g.
    std::vector<Int> generator(int g) const {
        int k = basis_.cols();
        std::vector<Int> e(k, 0);
        for (int r = 0; r < k; ++r) e[r] = rel_snf_.u_inv(r, live_[g]);
        return basis_.apply(e);
    }

    // Coordinates of x (which must lie in the numerator) on the live
    // generators, reduced modulo torsion orders.
    std::vector<Int> coords(const std::vector<Int>& x) const {
        auto sol = solve(basis_snf_, x);
        if (!sol) throw std::runtime_error("subquotient: element outside numerator");
        std::vector<Int> h = rel_snf_.u.apply(*sol);
        std::vector<Int> out;
        out.reserve(live_.size());
        for (int i : live_) {
            Int c = h[i];
            if (orders_[i] > 1) {
                c %= orders_[i];
                if (c < 0) c += orders_[i];
            }
            out.push_back(c);
        }
        return out;
    }

    bool contains(const std::vector<Int>& x) const {
        return static_cast<bool>(solve(basis_snf_, x));
    }

private:
    Mat basis_;             // ambient x k, Z-basis of numerator
    SmithForm basis_snf_;
    SmithForm rel_snf_;     // SNF of relations in numerator coordinates
    std::vector<Int> orders_;
    std::vector<int> live_;
    AbelianGroup group_;
};

// --- sparse integer elimination -------------------------------------------

// Sparse matrix as columns of row -> coefficient maps.
using SparseCols = std::vector<std::map<int, Int>>;

// Unimodular elimination of +-1 pivots (Markowitz pivoting).  SNF(A) is
// diag(1, ..., 1, SNF(residual)) with `units` leading ones, so rank and
// invariant factors of large sparse matrices reduce to a small dense SNF.
struct SparseElim {
    long units = 0;
    Mat residual;
};

inline SparseElim sparse_unit_eliminate(SparseCols cols, int nrows) {
    int ncols = static_cast<int>(cols.size());
    std::vector<std::set<int>> row_cols(nrows);
    for (int c = 0; c < ncols; ++c)
        for (const auto& [r, v] : cols[c]) {
            if (v != 0) row_cols[r].insert(c);
        }
    std::vector<char> row_alive(nrows, 1), col_alive(ncols, 1);
    SparseElim out;
    for (;;) {
        int pr = -1, pc = -1;
        long best = -1;
        for (int c = 0; c < ncols && best != 0; ++c) {
            if (!col_alive[c]) continue;
            for (const auto& [r, v] : cols[c]) {
                if (v != 1 && v != -1) continue;
                long cost = static_cast<long>(row_cols[r].size() - 1) *
                            static_cast<long>(cols[c].size() - 1);
                if (best < 0 || cost < best) {
                    best = cost;
                    pr = r;
                    pc = c;
                }
                if (best == 0) break;
            }
        }
        if (pr < 0) break;
        Int v = cols[pc].at(pr);  // +-1
        std::map<int, Int> pivot_col = cols[pc];
        std::vector<int> touched(row_cols[pr].begin(), row_cols[pr].end());
        for (int c : touched) {
            if (c == pc || !col_alive[c]) continue;
            Int f = cols[c].at(pr) * v;  // a[pr][c] / v since v = +-1
            for (const auto& [r, w] : pivot_col) {
                Int& x = cols[c][r];
                bool had = x != 0;
                x -= f * w;
                if (x == 0) {
                    cols[c].erase(r);
                    if (had) row_cols[r].erase(c);
                } else if (!had) {
                    row_cols[r].insert(c);
                }
            }
        }
        // Row pr is now supported on column pc only; clearing column pc by
        // row operations touches nothing else, so both just disappear.
        for (const auto& [r, w] : pivot_col) row_cols[r].erase(pc);
        col_alive[pc] = 0;
        row_alive[pr] = 0;
        cols[pc].clear();
        ++out.units;
    }
    std::vector<int> rmap(nrows, -1), cmap(ncols, -1);
    int rr = 0, rc = 0;
    for (int r = 0; r < nrows; ++r)
        if (row_alive[r] && !row_cols[r].empty()) rmap[r] = rr++;
    for (int c = 0; c < ncols; ++c)
        if (col_alive[c] && !cols[c].empty()) cmap[c] = rc++;
    out.residual = Mat(rr, rc);
    for (int c = 0; c < ncols; ++c) {
        if (cmap[c] < 0) continue;
        for (const auto& [r, w] : cols[c]) out.residual(rmap[r], cmap[c]) = w;
    }
    return out;
}

inline int sparse_rank(SparseCols cols, int nrows) {
    SparseElim e = sparse_unit_eliminate(std::move(cols), nrows);
    return static_cast<int>(e.units) + smith_normal_form(e.residual).rank;
}

// Homology at the middle of  Z^a --d_in--> Z^n --d_out--> Z^b, assuming
// d_out * d_in = 0: rank = n - rank(d_out) - rank(d_in), torsion = the
// nontrivial invariant factors of d_in (the kernel is saturated).
inline AbelianGroup homology_group_sparse(SparseCols d_in, int n, SparseCols d_out,
                                          int nrows_out) {
    int rank_out = sparse_rank(std::move(d_out), nrows_out);
    SparseElim e = sparse_unit_eliminate(std::move(d_in), n);
    SmithForm s = smith_normal_form(e.residual);
    AbelianGroup g;
    g.rank = n - rank_out - static_cast<int>(e.units) - s.rank;
    for (const Int& f : s.factors)
        if (f > 1) g.torsion.push_back(f);
    return g;
}

// Homology at the middle of  Z^a --d_in--> Z^n --d_out--> Z^b.
inline AbelianGroup homology_group(const Mat& d_in, const Mat& d_out) {
    if (d_in.cols() > 0 && d_out.rows() > 0 && !(d_out * d_in).is_zero())
        throw std::runtime_error("homology: d_out * d_in != 0");
    Mat ker = kernel_basis(smith_normal_form(d_out));
    return Subquotient(ker, d_in).group();
}

}  // namespace stkh
