#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>

namespace stkh {

using Int = boost::multiprecision::cpp_int;

// Laurent polynomial in one variable with arbitrary-precision integer
// coefficients.  Zero coefficients are never stored.  Which variable the
// exponents refer to (A, q, t) is decided by the caller.
class Laurent {
public:
    Laurent() = default;

    static Laurent monomial(const Int& coeff, int exp) {
        Laurent p;
        if (coeff != 0) p.coeff_[exp] = coeff;
        return p;
    }

    static Laurent one() { return monomial(1, 0); }

    const std::map<int, Int>& terms() const { return coeff_; }
    bool is_zero() const { return coeff_.empty(); }

    Int coeff(int exp) const {
        auto it = coeff_.find(exp);
        return it == coeff_.end() ? Int(0) : it->second;
    }

    void add_term(int exp, const Int& c) {
        if (c == 0) return;
        auto it = coeff_.find(exp);
        if (it == coeff_.end()) {
            coeff_[exp] = c;
        } else {
            it->second += c;
            if (it->second == 0) coeff_.erase(it);
        }
    }

    Laurent& operator+=(const Laurent& o) {
        for (const auto& [e, c] : o.coeff_) add_term(e, c);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) {
        for (const auto& [e, c] : o.coeff_) add_term(e, -c);
        return *this;
    }
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (const auto& [ea, ca] : a.coeff_)
            for (const auto& [eb, cb] : b.coeff_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    friend bool operator==(const Laurent& a, const Laurent& b) {
        return a.coeff_ == b.coeff_;
    }
    friend bool operator!=(const Laurent& a, const Laurent& b) {
        return !(a == b);
    }

    // Substitutes x -> x^k (k may be negative or, when every exponent is
    // divisible by |k|... no: this scales exponents exactly).
    Laurent scale_exponents(int k) const {
        Laurent r;
        for (const auto& [e, c] : coeff_) r.add_term(e * k, c);
        return r;
    }

    // Divides every exponent by k; every exponent must be divisible by k.
    Laurent divide_exponents(int k) const {
        Laurent r;
        for (const auto& [e, c] : coeff_) {
            if (e % k != 0) throw std::runtime_error("laurent: exponent not divisible");
            r.add_term(e / k, c);
        }
        return r;
    }

    // Coefficient-wise absolute values.
    Laurent abs_coeffs() const {
        Laurent r;
        for (const auto& [e, c] : coeff_) r.add_term(e, c < 0 ? Int(-c) : c);
        return r;
    }

    Int l1_norm() const {
        Int s = 0;
        for (const auto& [e, c] : coeff_) s += c < 0 ? Int(-c) : c;
        return s;
    }

    std::string str(const std::string& var) const {
        if (coeff_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : coeff_) {
            Int a = c;
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            bool unit = (a == 1) && e != 0;
            if (!unit) os << a.str();
            if (e != 0) {
                if (!unit) os << "*";
                os << var;
                if (e != 1) os << "^" << e;
            }
        }
        return os.str();
    }

private:
    std::map<int, Int> coeff_;
};

}  // namespace stkh
