#pragma once

#include "stkh/diagram.hpp"
#include "stkh/laurent.hpp"

namespace stkh {

// Kauffman bracket by the full state sum over all 2^n smoothings:
// <D> = sum_s A^{sigma(s)} (-A^2 - A^{-2})^{loops(s)-1}, exponents of A.
inline Laurent state_sum_bracket(const Diagram& d) {
    int n = d.crossing_count();
    Laurent delta;  // -A^2 - A^-2
    delta.add_term(2, -1);
    delta.add_term(-2, -1);
    // delta powers up to max loop count.
    std::vector<Laurent> delta_pow = {Laurent::one()};
    Laurent total;
    std::vector<Marker> markers(n, Marker::A);
    for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
        int b = 0;
        for (int c = 0; c < n; ++c) {
            bool is_b = (mask >> c) & 1;
            markers[c] = is_b ? Marker::B : Marker::A;
            if (is_b) ++b;
        }
        auto [loop, count] = d.smooth_loops(markers);
        (void)loop;
        while (static_cast<int>(delta_pow.size()) < count)
            delta_pow.push_back(delta_pow.back() * delta);
        int sigma = (n - b) - b;
        total += Laurent::monomial(1, sigma) * delta_pow[count - 1];
    }
    return total;
}

// Kauffman-bracket normalization of the Jones polynomial, as a polynomial
// in q = A^-2 (so t = q^2; knots give even q-exponents only):
// V = (-A)^{-3w} <D> with t = A^-4.
inline Laurent jones_q_from_bracket(const Laurent& bracket, int writhe) {
    Laurent v = Laurent::monomial((writhe % 2 == 0) ? 1 : -1, -3 * writhe) * bracket;
    // A-exponent e becomes q-exponent -e/2.
    Laurent r;
    for (const auto& [e, c] : v.terms()) {
        if (e % 2 != 0) throw std::runtime_error("bracket has odd A-exponent");
        r.add_term(-e / 2, c);
    }
    return r;
}

}  // namespace stkh
