#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "dyadnet/haar.hpp"
#include "dyadnet/netgen.hpp"
#include "dyadnet/rational.hpp"

namespace dyadnet::testing {

inline Bits bits(std::initializer_list<int> v) {
    Bits b;
    for (int x : v) b.push_back(static_cast<std::uint8_t>(x));
    return b;
}

inline Bits bits_of(unsigned value, int len) {
    Bits b(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) b[i] = (value >> i) & 1u;
    return b;
}

inline Bits random_bits(std::mt19937_64& rng, int len) {
    Bits b(static_cast<std::size_t>(len));
    for (auto& v : b) v = static_cast<std::uint8_t>(rng() & 1u);
    return b;
}

// Independent slow oracle for Haar coefficients: integrates Delta * h_{j,m}
// piecewise over the constant-sign rectangles of h, using only indicator
// volumes and the antiderivative of t1*t2. Shares no code with the
// per-point tent formulas it checks.
inline Rational slow_haar_coefficient(const DyadicPointSet& p, const HaarIndex& idx) {
    struct Piece {
        Rational lo, hi;
        int sign;
    };
    auto pieces = [](int j, std::uint64_t m) {
        std::vector<Piece> out;
        if (j == -1) {
            out.push_back({Rational(0), Rational(1), 1});
        } else {
            const Rational lo = frac(static_cast<long>(m), 1L << j);
            const Rational mid = frac(static_cast<long>(2 * m + 1), 2L << j);
            const Rational hi = frac(static_cast<long>(m + 1), 1L << j);
            out.push_back({lo, mid, 1});
            out.push_back({mid, hi, -1});
        }
        return out;
    };

    const Rational scale = pow2(p.resolution);
    const unsigned long n_points = static_cast<unsigned long>(p.size());
    Rational total(0);
    for (const Piece& px : pieces(idx.j1, idx.m1)) {
        for (const Piece& py : pieces(idx.j2, idx.m2)) {
            Rational mass(0);  // integral over the rectangle of the counting part
            for (const auto& pt : p.points) {
                const Rational zx = Rational(pt.x) / scale;
                const Rational zy = Rational(pt.y) / scale;
                Rational w1 = px.hi - std::max(px.lo, zx);
                Rational w2 = py.hi - std::max(py.lo, zy);
                if (w1 < 0) w1 = 0;
                if (w2 < 0) w2 = 0;
                mass += w1 * w2;
            }
            const Rational lin =
                (px.hi * px.hi - px.lo * px.lo) / 2 * ((py.hi * py.hi - py.lo * py.lo) / 2);
            total += Rational(px.sign * py.sign) * (mass / n_points - lin);
        }
    }
    return total;
}

// All (a, shift) pairs, exhaustive for n <= cutoff, `trials` random above.
inline std::vector<std::pair<Bits, Bits>> pa_parameter_cases(int n, int cutoff, int trials,
                                                             std::mt19937_64& rng) {
    std::vector<std::pair<Bits, Bits>> cases;
    if (n <= cutoff) {
        for (unsigned av = 0; av < (1u << (n - 1)); ++av)
            for (unsigned sv = 0; sv < (1u << n); ++sv)
                cases.emplace_back(bits_of(av, n - 1), bits_of(sv, n));
    } else {
        for (int t = 0; t < trials; ++t)
            cases.emplace_back(random_bits(rng, n - 1), random_bits(rng, n));
    }
    return cases;
}

}  // namespace dyadnet::testing
