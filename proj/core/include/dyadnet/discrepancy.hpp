#pragma once

#include <cstdint>

#include "dyadnet/netgen.hpp"
#include "dyadnet/rational.hpp"

namespace dyadnet {

// Delta(t, P) = (1/N) #\{z in P : z in [0,t1) x [0,t2)\} - t1*t2, exact.
Rational local_discrepancy(const DyadicPointSet& p, const Rational& t1, const Rational& t2);

// (N * L2(P))^2 by the three-term pairwise formula, exact. O(N^2).
// The exact-rational pair loop is practical up to about N = 2^10.
Rational warnock_l2_squared(const DyadicPointSet& p);

// Unscaled ||Delta||^2 = warnock_l2_squared / N^2, exact division.
Rational l2_squared(const DyadicPointSet& p);

// Exact sup of |Delta| over [0,1]^2. The supremum is attained only as a
// one-sided limit at grid values, so both the with-boundary and
// without-boundary counts are evaluated at every critical grid node.
Rational star_discrepancy(const DyadicPointSet& p);

struct McEstimate {
    double estimate = 0.0;   // p-th root of the sample mean of |Delta|^p
    double std_error = 0.0;  // delta-method standard error of `estimate`
};

// Plain Monte-Carlo estimate of L_p(P), p in (1, inf). Sample i is a pure
// function of (seed, i), so the result is identical for any thread count.
// Throws std::invalid_argument for p <= 1 or non-finite p.
McEstimate lp_discrepancy_mc(const DyadicPointSet& p, double pexp, std::uint64_t samples,
                             std::uint64_t seed, unsigned threads = 1);

}  // namespace dyadnet
