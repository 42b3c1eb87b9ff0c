#pragma once

#include <cstdint>
#include <vector>

#include "dyadnet/netgen.hpp"
#include "dyadnet/rational.hpp"

namespace dyadnet {

// Address of one Haar coefficient: levels j1, j2 >= -1 and translations
// m_i in {0..2^{j_i}-1} (m_i = 0 when j_i = -1). h_{-1,0} is the constant 1;
// for j >= 0, h_{j,m} is +1 on the left half of [m/2^j, (m+1)/2^j), -1 on
// the right half. Coefficients are in the L_inf-normalized convention; the
// 2^{|j|} weight enters only at Parseval time.
struct HaarIndex {
    int j1 = -1, j2 = -1;
    std::uint64_t m1 = 0, m2 = 0;

    int level() const { return (j1 > 0 ? j1 : 0) + (j2 > 0 ? j2 : 0); }
    bool valid() const;
};

enum class Region { J1 = 1, J2, J3, J4, J5, J6, J7, J8, J9, J10, J11, J12, J13 };

const char* region_name(Region r);

// The unique region of the 13-set partition containing (j1, j2).
Region classify_region(int j1, int j2, int n);

// True when the region contains no index for this n (small-n degeneracies).
bool region_empty(Region r, int n);

// Points of P lying in the open dyadic box I_{j,m} (boundary excluded;
// a j_i = -1 axis imposes no constraint).
std::vector<DyadicPoint> box_points(const DyadicPointSet& p, const HaarIndex& idx);

// Exact Haar coefficient mu_{j,m} = <Delta(.,P), h_{j,m}> of the
// discrepancy function, via the closed per-point formulas.
Rational haar_coefficient(const DyadicPointSet& p, const HaarIndex& idx);

// Closed-form coefficient for the PA-family net, by region. Signs follow
// the generic formulas.
Rational case_coefficient_pa(int n, const Bits& a, const Bits& shift, const HaarIndex& idx);

// Closed-form coefficient for the symmetrized PA-family net; equals
// (case(shift) + case(complement)) / 2 and is implemented that way for
// J11/J12, with direct closed forms elsewhere.
Rational sym_case_coefficient_pa(int n, const Bits& a, const Bits& shift, const HaarIndex& idx);

enum class SumMethod { Closed, Direct };

// sum_{j in region} 2^{|j|} sum_m mu^2 for the PA net. Closed evaluates the
// per-region closed form; Direct sums generic coefficients on the generated
// net (index-only tail regions J4/J7/J13 are summed as geometric series).
Rational region_parseval_sum(int n, const Bits& a, const Bits& shift, Region r, SumMethod method);
Rational sym_region_parseval_sum(int n, const Bits& a, const Bits& shift, Region r, SumMethod method);

// Exact Parseval mass of all indices with j1 >= n or j2 >= n (including the
// j = -1 rows): no point of a resolution-n set lies in the interior of a
// finer dyadic box, so those coefficients are index-only.
Rational tail_sum(int n);

// ||Delta(.,P)||^2 via Parseval: finite sweep j1,j2 in {-1..n-1} plus
// tail_sum(n). Requires every coordinate of P to be a multiple of 2^-n
// (throws std::domain_error otherwise). Equals warnock_l2_squared / N^2.
Rational parseval_l2_squared(const DyadicPointSet& p, int n);

// Magnitude classification audit of the coefficients of a PA net.
struct BranchStat {
    long checked = 0;
    long violations = 0;      // exact-equality branches only
    double max_scaled = 0.0;  // bounded branches: max |mu| * 2^{claimed scale}
};

struct CoefficientAudit {
    int n = 0;
    // j = (j1, j2), j1, j2 >= 0
    BranchStat i;     // j1 = 0, j2 <= n-2:          |mu| <~ 2^{-n-j2}
    BranchStat ii;    // j1 >= 1, j1+j2 < n-1:       |mu| = 2^{-2n-2}
    BranchStat iii;   // j1+j2 >= n-1, j1,j2 <= n:   |mu| <~ 2^{-n-j1-j2}
    BranchStat iv;    // j1 >= n or j2 >= n:         |mu| = 2^{-2j1-2j2-4}
    // j = (-1, j2)
    BranchStat v;     // j2 < n:                     |mu| <~ 2^{-n-j2}
    BranchStat vi;    // j2 >= n:                    |mu| = 2^{-2j2-3}
    // j = (j1, -1)
    BranchStat vii;   // j1 = 0: matches the closed-form value exactly
    BranchStat viii;  // 1 <= j1 < n:                |mu| <~ 2^{-n-j1}
    BranchStat ix;    // j1 >= n:                    |mu| = 2^{-2j1-3}
    BranchStat corner;  // j = (-1,-1): matches the closed-form value exactly

    long iii_max_exceptions_per_j = 0;  // max over j of #{m : |mu| != 2^{-2j1-2j2-4}}
    long iii_allowed_exceptions = 0;    // 2^n

    bool exact_branches_ok() const {
        return ii.violations == 0 && iv.violations == 0 && vi.violations == 0 &&
               ix.violations == 0 && vii.violations == 0 && corner.violations == 0 &&
               iii_max_exceptions_per_j <= iii_allowed_exceptions;
    }
};

// Sweeps j1, j2 in {-1 .. n+2} on the generated PA net.
CoefficientAudit coefficient_bound_audit(int n, const Bits& a, const Bits& shift);

}  // namespace dyadnet
