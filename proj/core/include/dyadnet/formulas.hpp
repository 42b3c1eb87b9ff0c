#pragma once

#include "dyadnet/netgen.hpp"
#include "dyadnet/rational.hpp"

namespace dyadnet {

// Shift statistics: ell = sum_i (1 - 2 sigma_i); L = sum_i w_i (1 - 2 sigma_i)
// with weights a_1..a_{n-1} (PA) or c_2..c_n (PC).
struct ShiftParams {
    long ell = 0;
    long L = 0;
};

ShiftParams shift_params(Family family, int n, const Bits& weights, const Bits& shift);

// (2^n L2)^2 of the shifted PA net, closed form.
Rational l2sq_pa(int n, const Bits& a, const Bits& shift);

// (2^n L2)^2 of the unshifted PA net; depends only on |a|.
Rational l2sq_pa_unshifted(int n, int weight);

// Mean of (2^n L2)^2 over all 2^n shifts; independent of a.
Rational l2sq_pa_shift_average(int n);

// (2^n L2)^2 of the shifted Hammersley net (a = 0), keyed by the number z
// of zero shift digits. Specialization of l2sq_pa with ell = 2z - n, L = 0;
// cross-checked against the pairwise-sum route.
Rational l2sq_hammersley_shifted(int n, int z);

// (2^{n+1} L2)^2 of the symmetrized shifted PA net.
Rational l2sq_sym_pa(int n, const Bits& a, const Bits& shift);

// (2^n L2)^2 of the shifted PC net and its unshifted |c|-only form.
Rational l2sq_pc(int n, const Bits& c, const Bits& shift);
Rational l2sq_pc_unshifted(int n, int weight);

// Haar coefficient mu_{(-1,0),(0,0)} of the PC net with c = (1,...,1),
// and its symmetrized counterpart (= 2^{-n-3}(n-2) at shift 0).
Rational mu_m10_pc(int n, const Bits& shift);
Rational sym_mu_m10_pc(int n, const Bits& shift);

// 2^{|j|} sum_m mu~^2 at j = (-1,0) for the symmetrized PC net:
// 2^{-2n-6} (L^2 - 2(1-2 sigma_1) L + 1).
Rational sym_pc_j_m10_term(int n, const Bits& c, const Bits& shift);

// Triangular-net parameters: l_mu(k) = 1 iff row k of C2 has no 1 in
// columns k+1..mu (l_mu(mu) = 1). Returns (l_mu(1), ..., l_mu(mu)).
Bits ptri_l_params(int n, const Bits& tri, int mu);

// Corner coefficients mu_{(-1,-1),(0,0)} and mu_{(0,-1),(0,0)} of the
// unshifted triangular net.
std::pair<Rational, Rational> ptri_corner_coefficients(int n, const Bits& tri);

struct OrderDiagnostics {
    long ell = 0;
    long L = 0;
    double ratio_ellL = 0.0;  // |ell - L| / sqrt(n)
    double ratio_L = 0.0;     // |L| / sqrt(n)
    bool sym_optimal = false; // PA: always; PC: |L| <= C sqrt(n)
};

OrderDiagnostics order_diagnostics(Family family, int n, const Bits& weights, const Bits& shift,
                                   double c = 1.0);

// Deterministic shift with balanced zeros/ones within {i : a_i = 1} and
// {i < n : a_i = 0}: alternate 0,1,0,1,... in increasing index order in
// each group; sigma_n = 0. Guarantees |L| <= 1 and |ell - L| <= 2.
Bits balanced_shift(int n, const Bits& a);

// The a = (1,...,1) net: corner coefficient small (<= 1/N) while the L2
// discrepancy stays of maximal order n/8 in the (2^n L2) scale.
struct BilykReport {
    int n = 0;
    Rational mu_corner;      // 2^{-2n-2} + 5*2^{-n-3}
    Rational one_over_n2;    // 1/2^n
    Rational l2sq_scaled;    // (2^n L2)^2 at |a| = n-1
    double n_sq_ratio = 0.0; // l2sq_scaled / (n^2/64)
    bool corner_small = false;  // mu_corner <= 1/2^n
};

BilykReport bilyk_counterexample_report(int n);

}  // namespace dyadnet
