#include "dyadnet/formulas.hpp"

#include <cmath>
#include <stdexcept>


namespace dyadnet {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

Rational pa_closed_form(int n, long ell, long L, int sigma_n) {
    Rational v = frac(1, 64) *
                 (Rational((ell - L) * (ell - L) + L * L + 8 * ell - 10 * L) + frac(5L * n, 3));
    v += Rational(2 * sigma_n * L - ell + 4) * pow2(-n - 4);
    v += frac(3, 8) - frac(1, 9) * pow2(-2 * n - 3);
    return v;
}

}  // namespace

ShiftParams shift_params(Family family, int n, const Bits& weights, const Bits& shift) {
    require(n >= 1, "n must be >= 1");
    require(shift.size() == static_cast<std::size_t>(n), "shift length must equal n");
    require(family == Family::PA || family == Family::PC, "shift statistics need the PA or PC family");
    require(weights.size() == static_cast<std::size_t>(n - 1), "weight vector length must be n-1");
    ShiftParams sp;
    for (int i = 0; i < n; ++i) sp.ell += 1 - 2 * shift[i];
    if (family == Family::PA) {
        for (int i = 1; i <= n - 1; ++i) sp.L += weights[i - 1] * (1 - 2 * shift[i - 1]);
    } else {
        for (int i = 2; i <= n; ++i) sp.L += weights[i - 2] * (1 - 2 * shift[i - 1]);
    }
    return sp;
}

Rational l2sq_pa(int n, const Bits& a, const Bits& shift) {
    const ShiftParams sp = shift_params(Family::PA, n, a, shift);
    return pa_closed_form(n, sp.ell, sp.L, shift[n - 1]);
}

Rational l2sq_pa_unshifted(int n, int weight) {
    require(n >= 1 && weight >= 0 && weight <= n - 1, "weight must be in [0, n-1]");
    Rational v = frac(1, 64) *
                 (Rational((n - weight) * (n - weight) + weight * weight - 10 * weight) +
                  frac(29L * n, 3));
    v += frac(3, 8) - Rational(n - 4) * pow2(-n - 4) - frac(1, 9) * pow2(-2 * n - 3);
    return v;
}

Rational l2sq_pa_shift_average(int n) {
    require(n >= 1, "n must be >= 1");
    return frac(n, 24) + frac(3, 8) + pow2(-n - 2) - frac(1, 9) * pow2(-2 * n - 3);
}

Rational l2sq_hammersley_shifted(int n, int z) {
    require(n >= 1 && z >= 0 && z <= n, "z must be in [0, n]");
    return pa_closed_form(n, 2L * z - n, 0, z > 0 ? 0 : 1);
}

Rational l2sq_sym_pa(int n, const Bits& a, const Bits& shift) {
    const ShiftParams sp = shift_params(Family::PA, n, a, shift);
    const int sign = shift[n - 1] ? -1 : 1;
    return frac(n, 24) + frac(11, 8) + pow2(-n) - frac(1, 9) * pow2(-2 * n - 1) -
           Rational(sign * sp.L) * pow2(-n - 2);
}

Rational l2sq_pc(int n, const Bits& c, const Bits& shift) {
    const ShiftParams sp = shift_params(Family::PC, n, c, shift);
    const long ell = sp.ell, L = sp.L;
    Rational v = frac(1, 64) *
                 (Rational((ell - L) * (ell - L) + L * L + 8 * ell + 2 * L * (2 * shift[0] - 5)) +
                  frac(5L * n, 3));
    v -= Rational(ell - 4) * pow2(-n - 4);
    v += frac(3, 8) - frac(1, 9) * pow2(-2 * n - 3);
    return v;
}

Rational l2sq_pc_unshifted(int n, int weight) {
    return l2sq_pa_unshifted(n, weight);
}

Rational mu_m10_pc(int n, const Bits& shift) {
    require(n >= 1, "n must be >= 1");
    require(shift.size() == static_cast<std::size_t>(n), "shift length must equal n");
    long s = 0;
    for (int k = 2; k <= n; ++k) s += 1 ^ shift[k - 1] ^ shift[0];
    return pow2(-2 * n - 2) - Rational(n) * pow2(-n - 3) - Rational(shift[0]) * pow2(-2 * n - 1) +
           Rational(s) * pow2(-n - 2);
}

Rational sym_mu_m10_pc(int n, const Bits& shift) {
    require(n >= 1, "n must be >= 1");
    require(shift.size() == static_cast<std::size_t>(n), "shift length must equal n");
    long s = 0;
    for (int k = 2; k <= n; ++k) s += 1 ^ shift[k - 1] ^ shift[0];
    return -Rational(n) * pow2(-n - 3) + Rational(s) * pow2(-n - 2);
}

Rational sym_pc_j_m10_term(int n, const Bits& c, const Bits& shift) {
    const ShiftParams sp = shift_params(Family::PC, n, c, shift);
    const long L = sp.L;
    const long mid = 1 - 2 * shift[0];
    return Rational(L * L - 2 * mid * L + 1) * pow2(-2 * n - 6);
}

Bits ptri_l_params(int n, const Bits& tri, int mu) {
    require(n >= 1 && mu >= 1 && mu <= n, "mu must be in [1, n]");
    require(tri.size() == static_cast<std::size_t>(n) * (n - 1) / 2, "|tri| must be n(n-1)/2");
    // Entry a_{i,j} (1 <= i < j <= n) sits at row-major offset
    // (i-1)(2n-i)/2 + (j-i-1).
    auto entry = [&](int i, int j) {
        return tri[static_cast<std::size_t>(i - 1) * (2 * n - i) / 2 + (j - i - 1)];
    };
    Bits l(static_cast<std::size_t>(mu));
    l[mu - 1] = 1;
    for (int k = 1; k < mu; ++k) {
        std::uint8_t v = 1;
        for (int i = k + 1; i <= mu; ++i)
            if (entry(k, i)) {
                v = 0;
                break;
            }
        l[k - 1] = v;
    }
    return l;
}

std::pair<Rational, Rational> ptri_corner_coefficients(int n, const Bits& tri) {
    long sum_n = 0, sum_n1 = 0;
    for (auto v : ptri_l_params(n, tri, n)) sum_n += v;
    if (n >= 2)
        for (auto v : ptri_l_params(n, tri, n - 1)) sum_n1 += v;
    Rational mu_corner = Rational(sum_n) * pow2(-n - 3) + pow2(-n - 1) + pow2(-2 * n - 2);
    Rational mu_x = Rational(sum_n1 - sum_n) * pow2(-n - 3) + pow2(-2 * n - 2);
    return {mu_corner, mu_x};
}

OrderDiagnostics order_diagnostics(Family family, int n, const Bits& weights, const Bits& shift,
                                   double c) {
    const ShiftParams sp = shift_params(family, n, weights, shift);
    OrderDiagnostics d;
    d.ell = sp.ell;
    d.L = sp.L;
    const double rn = std::sqrt(static_cast<double>(n));
    d.ratio_ellL = std::abs(static_cast<double>(sp.ell - sp.L)) / rn;
    d.ratio_L = std::abs(static_cast<double>(sp.L)) / rn;
    d.sym_optimal = family == Family::PA || std::abs(static_cast<double>(sp.L)) <= c * rn;
    return d;
}

Bits balanced_shift(int n, const Bits& a) {
    require(n >= 1, "n must be >= 1");
    require(a.size() == static_cast<std::size_t>(n - 1), "|a| must be n-1");
    Bits sigma(static_cast<std::size_t>(n), 0);
    int c0 = 0, c1 = 0;
    for (int i = 0; i < n - 1; ++i) {
        int& cnt = a[i] ? c1 : c0;
        sigma[i] = static_cast<std::uint8_t>(cnt & 1);
        ++cnt;
    }
    sigma[n - 1] = 0;
    return sigma;
}

BilykReport bilyk_counterexample_report(int n) {
    require(n >= 2, "n must be >= 2");
    BilykReport r;
    r.n = n;
    r.mu_corner = pow2(-2 * n - 2) + Rational(5) * pow2(-n - 3);
    r.one_over_n2 = pow2(-n);
    r.l2sq_scaled = l2sq_pa_unshifted(n, n - 1);
    r.n_sq_ratio = r.l2sq_scaled.get_d() * 64.0 / (static_cast<double>(n) * n);
    r.corner_small = r.mu_corner <= r.one_over_n2;
    return r;
}

}  // namespace dyadnet
