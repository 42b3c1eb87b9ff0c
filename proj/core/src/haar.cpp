#include "dyadnet/haar.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace dyadnet {

namespace {

constexpr int kMaxLevel = 40;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Digit k (1-based, most significant first) of m = sum_k d_k 2^{j-k}.
inline int mdig(std::uint64_t m, int j, int k) { return static_cast<int>((m >> (j - k)) & 1u); }

// Integer tent numerator: 2^{res-j-1} * (1 - |2m+1 - 2^{j+1} z|) for
// z = Z/2^res, valid for 0 <= j < res. Positive iff z is interior to I_{j,m}.
inline std::int64_t tent_num(std::uint64_t Z, int res, int j, std::uint64_t m) {
    const std::int64_t half = 1LL << (res - j - 1);
    const std::int64_t mid = static_cast<std::int64_t>(2 * m + 1) * half;
    const std::int64_t d = mid - static_cast<std::int64_t>(Z);
    return half - (d < 0 ? -d : d);
}

struct PaCtx {
    int n;
    const Bits& a;
    const Bits& shift;

    int av(int k) const { return (k >= 1 && k <= n - 1) ? a[k - 1] : 0; }
    int sg(int k) const { return shift[k - 1]; }
    int sgp(int k) const { return sg(k) ^ av(k); }
    int ell() const {
        int e = 0;
        for (int i = 1; i <= n; ++i) e += 1 - 2 * sg(i);
        return e;
    }
    int bigL() const {
        int l = 0;
        for (int i = 1; i <= n - 1; ++i) l += av(i) * (1 - 2 * sg(i));
        return l;
    }
};

void validate_pa(int n, const Bits& a, const Bits& shift) {
    require(n >= 1, "n must be >= 1");
    require(a.size() == static_cast<std::size_t>(n - 1), "|a| must be n-1");
    require(shift.size() == static_cast<std::size_t>(n), "shift length must equal n");
}

// Rescales to resolution n; throws if a coordinate is not a multiple of 2^-n.
DyadicPointSet at_resolution(const DyadicPointSet& p, int n) {
    if (n < 0 || n > 24) throw std::invalid_argument("resolution must be in [0, 24]");
    DyadicPointSet out;
    out.resolution = n;
    out.points.reserve(p.size());
    const int d = p.resolution - n;
    for (const auto& pt : p.points) {
        if (d > 0) {
            const std::uint64_t mask = (1ULL << d) - 1;
            if ((pt.x & mask) || (pt.y & mask))
                throw std::domain_error("coordinates are not multiples of 2^-n");
            out.points.push_back({pt.x >> d, pt.y >> d});
        } else {
            out.points.push_back({pt.x << -d, pt.y << -d});
        }
    }
    return out;
}

// Additive index-only part of the coefficient (the -t1*t2 contribution);
// for a box with no interior points it is the whole coefficient.
Rational empty_box_mu(int j1, int j2) {
    if (j1 == -1 && j2 == -1) return frac(-1, 4);
    if (j2 == -1) return pow2(-2 * j1 - 3);
    if (j1 == -1) return pow2(-2 * j2 - 3);
    return -pow2(-2 * j1 - 2 * j2 - 4);
}

// 2^{|j|} * sum_{m in D_j} mu_{j,m}^2 for a point set at resolution res,
// requiring j1, j2 <= res - 1. One pass over the points per call.
Rational level_mass(const DyadicPointSet& p, int j1, int j2) {
    const int res = p.resolution;
    const std::uint64_t N = p.size();
    const int s2exp = (j2 >= 0 ? j2 : 0);

    std::unordered_map<std::uint64_t, __int128> acc;
    acc.reserve(p.size() * 2);
    for (const auto& pt : p.points) {
        std::int64_t t1, t2;
        std::uint64_t m1 = 0, m2 = 0;
        if (j1 >= 0) {
            m1 = pt.x >> (res - j1);
            t1 = tent_num(pt.x, res, j1, m1);
            if (t1 <= 0) continue;
        } else {
            t1 = static_cast<std::int64_t>((1ULL << res) - pt.x);
        }
        if (j2 >= 0) {
            m2 = pt.y >> (res - j2);
            t2 = tent_num(pt.y, res, j2, m2);
            if (t2 <= 0) continue;
        } else {
            t2 = static_cast<std::int64_t>((1ULL << res) - pt.y);
        }
        acc[(m1 << s2exp) | m2] += static_cast<__int128>(t1) * t2;
    }

    const Rational denom(BigInt(N) * pow2z(2 * res));
    const Rational cst = empty_box_mu(j1, j2);
    const int sgn = ((j1 >= 0) == (j2 >= 0)) ? 1 : -1;
    const int level = (j1 > 0 ? j1 : 0) + (j2 > 0 ? j2 : 0);

    Rational total(0);
    for (const auto& [key, val] : acc) {
        Rational mu = Rational(sgn) * Rational(bigint_from_i128(val)) / denom + cst;
        total += mu * mu;
    }
    const BigInt boxes = pow2z(level);
    const BigInt empty = boxes - static_cast<long>(acc.size());
    total += Rational(empty) * cst * cst;
    return Rational(pow2z(level)) * total;
}

}  // namespace

bool HaarIndex::valid() const {
    if (j1 < -1 || j2 < -1 || j1 > kMaxLevel || j2 > kMaxLevel) return false;
    if (j1 == -1 && m1 != 0) return false;
    if (j2 == -1 && m2 != 0) return false;
    if (j1 >= 0 && m1 >= (1ULL << j1)) return false;
    if (j2 >= 0 && m2 >= (1ULL << j2)) return false;
    return true;
}

const char* region_name(Region r) {
    static const char* names[] = {"J1", "J2", "J3", "J4", "J5", "J6", "J7",
                                  "J8", "J9", "J10", "J11", "J12", "J13"};
    return names[static_cast<int>(r) - 1];
}

Region classify_region(int j1, int j2, int n) {
    require(j1 >= -1 && j2 >= -1, "region indices must be >= -1");
    require(n >= 1, "n must be >= 1");
    if (j1 == -1 && j2 == -1) return Region::J1;
    if (j1 == -1) {
        if (j2 >= n) return Region::J4;
        if (j2 == n - 1) return Region::J3;
        return Region::J2;
    }
    if (j2 == -1) {
        if (j1 >= n) return Region::J7;
        if (j1 == 0) return Region::J5;
        return Region::J6;
    }
    if (j1 >= n || j2 >= n) return Region::J13;
    if (j1 == 0) return j2 == n - 1 ? Region::J10 : Region::J8;
    if (j1 + j2 <= n - 2) return Region::J9;
    if (j1 + j2 == n - 1) return Region::J11;
    return Region::J12;
}

bool region_empty(Region r, int n) {
    switch (r) {
        case Region::J2:
        case Region::J6:
        case Region::J8:
        case Region::J11:
        case Region::J12: return n < 2;
        case Region::J9: return n < 3;
        default: return false;
    }
}

std::vector<DyadicPoint> box_points(const DyadicPointSet& p, const HaarIndex& idx) {
    require(idx.valid(), "invalid Haar index");
    std::vector<DyadicPoint> out;
    const int res = p.resolution;
    for (const auto& pt : p.points) {
        if (idx.j1 >= 0 && (idx.j1 >= res || tent_num(pt.x, res, idx.j1, idx.m1) <= 0)) continue;
        if (idx.j2 >= 0 && (idx.j2 >= res || tent_num(pt.y, res, idx.j2, idx.m2) <= 0)) continue;
        out.push_back(pt);
    }
    return out;
}

Rational haar_coefficient(const DyadicPointSet& p, const HaarIndex& idx) {
    require(idx.valid(), "invalid Haar index");
    if (p.points.empty()) throw std::domain_error("point set is empty");
    const int res = p.resolution;
    require(res <= 24, "resolution limited to 24");
    const std::uint64_t N = p.size();
    const std::uint64_t R = 1ULL << res;

    __int128 acc = 0;
    const bool skip1 = idx.j1 >= res;  // finer than the grid: no interior points
    const bool skip2 = idx.j2 >= res;
    if (!skip1 && !skip2) {
        for (const auto& pt : p.points) {
            std::int64_t t1, t2;
            if (idx.j1 >= 0) {
                t1 = tent_num(pt.x, res, idx.j1, idx.m1);
                if (t1 <= 0) continue;
            } else {
                t1 = static_cast<std::int64_t>(R - pt.x);
            }
            if (idx.j2 >= 0) {
                t2 = tent_num(pt.y, res, idx.j2, idx.m2);
                if (t2 <= 0) continue;
            } else {
                t2 = static_cast<std::int64_t>(R - pt.y);
            }
            acc += static_cast<__int128>(t1) * t2;
        }
    }

    const int sgn = ((idx.j1 >= 0) == (idx.j2 >= 0)) ? 1 : -1;
    Rational mu = Rational(sgn) * Rational(bigint_from_i128(acc)) /
                  Rational(BigInt(N) * pow2z(2 * res));
    if (idx.j1 == -1 && idx.j2 == -1)
        mu -= frac(1, 4);
    else if (idx.j2 == -1)
        mu += pow2(-2 * idx.j1 - 3);
    else if (idx.j1 == -1)
        mu += pow2(-2 * idx.j2 - 3);
    else
        mu -= pow2(-2 * idx.j1 - 2 * idx.j2 - 4);
    return mu;
}

Rational case_coefficient_pa(int n, const Bits& a, const Bits& shift, const HaarIndex& idx) {
    validate_pa(n, a, shift);
    require(idx.valid(), "invalid Haar index");
    const PaCtx c{n, a, shift};
    const int j1 = idx.j1, j2 = idx.j2;
    const std::uint64_t m1 = idx.m1, m2 = idx.m2;

    switch (classify_region(j1, j2, n)) {
        case Region::J1:
            return pow2(-n - 1) + pow2(-2 * n - 2) + Rational(c.ell() - c.bigL()) * pow2(-n - 3);
        case Region::J2: {
            Rational s(0);
            for (int k = 1; k <= j2; ++k) {
                const int sk = mdig(m2, j2, k);
                s += Rational((sk ^ c.sg(k)) + (sk ^ c.sgp(k))) * pow2(-(n + 1 - k));
            }
            return pow2(-2 * n - 2) - pow2(-n - j2 - 3) -
                   Rational(c.sg(j2 + 1) ^ (c.av(j2 + 1) & c.sg(n))) * pow2(-2 * n - 1) +
                   pow2(-2 * j2 - 3) * s;
        }
        case Region::J3: {
            Rational s(-c.sg(n));
            for (int k = 1; k <= n - 1; ++k)
                s += Rational(mdig(m2, n - 1, k) ^ (c.av(k) & (c.sg(n) ^ 1)) ^ c.sg(k)) * pow2(-(n - k));
            return pow2(-2 * n - 1) * s;
        }
        case Region::J4:
            return pow2(-2 * j2 - 3);
        case Region::J5:
            return pow2(-2 * n - 2) - pow2(-n - 3) + Rational(c.bigL()) * pow2(-n - 3) -
                   Rational(c.sg(n)) * pow2(-2 * n - 1);
        case Region::J6: {
            const int r1 = mdig(m1, j1, 1);
            Rational eps = Rational(r1 ^ c.sg(n)) * pow2(-n);
            for (int k = 2; k <= j1; ++k)
                eps += Rational(mdig(m1, j1, k) ^ (c.av(n + 1 - k) & r1) ^ c.sg(n + 1 - k)) *
                       pow2(-(n + 1 - k));
            Rational inner = pow2(2 * j1 + 1) - pow2(j1 + n) + pow2(2 * n + 1) * eps -
                             pow2(2 * j1 + 2) * Rational((c.av(n - j1) & r1) ^ c.sg(n - j1));
            return pow2(-2 * n - 2 * j1 - 3) * inner;
        }
        case Region::J7:
            return pow2(-2 * j1 - 3);
        case Region::J8: {
            Rational s(0);
            for (int k = 1; k <= j2; ++k)
                s += Rational(c.av(k) * (2 * (mdig(m2, j2, k) ^ c.sg(k)) - 1)) * pow2(-(n - k));
            const int f = 1 + 2 * c.sg(j2 + 1) * (c.sg(n) - 1) + 2 * c.sg(n) * (c.sgp(j2 + 1) - 1);
            return pow2(-2 * j2 - 4) * s + Rational(f) * pow2(-2 * n - 2);
        }
        case Region::J9: {
            const int r1 = mdig(m1, j1, 1);
            const int f = (2 * ((c.av(n - j1) & r1) ^ c.sg(j2 + 1)) - 1) *
                          (2 * ((c.av(j2 + 1) & r1) ^ c.sg(n - j1)) - 1);
            return Rational(f) * pow2(-2 * n - 2);
        }
        case Region::J10: {
            Rational s(0);
            for (int k = 1; k <= n - 1; ++k)
                s += Rational(mdig(m2, n - 1, k) ^ (c.av(k) & (c.sg(n) ^ 1)) ^ c.sg(k)) * pow2(-(n - k));
            return pow2(-2 * n - 2) * (Rational(1) - 2 * abs(Rational(c.sg(n)) - s));
        }
        case Region::J11: {
            const int r1 = mdig(m1, j1, 1);
            Rational u(0), v(0);
            for (int k = 2; k <= j1; ++k)
                u += Rational(mdig(m1, j1, k) ^ (c.av(n + 1 - k) & r1) ^ c.sg(n + 1 - k)) *
                     pow2(-(j1 - k + 1));
            const Rational w = Rational(r1 ^ c.sg(n)) * pow2(-j1);
            for (int k = 1; k <= j2; ++k)
                v += Rational(mdig(m2, j2, k) ^ (c.av(k) & r1) ^ c.sg(k)) * pow2(-(j2 - k + 1));
            const int beta = (c.av(j2 + 1) & r1) ^ c.sg(j2 + 1);
            const Rational f0 = Rational(1) - abs(Rational(1 - beta) - u - w);
            const Rational f1 = Rational(1) - abs(Rational(1 - (beta ^ 1)) - u - w);
            return pow2(-2 * n - 1) * (f0 * v + f1 * (Rational(1) - v)) - pow2(-2 * n - 2);
        }
        case Region::J12: {
            const int r1 = mdig(m1, j1, 1);
            for (int mu = n + 1 - j1; mu <= j2; ++mu) {
                if ((mdig(m2, j2, mu) ^ (c.av(mu) & r1) ^ c.sg(mu)) != mdig(m1, j1, n + 1 - mu))
                    return -pow2(-2 * j1 - 2 * j2 - 4);
            }
            Rational s1(0), s2(0);
            for (int k = 1; k <= n - j1; ++k)
                s1 += Rational(mdig(m2, j2, k) ^ (c.av(k) & r1) ^ c.sg(k)) * pow2(-(n - j1 - k));
            for (int k = 2; k <= n - j2; ++k)
                s2 += Rational(mdig(m1, j1, k) ^ (c.av(n + 1 - k) & r1) ^ c.sg(n + 1 - k)) *
                      pow2(-(n - j2 - k));
            s2 += Rational(r1 ^ c.sg(n)) * pow2(-(n - j2 - 1));
            const Rational f1 = Rational(1) - abs(Rational(1) - s1);
            const Rational f2 = Rational(1) - abs(Rational(1) - s2);
            return pow2(-n - j1 - j2 - 2) * f1 * f2 - pow2(-2 * j1 - 2 * j2 - 4);
        }
        case Region::J13:
            return -pow2(-2 * j1 - 2 * j2 - 4);
    }
    throw std::logic_error("unreachable");
}

Rational sym_case_coefficient_pa(int n, const Bits& a, const Bits& shift, const HaarIndex& idx) {
    validate_pa(n, a, shift);
    require(idx.valid(), "invalid Haar index");
    const PaCtx c{n, a, shift};
    const int j1 = idx.j1, j2 = idx.j2;
    const std::uint64_t m1 = idx.m1, m2 = idx.m2;

    switch (classify_region(j1, j2, n)) {
        case Region::J1:
            return pow2(-n - 1) + pow2(-2 * n - 2);
        case Region::J2: {
            const int g = 1 + c.av(j2 + 1) * (2 * (c.sg(j2 + 1) ^ c.sg(n)) - 1);
            return Rational(2) * pow2(-2 * n - 3) - pow2(-n - 2 * j2 - 3) -
                   Rational(g) * pow2(-2 * n - 2);
        }
        case Region::J3: {
            Rational s(0);
            for (int k = 1; k <= n - 1; ++k)
                s += Rational(c.av(k) * (1 - 2 * (mdig(m2, n - 1, k) ^ c.sg(k) ^ c.sg(n)))) *
                     pow2(-(n - k));
            return -pow2(-3 * n - 1) + pow2(-2 * n - 2) * s;
        }
        case Region::J4:
            return pow2(-2 * j2 - 3);
        case Region::J5:
            return -pow2(-n - 3);
        case Region::J6:
            return -pow2(-n - 2 * j1 - 3);
        case Region::J7:
            return pow2(-2 * j1 - 3);
        case Region::J8:
            return Rational((c.sg(j2 + 1) + c.sgp(j2 + 1) - 1) * (2 * c.sg(n) - 1)) *
                   pow2(-2 * n - 2);
        case Region::J9: {
            const int r1 = mdig(m1, j1, 1);
            return Rational((2 * ((c.av(n - j1) & r1) ^ c.sg(j2 + 1)) - 1) *
                            (2 * ((c.av(j2 + 1) & r1) ^ c.sg(n - j1)) - 1)) *
                   pow2(-2 * n - 2);
        }
        case Region::J10: {
            Rational s(0);
            for (int k = 1; k <= n - 1; ++k)
                s += Rational((1 - c.av(k)) * (2 * (mdig(m2, n - 1, k) ^ c.sg(k)) - 1)) *
                     pow2(-(n - k));
            const int sign = c.sg(n) ? 1 : -1;
            return Rational(sign) * pow2(-2 * n - 2) * s;
        }
        case Region::J13:
            return -pow2(-2 * j1 - 2 * j2 - 4);
        case Region::J11:
        case Region::J12:
            return (case_coefficient_pa(n, a, shift, idx) +
                    case_coefficient_pa(n, a, complement_shift(shift), idx)) /
                   2;
    }
    throw std::logic_error("unreachable");
}

namespace {

Rational closed_region_sum_pa(int n, const PaCtx& c, Region r) {
    if (region_empty(r, n)) return Rational(0);
    const int ell = c.ell(), L = c.bigL(), sn = c.sg(n);
    int ssum = 0;
    for (int i = 1; i <= n - 1; ++i) ssum += c.sg(i);
    // sum_{i=0}^{n-2} 4^{-i} sum_{k=1}^{i} a_k 4^k, cleared to an integer
    // over 4^{n-2}.
    auto a_weight = [&]() -> Rational {
        BigInt num(0);
        for (int i = 0; i <= n - 2; ++i) {
            BigInt inner(0);
            for (int k = 1; k <= i; ++k)
                if (c.av(k)) inner += pow2z(2 * k);
            num += inner * pow2z(2 * (n - 2 - i));
        }
        return Rational(num) / Rational(pow2z(2 * (n - 2)));
    };

    switch (r) {
        case Region::J1: {
            Rational mu = pow2(-n - 1) + pow2(-2 * n - 2) + Rational(ell - L) * pow2(-n - 3);
            return mu * mu;
        }
        case Region::J2:
            // Leading term 3n*2^{2n}: fixed by the direct sum and by the
            // requirement that the 13 region totals add up to the full
            // L2 identity.
            return frac(1, 9) * pow2(-4 * n - 6) *
                       Rational(BigInt(3 * n) * pow2z(2 * n) - BigInt(9 * (n - 1)) * pow2z(n + 2) +
                                pow2z(2 * n + 3) - 44) +
                   Rational(ssum + sn * L) * pow2(-3 * n - 3) - pow2(-2 * n - 8) * a_weight();
        case Region::J3:
            return frac(1, 3) * pow2(-4 * n - 4) *
                   Rational(pow2z(2 * n) - 3 * pow2z(n) + 2 + BigInt(3 * sn) * pow2z(n + 1));
        case Region::J4:
        case Region::J7:
            return frac(1, 48) * pow2(-2 * n);
        case Region::J5: {
            Rational mu = pow2(-2 * n - 2) - pow2(-n - 3) + Rational(L) * pow2(-n - 3) -
                          Rational(sn) * pow2(-2 * n - 1);
            return mu * mu;
        }
        case Region::J6:
            return frac(1, 9) * pow2(-4 * n - 6) *
                       Rational(BigInt(3 * n + 11) * pow2z(2 * n) - 56) -
                   Rational(n - 1 - 2 * ssum - 2 * sn * L) * pow2(-3 * n - 4);
        case Region::J8:
            return frac(1, 3) * pow2(-4 * n - 6) * Rational(pow2z(2 * n) - 4) +
                   pow2(-2 * n - 8) * a_weight();
        case Region::J9:
            return frac(1, 9) * pow2(-4 * n - 6) *
                   Rational(BigInt(3 * n - 7) * pow2z(2 * n) + 16);
        case Region::J10:
            return frac(1, 3) * pow2(-4 * n - 6) * Rational(pow2z(2 * n) + 8);
        case Region::J11:
            return frac(1, 27) * pow2(-4 * n - 6) *
                   Rational(BigInt(3 * n + 7) * pow2z(2 * n) + 48 * n - 88);
        case Region::J12:
            return frac(1, 27) * pow2(-4 * n - 4) - frac(1, 27) * pow2(-2 * n - 4) -
                   frac(n, 9) * pow2(-4 * n - 2) + frac(5L * n, 9) * pow2(-2 * n - 6);
        case Region::J13:
            return frac(1, 9) * pow2(-4 * n - 4) * Rational(pow2z(2 * n + 1) - 1);
    }
    throw std::logic_error("unreachable");
}

Rational closed_sym_region_sum_pa(int n, const PaCtx& c, Region r) {
    if (region_empty(r, n)) return Rational(0);
    const int L = c.bigL(), sn = c.sg(n);
    auto asum = [&]() -> Rational {
        BigInt z(0);
        for (int i = 1; i <= n - 1; ++i)
            if (c.av(i)) z += pow2z(2 * i);
        return Rational(z);
    };
    switch (r) {
        case Region::J1: {
            Rational mu = pow2(-n - 1) + pow2(-2 * n - 2);
            return mu * mu;
        }
        case Region::J2:
            return frac(1, 3) * pow2(-4 * n - 4) * Rational(pow2z(2 * n) - 4) -
                   Rational((sn ? -1 : 1) * L) * pow2(-3 * n - 4) + pow2(-4 * n - 6) * asum();
        case Region::J3:
            return pow2(-4 * n - 6) * asum() + pow2(-4 * n - 4);
        case Region::J4:
        case Region::J7:
            return frac(1, 48) * pow2(-2 * n);
        case Region::J5:
            return pow2(-2 * n - 6);
        case Region::J6:
            return frac(1, 3) * pow2(-4 * n - 6) * Rational(pow2z(2 * n) - 4);
        case Region::J8:
        case Region::J10:
            return frac(1, 3) * pow2(-4 * n - 6) * Rational(pow2z(2 * n) - 4) -
                   pow2(-4 * n - 6) * asum();
        case Region::J9:
            return frac(1, 9) * pow2(-4 * n - 6) *
                   Rational(BigInt(3 * n - 7) * pow2z(2 * n) + 16);
        case Region::J11:
            return frac(1, 9) * pow2(-4 * n - 6) * Rational(5 * pow2z(2 * n) + 4 - 24 * n);
        case Region::J12:
            return frac(1, 3) * pow2(-4 * n - 6) *
                   Rational(BigInt(n) * (pow2z(2 * n) + 8) - 2 * (pow2z(2 * n) + 2));
        case Region::J13:
            return frac(1, 9) * pow2(-4 * n - 4) * Rational(pow2z(2 * n + 1) - 1);
    }
    throw std::logic_error("unreachable");
}

Rational direct_region_sum(const DyadicPointSet& pts, int n, Region r) {
    // Index-only tails: sum the geometric series explicitly.
    if (r == Region::J4 || r == Region::J7) {
        // sum_{j >= n} 2^{2j} (2^{-2j-3})^2 = (4/3) 2^{-2n-6}
        return frac(4, 3) * pow2(-2 * n - 6);
    }
    if (r == Region::J13) {
        // split at j1 >= n and (j1 < n, j2 >= n); each factor is geometric
        return frac(16, 9) * pow2(-2 * n - 8) * (Rational(2) - pow2(-2 * n));
    }
    Rational total(0);
    for (int j1 = -1; j1 <= n - 1; ++j1)
        for (int j2 = -1; j2 <= n - 1; ++j2)
            if (classify_region(j1, j2, n) == r) total += level_mass(pts, j1, j2);
    return total;
}

}  // namespace

Rational region_parseval_sum(int n, const Bits& a, const Bits& shift, Region r, SumMethod method) {
    validate_pa(n, a, shift);
    if (method == SumMethod::Closed) return closed_region_sum_pa(n, PaCtx{n, a, shift}, r);
    return direct_region_sum(generate_pa_direct(n, a, shift), n, r);
}

Rational sym_region_parseval_sum(int n, const Bits& a, const Bits& shift, Region r,
                                 SumMethod method) {
    validate_pa(n, a, shift);
    if (method == SumMethod::Closed) return closed_sym_region_sum_pa(n, PaCtx{n, a, shift}, r);
    return direct_region_sum(symmetrize(generate_pa_direct(n, a, shift)), n, r);
}

Rational tail_sum(int n) {
    require(n >= 0, "tail_sum: n must be >= 0");
    return Rational(2) * frac(1, 48) * pow2(-2 * n) +
           frac(1, 9) * pow2(-4 * n - 4) * Rational(pow2z(2 * n + 1) - 1);
}

Rational parseval_l2_squared(const DyadicPointSet& p, int n) {
    if (p.points.empty()) throw std::domain_error("point set is empty");
    const DyadicPointSet q = at_resolution(p, n);
    Rational total(0);
    for (int j1 = -1; j1 <= n - 1; ++j1)
        for (int j2 = -1; j2 <= n - 1; ++j2) total += level_mass(q, j1, j2);
    return total + tail_sum(n);
}

CoefficientAudit coefficient_bound_audit(int n, const Bits& a, const Bits& shift) {
    validate_pa(n, a, shift);
    const DyadicPointSet pts = generate_pa_direct(n, a, shift);
    CoefficientAudit audit;
    audit.n = n;
    audit.iii_allowed_exceptions = 1L << n;

    const Rational mu_ii = pow2(-2 * n - 2);
    auto scaled = [](const Rational& mu, int e) {
        return std::fabs(mu.get_d() * std::ldexp(1.0, e));
    };

    for (int j1 = -1; j1 <= n + 2; ++j1) {
        for (int j2 = -1; j2 <= n + 2; ++j2) {
            // one coefficient per box; iterate boxes via bucketing of points
            const std::uint64_t nm1 = j1 >= 0 ? (1ULL << j1) : 1;
            const std::uint64_t nm2 = j2 >= 0 ? (1ULL << j2) : 1;
            const Rational idx_only = empty_box_mu(j1, j2);

            std::unordered_map<std::uint64_t, Rational> occupied;
            for (const auto& pt : pts.points) {
                std::uint64_t m1 = 0, m2 = 0;
                if (j1 >= 0) {
                    if (j1 >= n) continue;
                    m1 = pt.x >> (n - j1);
                    if (tent_num(pt.x, n, j1, m1) <= 0) continue;
                }
                if (j2 >= 0) {
                    if (j2 >= n) continue;
                    m2 = pt.y >> (n - j2);
                    if (tent_num(pt.y, n, j2, m2) <= 0) continue;
                }
                occupied.try_emplace((m1 << (j2 >= 0 ? j2 : 0)) | m2, Rational(0));
            }
            for (auto& [key, mu] : occupied) {
                const std::uint64_t m2 = j2 >= 0 ? (key & ((1ULL << j2) - 1)) : 0;
                const std::uint64_t m1 = j2 >= 0 ? (key >> j2) : key;
                mu = haar_coefficient(pts, {j1, j2, m1, m2});
            }
            const long total_m = static_cast<long>(nm1 * nm2);
            const long empty_m = total_m - static_cast<long>(occupied.size());

            auto each = [&](auto&& fn) {
                for (const auto& [key, mu] : occupied) fn(mu, 1L);
                if (empty_m > 0) fn(idx_only, empty_m);
            };

            if (j1 == -1 && j2 == -1) {
                audit.corner.checked++;
                const Rational want = case_coefficient_pa(n, a, shift, {-1, -1, 0, 0});
                if (haar_coefficient(pts, {-1, -1, 0, 0}) != want) audit.corner.violations++;
            } else if (j1 == -1) {
                BranchStat& b = j2 >= n ? audit.vi : audit.v;
                each([&](const Rational& mu, long cnt) {
                    b.checked += cnt;
                    if (j2 >= n) {
                        if (abs(mu) != pow2(-2 * j2 - 3)) b.violations += cnt;
                    } else {
                        b.max_scaled = std::max(b.max_scaled, scaled(mu, n + j2));
                    }
                });
            } else if (j2 == -1) {
                if (j1 == 0) {
                    audit.vii.checked++;
                    const Rational want = case_coefficient_pa(n, a, shift, {0, -1, 0, 0});
                    if (haar_coefficient(pts, {0, -1, 0, 0}) != want) audit.vii.violations++;
                } else {
                    BranchStat& b = j1 >= n ? audit.ix : audit.viii;
                    each([&](const Rational& mu, long cnt) {
                        b.checked += cnt;
                        if (j1 >= n) {
                            if (abs(mu) != pow2(-2 * j1 - 3)) b.violations += cnt;
                        } else {
                            b.max_scaled = std::max(b.max_scaled, scaled(mu, n + j1));
                        }
                    });
                }
            } else if (j1 >= n || j2 >= n) {
                each([&](const Rational& mu, long cnt) {
                    audit.iv.checked += cnt;
                    if (abs(mu) != pow2(-2 * j1 - 2 * j2 - 4)) audit.iv.violations += cnt;
                });
            } else if (j1 + j2 < n - 1) {
                // branches (i) and (ii) overlap at j1 = 0 as printed; the
                // exact equality needs j1 >= 1, so j1 = 0 is audited as (i).
                if (j1 == 0) {
                    each([&](const Rational& mu, long cnt) {
                        audit.i.checked += cnt;
                        audit.i.max_scaled = std::max(audit.i.max_scaled, scaled(mu, n + j2));
                    });
                } else {
                    each([&](const Rational& mu, long cnt) {
                        audit.ii.checked += cnt;
                        if (abs(mu) != mu_ii) audit.ii.violations += cnt;
                    });
                }
            } else {
                long exceptions = 0;
                each([&](const Rational& mu, long cnt) {
                    audit.iii.checked += cnt;
                    audit.iii.max_scaled =
                        std::max(audit.iii.max_scaled, scaled(mu, n + j1 + j2));
                    if (abs(mu) != pow2(-2 * j1 - 2 * j2 - 4)) exceptions += cnt;
                });
                audit.iii_max_exceptions_per_j = std::max(audit.iii_max_exceptions_per_j, exceptions);
            }
        }
    }
    return audit;
}

}  // namespace dyadnet
