#include "dyadnet/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

namespace dyadnet {

namespace {

void require_nonempty(const DyadicPointSet& p) {
    if (p.points.empty()) throw std::domain_error("point set is empty");
}

void require_exact_range(const DyadicPointSet& p) {
    // Keeps every __int128 accumulator below 2^126.
    if (p.resolution > 24) throw std::invalid_argument("resolution limited to 24 for exact kernels");
}

}  // namespace

Rational local_discrepancy(const DyadicPointSet& p, const Rational& t1, const Rational& t2) {
    require_nonempty(p);
    if (t1 < 0 || t1 > 1 || t2 < 0 || t2 > 1)
        throw std::invalid_argument("local_discrepancy: t must lie in [0,1]^2");
    const Rational lim1 = t1 * pow2(p.resolution);
    const Rational lim2 = t2 * pow2(p.resolution);
    long count = 0;
    for (const auto& pt : p.points) {
        if (Rational(pt.x) < lim1 && Rational(pt.y) < lim2) ++count;
    }
    return frac(count, static_cast<long>(p.size())) - t1 * t2;
}

Rational warnock_l2_squared(const DyadicPointSet& p) {
    require_nonempty(p);
    require_exact_range(p);
    const int res = p.resolution;
    const std::uint64_t R = 1ULL << res;
    const std::uint64_t R2 = R * R;
    const std::size_t N = p.size();

    // Clearing denominators: the single-point sum is an integer over R^4,
    // the pair sum an integer over R^2.
    unsigned __int128 s1 = 0, s2 = 0;
    for (const auto& pt : p.points)
        s1 += static_cast<unsigned __int128>(R2 - pt.x * pt.x) * (R2 - pt.y * pt.y);
    for (std::size_t k = 0; k < N; ++k) {
        const auto& a = p.points[k];
        for (std::size_t l = 0; l < N; ++l) {
            const auto& b = p.points[l];
            s2 += static_cast<unsigned __int128>(R - std::max(a.x, b.x)) * (R - std::max(a.y, b.y));
        }
    }

    Rational nn(static_cast<unsigned long>(N));
    Rational r4(bigint_from_i128(static_cast<__int128>(R2) * R2));
    Rational result = nn * nn / 9;
    result -= nn / 2 * Rational(bigint_from_i128(static_cast<__int128>(s1))) / r4;
    result += Rational(bigint_from_i128(static_cast<__int128>(s2))) / Rational(BigInt(R2));
    return result;
}

Rational l2_squared(const DyadicPointSet& p) {
    Rational n2(static_cast<unsigned long>(p.size()));
    return warnock_l2_squared(p) / (n2 * n2);
}

Rational star_discrepancy(const DyadicPointSet& p) {
    require_nonempty(p);
    require_exact_range(p);
    const std::uint64_t R = 1ULL << p.resolution;
    const std::uint64_t N = p.size();

    std::set<std::uint64_t> gxs{0, R}, gys{0, R};
    for (const auto& pt : p.points) {
        gxs.insert(pt.x);
        gys.insert(pt.y);
    }
    std::vector<std::uint64_t> gx(gxs.begin(), gxs.end()), gy(gys.begin(), gys.end());

    // All candidates share the denominator N * R^2; track the max numerator.
    unsigned __int128 best = 0;
    for (std::uint64_t g1 : gx) {
        for (std::uint64_t g2 : gy) {
            std::uint64_t closed = 0, open = 0;
            for (const auto& pt : p.points) {
                closed += pt.x <= g1 && pt.y <= g2;
                open += pt.x < g1 && pt.y < g2;
            }
            const unsigned __int128 vol = static_cast<unsigned __int128>(g1) * g2 * N;
            const unsigned __int128 cc = static_cast<unsigned __int128>(closed) * R * R;
            const unsigned __int128 oc = static_cast<unsigned __int128>(open) * R * R;
            best = std::max(best, cc > vol ? cc - vol : vol - cc);
            best = std::max(best, oc > vol ? oc - vol : vol - oc);
        }
    }
    Rational out(bigint_from_i128(static_cast<__int128>(best)));
    out /= Rational(BigInt(N) * BigInt(R) * BigInt(R));
    return out;
}

namespace {

inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + (i + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline double uniform53(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace

McEstimate lp_discrepancy_mc(const DyadicPointSet& p, double pexp, std::uint64_t samples,
                             std::uint64_t seed, unsigned threads) {
    require_nonempty(p);
    if (!(pexp > 1.0) || !std::isfinite(pexp))
        throw std::invalid_argument("lp_discrepancy_mc: p must be finite and > 1 (use star_discrepancy for p = inf)");
    if (samples == 0) throw std::invalid_argument("lp_discrepancy_mc: samples must be >= 1");

    const double inv_n = 1.0 / static_cast<double>(p.size());
    const double scale = std::ldexp(1.0, -p.resolution);
    std::vector<double> xs(p.size()), ys(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        xs[i] = static_cast<double>(p.points[i].x) * scale;
        ys[i] = static_cast<double>(p.points[i].y) * scale;
    }

    // Fixed-size blocks reduced in index order: the result does not depend
    // on how blocks are distributed over threads.
    constexpr std::uint64_t kBlock = 1 << 14;
    const std::uint64_t nblocks = (samples + kBlock - 1) / kBlock;
    std::vector<double> bsum(nblocks, 0.0), bsq(nblocks, 0.0);

    auto run_block = [&](std::uint64_t b) {
        const std::uint64_t lo = b * kBlock;
        const std::uint64_t hi = std::min(samples, lo + kBlock);
        double s = 0.0, sq = 0.0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const double t1 = uniform53(splitmix64_at(seed, 2 * i));
            const double t2 = uniform53(splitmix64_at(seed, 2 * i + 1));
            std::uint64_t cnt = 0;
            for (std::size_t k = 0; k < xs.size(); ++k) cnt += (xs[k] < t1) & (ys[k] < t2);
            const double d = std::fabs(static_cast<double>(cnt) * inv_n - t1 * t2);
            const double y = std::pow(d, pexp);
            s += y;
            sq += y * y;
        }
        bsum[b] = s;
        bsq[b] = sq;
    };

    if (threads <= 1 || nblocks == 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b) run_block(b);
    } else {
        const unsigned nt = std::min<std::uint64_t>(threads, nblocks);
        std::vector<std::thread> pool;
        pool.reserve(nt);
        for (unsigned t = 0; t < nt; ++t)
            pool.emplace_back([&, t] {
                for (std::uint64_t b = t; b < nblocks; b += nt) run_block(b);
            });
        for (auto& th : pool) th.join();
    }

    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t b = 0; b < nblocks; ++b) {
        sum += bsum[b];
        sumsq += bsq[b];
    }

    const double m = static_cast<double>(samples);
    const double mean = sum / m;
    McEstimate out;
    out.estimate = std::pow(mean, 1.0 / pexp);
    if (samples > 1 && mean > 0.0) {
        const double var = std::max(0.0, (sumsq - m * mean * mean) / (m - 1.0));
        const double se_mean = std::sqrt(var / m);
        out.std_error = se_mean * out.estimate / (pexp * mean);
    }
    return out;
}

}  // namespace dyadnet
