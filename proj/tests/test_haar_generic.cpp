#include <doctest.h>

#include "dyadnet/discrepancy.hpp"
#include "dyadnet/haar.hpp"
#include "support.hpp"

using namespace dyadnet;
using namespace dyadnet::testing;

TEST_CASE("region partition is exact") {
    for (int n = 1; n <= 12; ++n)
        for (int j1 = -1; j1 <= n + 2; ++j1)
            for (int j2 = -1; j2 <= n + 2; ++j2) {
                // classify_region returns one region; check the defining
                // predicates hold for it and only it
                const Region r = classify_region(j1, j2, n);
                int matches = 0;
                if (j1 == -1 && j2 == -1) matches += r == Region::J1;
                if (j1 == -1 && j2 >= 0 && j2 <= n - 2) matches += r == Region::J2;
                if (j1 == -1 && j2 == n - 1) matches += r == Region::J3;
                if (j1 == -1 && j2 >= n) matches += r == Region::J4;
                if (j1 == 0 && j2 == -1) matches += r == Region::J5;
                if (j1 >= 1 && j1 <= n - 1 && j2 == -1) matches += r == Region::J6;
                if (j1 >= n && j2 == -1) matches += r == Region::J7;
                if (j1 == 0 && j2 >= 0 && j2 <= n - 2) matches += r == Region::J8;
                if (j1 >= 1 && j2 >= 0 && j1 + j2 <= n - 2) matches += r == Region::J9;
                if (j1 == 0 && j2 == n - 1) matches += r == Region::J10;
                if (j1 >= 1 && j2 >= 0 && j1 + j2 == n - 1) matches += r == Region::J11;
                if (j1 >= 1 && j1 <= n - 1 && j2 >= 1 && j2 <= n - 1 && j1 + j2 >= n)
                    matches += r == Region::J12;
                if (j1 >= 0 && j2 >= 0 && (j1 >= n || j2 >= n)) matches += r == Region::J13;
                CHECK(matches == 1);
            }
    CHECK(classify_region(-1, -1, 3) == Region::J1);
    CHECK(classify_region(0, 2, 3) == Region::J10);
    CHECK(classify_region(2, 2, 3) == Region::J12);
}

TEST_CASE("box_points boundary exclusion") {
    const DyadicPointSet diag{1, {{0, 0}, {1, 1}}};
    // box (0,1/2) x (0,1/2): (0,0) is a corner, (1/2,1/2) the far corner
    CHECK(box_points(diag, {1, 1, 0, 0}).empty());
    // the whole square, open: only the interior point stays
    CHECK(box_points(diag, {0, 0, 0, 0}) == std::vector<DyadicPoint>{{1, 1}});

    NetSpec hamm;
    hamm.family = Family::PA;
    hamm.n = 2;
    hamm.a = bits({0});
    hamm.shift = bits({0, 0});
    const auto p = generate(hamm);
    CHECK(box_points(p, {1, 1, 0, 1}).empty());  // (0,1/2) x (1/2,1): y = 1/2 sits on the boundary
    CHECK(box_points(p, {1, 1, 1, 1}) == std::vector<DyadicPoint>{{3, 3}});
    CHECK(box_points(p, {-1, -1, 0, 0}).size() == 4);
    CHECK_THROWS_AS(box_points(p, {0, 0, 1, 0}), std::invalid_argument);  // m out of range
}

TEST_CASE("generic coefficient examples") {
    const auto p1 = generate_pa_direct(1, {}, bits({0}));
    CHECK(haar_coefficient(p1, {-1, -1, 0, 0}) == frac(3, 8));
    CHECK(haar_coefficient(p1, {1, 0, 0, 0}) == -frac(1, 64));  // empty box at j=(1,0)
    const DyadicPointSet origin{0, {{0, 0}}};
    CHECK(haar_coefficient(origin, {-1, -1, 0, 0}) == frac(3, 4));
}

TEST_CASE("generic equals the slow integration oracle") {
    std::mt19937_64 rng(66);
    for (int n = 1; n <= 4; ++n) {
        for (unsigned av = 0; av < (1u << (n - 1)); ++av) {
            const Bits a = bits_of(av, n - 1);
            const Bits s = random_bits(rng, n);
            const auto pts = generate_pa_direct(n, a, s);
            for (int j1 = -1; j1 <= 2 * n; ++j1)
                for (int j2 = -1; j2 <= 2 * n; ++j2) {
                    if (std::max(0, j1) + std::max(0, j2) > 2 * n) continue;
                    for (std::uint64_t m1 = 0; m1 < (1ULL << std::max(0, j1)); ++m1)
                        for (std::uint64_t m2 = 0; m2 < (1ULL << std::max(0, j2)); ++m2) {
                            const HaarIndex idx{j1, j2, m1, m2};
                            CHECK(haar_coefficient(pts, idx) == slow_haar_coefficient(pts, idx));
                        }
                }
        }
    }
    // also on a symmetrized set and an irregular custom set
    const auto sym = symmetrize(generate_pa_direct(2, bits({1}), bits({0, 1})));
    const DyadicPointSet odd{3, {{0, 0}, {5, 7}, {1, 1}, {5, 7}}};  // duplicates allowed
    for (int j1 = -1; j1 <= 3; ++j1)
        for (int j2 = -1; j2 <= 3; ++j2)
            for (std::uint64_t m1 = 0; m1 < (1ULL << std::max(0, j1)); ++m1)
                for (std::uint64_t m2 = 0; m2 < (1ULL << std::max(0, j2)); ++m2) {
                    const HaarIndex idx{j1, j2, m1, m2};
                    CHECK(haar_coefficient(sym, idx) == slow_haar_coefficient(sym, idx));
                    CHECK(haar_coefficient(odd, idx) == slow_haar_coefficient(odd, idx));
                }
}

TEST_CASE("tail sum") {
    CHECK(tail_sum(1) == frac(31, 2304));
    CHECK(tail_sum(2) == frac(127, 36864));
    for (int n = 1; n <= 10; ++n) CHECK(tail_sum(n) < pow2(-2 * n));
}

TEST_CASE("parseval examples and precondition") {
    CHECK(parseval_l2_squared(generate_pa_direct(1, {}, bits({0})), 1) == frac(91, 576));
    CHECK(parseval_l2_squared(symmetrize(generate_pa_direct(1, {}, bits({0}))), 1) ==
          frac(137, 1152));
    CHECK(parseval_l2_squared(DyadicPointSet{0, {{0, 0}}}, 0) == frac(11, 18));

    // coordinates at a finer resolution than n are rejected
    const DyadicPointSet fine{2, {{1, 0}}};
    CHECK_THROWS_AS(parseval_l2_squared(fine, 1), std::domain_error);
    // coarser points rescale fine
    const DyadicPointSet coarse{1, {{0, 0}, {1, 1}}};
    CHECK(parseval_l2_squared(coarse, 3) == frac(91, 576));
}

TEST_CASE("parseval equals warnock on irregular multisets") {
    // arbitrary dyadic sets, duplicates retained
    const DyadicPointSet odd{3, {{0, 0}, {5, 7}, {1, 1}, {5, 7}}};
    const Rational nn(static_cast<unsigned long>(odd.size()));
    CHECK(parseval_l2_squared(odd, 3) * nn * nn == warnock_l2_squared(odd));
    const DyadicPointSet single{2, {{3, 1}}};
    CHECK(parseval_l2_squared(single, 2) == warnock_l2_squared(single));

    std::mt19937_64 rng(314);
    for (int trial = 0; trial < 20; ++trial) {
        DyadicPointSet p;
        p.resolution = 1 + static_cast<int>(rng() % 5);
        const std::size_t count = 1 + rng() % 12;
        for (std::size_t i = 0; i < count; ++i)
            p.points.push_back({rng() & ((1ULL << p.resolution) - 1),
                                rng() & ((1ULL << p.resolution) - 1)});
        const Rational m(static_cast<unsigned long>(p.size()));
        CHECK(parseval_l2_squared(p, p.resolution) * m * m == warnock_l2_squared(p));
    }
}

TEST_CASE("parseval equals warnock over N^2") {
    std::mt19937_64 rng(77);
    for (int n = 1; n <= 7; ++n) {
        for (const auto& [a, s] : pa_parameter_cases(n, 3, 6, rng)) {
            const auto pts = generate_pa_direct(n, a, s);
            const Rational nn = pow2(2 * n);
            CHECK(parseval_l2_squared(pts, n) * nn == warnock_l2_squared(pts));
            if (n <= 5) {
                const auto sym = symmetrize(pts);
                CHECK(parseval_l2_squared(sym, n) * pow2(2 * n + 2) == warnock_l2_squared(sym));
            }
            NetSpec pc;
            pc.family = Family::PC;
            pc.n = n;
            pc.c = a;
            pc.shift = s;
            const auto pcp = generate(pc);
            CHECK(parseval_l2_squared(pcp, n) * nn == warnock_l2_squared(pcp));
        }
    }
}
