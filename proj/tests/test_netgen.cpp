#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "dyadnet/netgen.hpp"
#include "support.hpp"

using namespace dyadnet;
using namespace dyadnet::testing;

namespace {

std::vector<DyadicPoint> sorted_points(DyadicPointSet p) {
    std::sort(p.points.begin(), p.points.end());
    return p.points;
}

}  // namespace

TEST_CASE("build_generators families") {
    NetSpec pa;
    pa.family = Family::PA;
    pa.n = 3;
    pa.a = bits({1, 0});
    pa.shift = Bits(3, 0);
    auto [c1, c2] = build_generators(pa);
    CHECK(c1.to_string() == "001010100");
    CHECK(c2.to_string() == "101010001");

    NetSpec pa1;
    pa1.family = Family::PA;
    pa1.n = 1;
    pa1.shift = Bits(1, 0);
    auto [d1, d2] = build_generators(pa1);
    CHECK(d1 == BitMatrix::identity(1));
    CHECK(d2 == BitMatrix::identity(1));

    NetSpec pc;
    pc.family = Family::PC;
    pc.n = 3;
    pc.c = bits({1, 1});
    pc.shift = Bits(3, 0);
    auto [e1, e2] = build_generators(pc);
    CHECK(e2.to_string() == "100110101");

    NetSpec bad;
    bad.family = Family::PA;
    bad.n = 3;
    bad.a = bits({1});
    bad.shift = Bits(3, 0);
    CHECK_THROWS_AS(build_generators(bad), std::invalid_argument);
}

TEST_CASE("is_0n2_net rank and counting agree on families") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 8; ++n) {
        const bool exhaustive = n <= 5;
        const unsigned limit = exhaustive ? (1u << (n - 1)) : 8;
        for (unsigned t = 0; t < limit; ++t) {
            NetSpec spec;
            spec.family = Family::PA;
            spec.n = n;
            spec.a = exhaustive ? bits_of(t, n - 1) : random_bits(rng, n - 1);
            spec.shift = Bits(static_cast<std::size_t>(n), 0);
            auto [c1, c2] = build_generators(spec);
            CHECK(is_0n2_net(c1, c2, NetCheck::Rank));
            CHECK(is_0n2_net(c1, c2, NetCheck::Counting));

            spec.family = Family::PC;
            spec.c = spec.a;
            auto [p1, p2] = build_generators(spec);
            CHECK(is_0n2_net(p1, p2, NetCheck::Rank));
            CHECK(is_0n2_net(p1, p2, NetCheck::Counting));

            spec.family = Family::TRI;
            spec.tri = random_bits(rng, n * (n - 1) / 2);
            auto [t1, t2] = build_generators(spec);
            CHECK(is_0n2_net(t1, t2, NetCheck::Rank));
            CHECK(is_0n2_net(t1, t2, NetCheck::Counting));
        }
    }
    // C1 = C2 = identity fails (d1 = d2 = 1 repeats the first row)
    const BitMatrix id2 = BitMatrix::identity(2);
    CHECK_FALSE(is_0n2_net(id2, id2, NetCheck::Rank));
    CHECK_FALSE(is_0n2_net(id2, id2, NetCheck::Counting));
    // C1 = reversal, C2 = identity is always a net
    for (int n : {1, 2, 5, 9})
        CHECK(is_0n2_net(BitMatrix::reversal(n), BitMatrix::identity(n), NetCheck::Rank));
    CHECK_THROWS_AS(is_0n2_net(id2, BitMatrix::identity(3), NetCheck::Rank), std::invalid_argument);

    // both methods agree on arbitrary matrices, net or not
    int nets_seen = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        BitMatrix c1(n), c2(n);
        for (int i = 0; i < n; ++i) {
            c1.rows[i] = rng() & ((1ULL << n) - 1);
            c2.rows[i] = rng() & ((1ULL << n) - 1);
        }
        const bool by_rank = is_0n2_net(c1, c2, NetCheck::Rank);
        CHECK(by_rank == is_0n2_net(c1, c2, NetCheck::Counting));
        nets_seen += by_rank;
    }
    CHECK(nets_seen < 60);  // random matrices are mostly not nets
}

TEST_CASE("generate_points explicit examples") {
    const BitMatrix one = BitMatrix::identity(1);
    CHECK(sorted_points(generate_points(one, one, bits({0}))) ==
          std::vector<DyadicPoint>{{0, 0}, {1, 1}});
    CHECK(sorted_points(generate_points(one, one, bits({1}))) ==
          std::vector<DyadicPoint>{{0, 1}, {1, 0}});

    NetSpec hamm;
    hamm.family = Family::PA;
    hamm.n = 2;
    hamm.a = bits({0});
    hamm.shift = bits({0, 0});
    CHECK(sorted_points(generate(hamm)) ==
          std::vector<DyadicPoint>{{0, 0}, {1, 2}, {2, 1}, {3, 3}});
}

TEST_CASE("generate_pa_direct digit formula") {
    CHECK(sorted_points(generate_pa_direct(1, {}, bits({0}))) ==
          std::vector<DyadicPoint>{{0, 0}, {1, 1}});
    CHECK(sorted_points(generate_pa_direct(2, bits({1}), bits({0, 0}))) ==
          std::vector<DyadicPoint>{{0, 0}, {1, 2}, {2, 3}, {3, 1}});
    CHECK(sorted_points(generate_pa_direct(2, bits({0}), bits({0, 1}))) ==
          std::vector<DyadicPoint>{{0, 1}, {1, 3}, {2, 0}, {3, 2}});
}

TEST_CASE("direct route equals matrix route") {
    std::mt19937_64 rng(22);
    for (int n = 1; n <= 8; ++n) {
        for (const auto& [a, s] : pa_parameter_cases(n, 4, 12, rng)) {
            NetSpec spec;
            spec.family = Family::PA;
            spec.n = n;
            spec.a = a;
            spec.shift = s;
            CHECK(sorted_points(generate(spec)) == sorted_points(generate_pa_direct(n, a, s)));
        }
    }
}

TEST_CASE("complement_shift involution") {
    CHECK(complement_shift(bits({0, 1, 0})) == bits({1, 0, 1}));
    CHECK(complement_shift(Bits(4, 0)) == Bits(4, 1));
    const Bits s = bits({1, 0, 0, 1});
    CHECK(complement_shift(complement_shift(s)) == s);
}

TEST_CASE("symmetrize") {
    const auto p = generate_pa_direct(1, {}, bits({0}));
    CHECK(sorted_points(symmetrize(p)) ==
          std::vector<DyadicPoint>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

    std::mt19937_64 rng(33);
    for (int n = 1; n <= 6; ++n) {
        for (const auto& [a, s] : pa_parameter_cases(n, 3, 6, rng)) {
            const auto base = generate_pa_direct(n, a, s);
            const auto sym = symmetrize(base);
            CHECK(sym.size() == 2 * base.size());
            // symmetrized net = union with the complement-shifted net
            auto uni = base.points;
            const auto flip = generate_pa_direct(n, a, complement_shift(s)).points;
            uni.insert(uni.end(), flip.begin(), flip.end());
            std::sort(uni.begin(), uni.end());
            auto sp = sym.points;
            std::sort(sp.begin(), sp.end());
            CHECK(sp == uni);
            // x-multiset is untouched
            auto xs = [](const DyadicPointSet& q) {
                std::vector<std::uint64_t> v;
                for (const auto& pt : q.points) v.push_back(pt.x);
                std::sort(v.begin(), v.end());
                return v;
            };
            auto bx = xs(base), sx = xs(sym);
            bx.insert(bx.end(), bx.begin(), bx.end());
            std::sort(bx.begin(), bx.end());
            CHECK(bx == sx);
            for (const auto& pt : sym.points) {
                CHECK(pt.x < (1ULL << n));
                CHECK(pt.y < (1ULL << n));
            }
        }
    }
}

TEST_CASE("point dump round trip") {
    NetSpec spec;
    spec.family = Family::PC;
    spec.n = 3;
    spec.c = bits({1, 0});
    spec.shift = bits({0, 1, 0});
    const auto p = generate(spec);
    std::stringstream ss;
    write_point_dump(p, ss);
    CHECK(ss.str().substr(0, 6) == "res 3\n");
    const auto q = read_point_dump(ss);
    CHECK(q.resolution == p.resolution);
    CHECK(q.points == p.points);

    std::stringstream bad("res 2\n1 4\n");
    CHECK_THROWS_AS(read_point_dump(bad), std::invalid_argument);
    std::stringstream bad2("2\n1 1\n");
    CHECK_THROWS_AS(read_point_dump(bad2), std::invalid_argument);
}
