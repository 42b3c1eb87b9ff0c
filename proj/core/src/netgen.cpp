#include "dyadnet/netgen.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace dyadnet {

namespace {

// 2^n points live in memory; anything beyond this is not a sensible ask
// for the exact O(N^2) computations downstream.
constexpr int kMaxGenN = 24;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Bits bits_from_string(const std::string& s) {
    Bits b;
    b.reserve(s.size());
    for (char ch : s) {
        if (ch != '0' && ch != '1')
            throw std::invalid_argument("bits_from_string: invalid character in '" + s + "'");
        b.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return b;
}

std::string bits_to_string(const Bits& b) {
    std::string s;
    s.reserve(b.size());
    for (auto v : b) s.push_back(v ? '1' : '0');
    return s;
}

const char* family_name(Family f) {
    switch (f) {
        case Family::PA: return "pa";
        case Family::PC: return "pc";
        case Family::TRI: return "tri";
        case Family::CUSTOM: return "custom";
    }
    return "?";
}

Family family_from_string(const std::string& s) {
    if (s == "pa") return Family::PA;
    if (s == "pc") return Family::PC;
    if (s == "tri") return Family::TRI;
    if (s == "custom") return Family::CUSTOM;
    throw std::invalid_argument("unknown family '" + s + "'");
}

void NetSpec::validate() const {
    require(n >= 1, "NetSpec: n must be >= 1");
    require(shift.size() == static_cast<std::size_t>(n), "NetSpec: shift length must equal n");
    switch (family) {
        case Family::PA:
            require(a.size() == static_cast<std::size_t>(n - 1), "NetSpec: |a| must be n-1");
            break;
        case Family::PC:
            require(c.size() == static_cast<std::size_t>(n - 1), "NetSpec: |c| must be n-1 (c_2..c_n)");
            break;
        case Family::TRI:
            require(tri.size() == static_cast<std::size_t>(n) * (n - 1) / 2,
                    "NetSpec: |tri| must be n(n-1)/2");
            break;
        case Family::CUSTOM:
            require(c1.n == n && c2.n == n, "NetSpec: custom matrices must be n x n");
            break;
    }
}

std::pair<BitMatrix, BitMatrix> build_generators(const NetSpec& spec) {
    spec.validate();
    const int n = spec.n;
    switch (spec.family) {
        case Family::PA: {
            BitMatrix c2 = BitMatrix::identity(n);
            for (int i = 0; i + 1 < n; ++i) c2.set(i, n - 1, spec.a[i]);
            return {BitMatrix::reversal(n), c2};
        }
        case Family::PC: {
            BitMatrix c2 = BitMatrix::identity(n);
            for (int i = 1; i < n; ++i) c2.set(i, 0, spec.c[i - 1]);
            return {BitMatrix::reversal(n), c2};
        }
        case Family::TRI: {
            BitMatrix c2 = BitMatrix::identity(n);
            std::size_t idx = 0;
            for (int i = 0; i + 1 < n; ++i)
                for (int j = i + 1; j < n; ++j) c2.set(i, j, spec.tri[idx++]);
            return {BitMatrix::reversal(n), c2};
        }
        case Family::CUSTOM:
            return {spec.c1, spec.c2};
    }
    throw std::logic_error("unreachable");
}

bool is_0n2_net(const BitMatrix& c1, const BitMatrix& c2, NetCheck method) {
    require(c1.n == c2.n, "is_0n2_net: size mismatch");
    const int n = c1.n;
    if (method == NetCheck::Rank) {
        for (int d1 = 0; d1 <= n; ++d1) {
            std::vector<std::uint64_t> rows;
            rows.reserve(n);
            for (int i = 0; i < d1; ++i) rows.push_back(c1.rows[i]);
            for (int i = 0; i < n - d1; ++i) rows.push_back(c2.rows[i]);
            if (gf2_rank(rows, n) != n) return false;
        }
        return true;
    }
    // Counting: each dyadic box of volume 2^-n holds exactly one point.
    require(n <= kMaxGenN, "is_0n2_net: counting method limited to n <= 24");
    DyadicPointSet p = generate_points(c1, c2, Bits(static_cast<std::size_t>(n), 0));
    std::vector<std::uint8_t> seen;
    for (int j1 = 0; j1 <= n; ++j1) {
        const int j2 = n - j1;
        seen.assign(p.size(), 0);
        for (const auto& pt : p.points) {
            std::uint64_t key = ((pt.x >> (n - j1)) << j2) | (pt.y >> (n - j2));
            if (seen[key]++) return false;
        }
    }
    return true;
}

DyadicPointSet generate_points(const BitMatrix& c1, const BitMatrix& c2, const Bits& shift) {
    require(c1.n == c2.n, "generate_points: size mismatch");
    const int n = c1.n;
    require(shift.size() == static_cast<std::size_t>(n), "generate_points: shift length must equal n");
    require(n <= kMaxGenN, "generate_points: n limited to 24");

    std::uint64_t sigma = 0;  // shift as output-digit mask, digit i -> bit (n-1-i)
    for (int i = 0; i < n; ++i)
        if (shift[i]) sigma |= 1ULL << (n - 1 - i);

    DyadicPointSet p;
    p.resolution = n;
    p.points.reserve(1ULL << n);
    for (std::uint64_t r = 0; r < (1ULL << n); ++r) {
        std::uint64_t x = 0, y = 0;
        for (int i = 0; i < n; ++i) {
            // output digit y_{i+1} carries weight 2^{n-1-i} in the integer coordinate
            if (parity64(c1.rows[i] & r)) x |= 1ULL << (n - 1 - i);
            if (parity64(c2.rows[i] & r)) y |= 1ULL << (n - 1 - i);
        }
        p.points.push_back({x, y ^ sigma});
    }
    return p;
}

DyadicPointSet generate_pa_direct(int n, const Bits& a, const Bits& shift) {
    require(n >= 1 && n <= kMaxGenN, "generate_pa_direct: n out of range");
    require(a.size() == static_cast<std::size_t>(n - 1), "generate_pa_direct: |a| must be n-1");
    require(shift.size() == static_cast<std::size_t>(n), "generate_pa_direct: shift length must equal n");

    DyadicPointSet p;
    p.resolution = n;
    p.points.reserve(1ULL << n);
    for (std::uint64_t t = 0; t < (1ULL << n); ++t) {
        // bit k-1 of t is the digit t_k; x = t_n/2 + ... + t_1/2^n
        const std::uint64_t tn = (t >> (n - 1)) & 1u;
        std::uint64_t y = 0;
        for (int k = 1; k < n; ++k) {
            std::uint64_t bk = ((t >> (k - 1)) & 1u) ^ (a[k - 1] & tn) ^ shift[k - 1];
            y |= bk << (n - k);
        }
        y |= tn ^ shift[n - 1];
        p.points.push_back({t, y});
    }
    return p;
}

Bits complement_shift(const Bits& shift) {
    Bits out(shift.size());
    for (std::size_t i = 0; i < shift.size(); ++i) out[i] = shift[i] ^ 1u;
    return out;
}

DyadicPointSet symmetrize(const DyadicPointSet& p) {
    DyadicPointSet out;
    out.resolution = p.resolution;
    out.points = p.points;
    const std::uint64_t top = (1ULL << p.resolution) - 1;
    for (const auto& pt : p.points) out.points.push_back({pt.x, top - pt.y});
    return out;
}

DyadicPointSet generate(const NetSpec& spec) {
    auto [c1, c2] = build_generators(spec);
    DyadicPointSet p = generate_points(c1, c2, spec.shift);
    return spec.symmetrized ? symmetrize(p) : p;
}

void write_point_dump(const DyadicPointSet& p, std::ostream& out) {
    out << "res " << p.resolution << "\n";
    for (const auto& pt : p.points) out << pt.x << " " << pt.y << "\n";
}

DyadicPointSet read_point_dump(std::istream& in) {
    DyadicPointSet p;
    std::string tag;
    if (!(in >> tag) || tag != "res" || !(in >> p.resolution) || p.resolution < 0 || p.resolution > 62)
        throw std::invalid_argument("read_point_dump: expected 'res <n>' header");
    const std::uint64_t lim = 1ULL << p.resolution;
    std::string tok;
    while (in >> tok) {
        std::uint64_t x, y;
        std::size_t used = 0;
        try {
            x = std::stoull(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size())
            throw std::invalid_argument("read_point_dump: malformed coordinate '" + tok + "'");
        if (!(in >> y)) throw std::invalid_argument("read_point_dump: dangling X without Y");
        if (x >= lim || y >= lim)
            throw std::invalid_argument("read_point_dump: coordinate out of [0, 2^res)");
        p.points.push_back({x, y});
    }
    return p;
}

}  // namespace dyadnet
