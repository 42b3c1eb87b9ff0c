#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dyadnet/bitmatrix.hpp"

namespace dyadnet {

using Bits = std::vector<std::uint8_t>;

Bits bits_from_string(const std::string& s);  // "1011" -> {1,0,1,1}
std::string bits_to_string(const Bits& b);

enum class Family { PA, PC, TRI, CUSTOM };

const char* family_name(Family f);
Family family_from_string(const std::string& s);

// Parameters of one net. Exactly the block matching `family` is read:
//   PA:     a = (a_1..a_{n-1})
//   PC:     c = (c_2..c_n)
//   TRI:    tri = strictly-upper-triangular entries a_{i,j} (i<j),
//           row-major: a_{1,2}..a_{1,n}, a_{2,3}..a_{2,n}, ..., a_{n-1,n}
//   CUSTOM: generator matrices c1, c2 as given
// The digital shift applies to the second coordinate only.
struct NetSpec {
    Family family = Family::PA;
    int n = 0;
    Bits a;
    Bits c;
    Bits tri;
    BitMatrix c1, c2;
    Bits shift;
    bool symmetrized = false;

    // Throws std::invalid_argument when the parameter block does not
    // match the family or the shift length is not n.
    void validate() const;
};

struct DyadicPoint {
    std::uint64_t x = 0, y = 0;
    bool operator==(const DyadicPoint&) const = default;
    auto operator<=>(const DyadicPoint&) const = default;
};

// Finite point set in [0,1)^2 with coordinates k/2^resolution, stored as
// integers. Every computation downstream of this type is exact.
struct DyadicPointSet {
    int resolution = 0;
    std::vector<DyadicPoint> points;

    std::size_t size() const { return points.size(); }
};

std::pair<BitMatrix, BitMatrix> build_generators(const NetSpec& spec);

enum class NetCheck { Rank, Counting };

// (0,n,2)-net test. Rank: every split d1+d2=n of leading rows of C1, C2
// has full GF(2) rank. Counting: every dyadic box of volume 2^-n holds
// exactly one point of the (unshifted) net.
bool is_0n2_net(const BitMatrix& c1, const BitMatrix& c2, NetCheck method);

// Digital net from two generator matrices: index r runs over 0..2^n-1,
// its base-2 digits (least significant first) form the input vector, and
// the shift is added to the second coordinate's output digits.
DyadicPointSet generate_points(const BitMatrix& c1, const BitMatrix& c2, const Bits& shift);

// Same point multiset as the matrix route for the PA family, via the
// explicit digit formula b_k = t_k ^ a_k t_n ^ sigma_k (k<n), b_n = t_n ^ sigma_n.
DyadicPointSet generate_pa_direct(int n, const Bits& a, const Bits& shift);

Bits complement_shift(const Bits& shift);

// P union its reflection y -> 1 - 2^-res - y. For PA/PC nets this equals
// the union with the complement-shifted net; duplicates from CUSTOM
// inputs are retained as a multiset.
DyadicPointSet symmetrize(const DyadicPointSet& p);

// build_generators + generate_points (+ symmetrize when requested).
DyadicPointSet generate(const NetSpec& spec);

// Point-set dump format: one line "res <n>", then one "X Y" line per point.
void write_point_dump(const DyadicPointSet& p, std::ostream& out);
DyadicPointSet read_point_dump(std::istream& in);

}  // namespace dyadnet
