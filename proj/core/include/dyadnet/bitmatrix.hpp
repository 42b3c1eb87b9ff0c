#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dyadnet {

// Square matrix over GF(2), at most 64x64. Row i is a bitmask; bit j of
// rows[i] is the entry in row i, column j (0-based).
struct BitMatrix {
    int n = 0;
    std::vector<std::uint64_t> rows;

    BitMatrix() = default;
    explicit BitMatrix(int size);

    static BitMatrix identity(int n);
    // Anti-diagonal matrix: maps digit vector (v_1..v_n) to (v_n..v_1).
    static BitMatrix reversal(int n);
    // Row-major string of '0'/'1', length n*n.
    static BitMatrix from_string(int n, const std::string& bits);

    bool get(int i, int j) const { return (rows[i] >> j) & 1u; }
    void set(int i, int j, bool v);

    std::string to_string() const;

    bool operator==(const BitMatrix&) const = default;
};

// GF(2) rank of a list of row bitmasks over n columns.
int gf2_rank(std::vector<std::uint64_t> rows, int n);

// Parity of the bits of x.
inline int parity64(std::uint64_t x) { return __builtin_parityll(x); }

}  // namespace dyadnet
