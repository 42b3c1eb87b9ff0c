#include "dyadnet/bitmatrix.hpp"

#include <stdexcept>

namespace dyadnet {

BitMatrix::BitMatrix(int size) : n(size), rows(static_cast<std::size_t>(size), 0) {
    if (size < 1 || size > 64) throw std::invalid_argument("BitMatrix: size must be in [1, 64]");
}

BitMatrix BitMatrix::identity(int n) {
    BitMatrix m(n);
    for (int i = 0; i < n; ++i) m.rows[i] = 1ULL << i;
    return m;
}

BitMatrix BitMatrix::reversal(int n) {
    BitMatrix m(n);
    for (int i = 0; i < n; ++i) m.rows[i] = 1ULL << (n - 1 - i);
    return m;
}

BitMatrix BitMatrix::from_string(int n, const std::string& bits) {
    BitMatrix m(n);
    if (bits.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("BitMatrix::from_string: expected " + std::to_string(n * n) +
                                    " characters, got " + std::to_string(bits.size()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            char ch = bits[static_cast<std::size_t>(i) * n + j];
            if (ch != '0' && ch != '1')
                throw std::invalid_argument("BitMatrix::from_string: invalid character");
            m.set(i, j, ch == '1');
        }
    return m;
}

void BitMatrix::set(int i, int j, bool v) {
    if (v)
        rows[i] |= 1ULL << j;
    else
        rows[i] &= ~(1ULL << j);
}

std::string BitMatrix::to_string() const {
    std::string s;
    s.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s.push_back(get(i, j) ? '1' : '0');
    return s;
}

int gf2_rank(std::vector<std::uint64_t> rows, int n) {
    int rank = 0;
    for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
        std::size_t piv = rows.size();
        for (std::size_t i = rank; i < rows.size(); ++i)
            if ((rows[i] >> col) & 1u) {
                piv = i;
                break;
            }
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != static_cast<std::size_t>(rank) && ((rows[i] >> col) & 1u)) rows[i] ^= rows[rank];
        ++rank;
    }
    return rank;
}

}  // namespace dyadnet
