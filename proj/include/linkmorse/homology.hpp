#pragma once

#include "linkmorse/cell_complex.hpp"
#include "linkmorse/linkage.hpp"
#include "linkmorse/morse_matching.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace linkmorse {

/// Dense matrix over GF(2), row-major, 64 columns per word.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_((cols + 63) / 64), words_(rows * stride_, 0)
    {
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return (words_[r * stride_ + c / 64] >> (c % 64)) & 1u; }
    void set(std::size_t r, std::size_t c, bool value = true)
    {
        auto& w = words_[r * stride_ + c / 64];
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        w = value ? (w | bit) : (w & ~bit);
    }
    void flip(std::size_t r, std::size_t c) { words_[r * stride_ + c / 64] ^= std::uint64_t{1} << (c % 64); }

    bool is_zero() const;
    std::size_t count_ones() const;

    /// Rank by Gaussian elimination on a copy; pivots taken at the lowest
    /// available row index, columns left to right.
    std::size_t rank() const;

    friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> words_;
};

/// b_0..b_{n-3}.
struct BettiVector {
    std::vector<std::uint64_t> values;

    std::uint64_t sum() const;
    long long euler() const;
    /// "1,6,30,6,1"
    std::string to_string() const;

    friend bool operator==(const BettiVector&, const BettiVector&) = default;
};

/// Boundary map d_k : C_k -> C_{k-1} with columns as sorted row indices
/// (local to dimension k-1). Every facet has incidence 1 mod 2.
struct SparseBoundary {
    int dim = 0;
    std::size_t rows = 0;
    std::vector<std::vector<std::uint32_t>> columns;

    BitMatrix to_dense() const;
};

/// d_0 .. d_{n-2}; d_0 and d_{n-2} are zero maps (0 rows resp. 0 columns).
std::vector<SparseBoundary> boundary_maps(const Complex& cx);

/// Dense versions of boundary_maps, for small complexes.
std::vector<BitMatrix> boundary_matrices_mod2(const Complex& cx);

/// d_k d_{k+1} = 0 for every k, checked column by column.
bool boundary_squares_to_zero(const Complex& cx);

/// Rank over GF(2) of a sparse boundary by column reduction (lowest pivot).
std::size_t sparse_rank(const SparseBoundary& d);

/// Cellular Betti numbers over GF(2): b_k = c_k - rank d_k - rank d_{k+1}.
BettiVector betti_mod2(const Complex& cx);

/// b_k = a_k + a_{n-3-k} with a the short-set profile.
BettiVector betti_from_short_sets(const Linkage& L);

struct BijectionRow {
    Subset J;
    CellLabel type1;
    CellLabel type2;
};

/// The two critical cells attached to a short set J containing n. Throws NotShort
/// or MissingN.
BijectionRow bijection_map(const Linkage& L, Subset J);

/// One row per short set containing n, ordered as Linkage::short_sets_containing_n.
std::vector<BijectionRow> bijection_table(const Linkage& L);

/// Entry (alpha, beta) of matrix p is the parity of the number of gradient paths
/// from a critical (p+1)-cell beta to a critical p-cell alpha. Rows and columns
/// follow critical_cells order. The field must be acyclic.
std::vector<BitMatrix> morse_differential_mod2(const Complex& cx, const VectorField& f);

/// Throws NonzeroDifferential on the first nonzero entry.
void require_zero_differential(const Complex& cx, const VectorField& f, const std::vector<BitMatrix>& d);

} // namespace linkmorse
