#include "linkmorse/homology.hpp"

#include "linkmorse/error.hpp"
#include "linkmorse/gradient_paths.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace linkmorse {

// ---------------------------------------------------------------------------
// BitMatrix

bool BitMatrix::is_zero() const
{
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t BitMatrix::count_ones() const
{
    std::size_t total = 0;
    for (auto w : words_)
        total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::size_t BitMatrix::rank() const
{
    std::vector<std::uint64_t> m = words_;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        std::size_t pivot = rank;
        while (pivot < rows_ && !(m[pivot * stride_ + w] & bit))
            ++pivot;
        if (pivot == rows_)
            continue;
        if (pivot != rank)
            std::swap_ranges(m.begin() + static_cast<std::ptrdiff_t>(pivot * stride_),
                             m.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * stride_),
                             m.begin() + static_cast<std::ptrdiff_t>(rank * stride_));
        const std::uint64_t* src = m.data() + rank * stride_;
        for (std::size_t r = rank + 1; r < rows_; ++r) {
            std::uint64_t* dst = m.data() + r * stride_;
            if (dst[w] & bit)
                for (std::size_t k = w; k < stride_; ++k)
                    dst[k] ^= src[k];
        }
        ++rank;
    }
    return rank;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b)
{
    BitMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        std::uint64_t* dst = out.words_.data() + r * out.stride_;
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (!a.get(r, k))
                continue;
            const std::uint64_t* src = b.words_.data() + k * b.stride_;
            for (std::size_t w = 0; w < out.stride_; ++w)
                dst[w] ^= src[w];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// BettiVector

std::uint64_t BettiVector::sum() const
{
    return std::accumulate(values.begin(), values.end(), std::uint64_t{0});
}

long long BettiVector::euler() const
{
    long long chi = 0;
    for (std::size_t k = 0; k < values.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(values[k]);
    return chi;
}

std::string BettiVector::to_string() const
{
    std::string s;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k)
            s += ',';
        s += std::to_string(values[k]);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Boundary maps

BitMatrix SparseBoundary::to_dense() const
{
    BitMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (auto r : columns[c])
            m.set(r, c);
    return m;
}

std::vector<SparseBoundary> boundary_maps(const Complex& cx)
{
    const int top = cx.top_dimension();
    std::vector<SparseBoundary> maps;
    for (int k = 0; k <= top + 1; ++k) {
        SparseBoundary d;
        d.dim = k;
        d.rows = k == 0 ? 0 : cx.count(k - 1);
        if (k <= top) {
            const auto row_base = k == 0 ? 0 : cx.begin_of(k - 1);
            for (auto c = cx.begin_of(k); c < cx.end_of(k); ++c) {
                std::vector<std::uint32_t> col;
                for (auto f : cx.facets(c))
                    col.push_back(f - row_base);
                d.columns.push_back(std::move(col));
            }
        }
        maps.push_back(std::move(d));
    }
    return maps;
}

std::vector<BitMatrix> boundary_matrices_mod2(const Complex& cx)
{
    std::vector<BitMatrix> out;
    for (const auto& d : boundary_maps(cx))
        out.push_back(d.to_dense());
    return out;
}

bool boundary_squares_to_zero(const Complex& cx)
{
    std::vector<Complex::CellId> below;
    for (Complex::CellId c = 0; c < cx.size(); ++c) {
        below.clear();
        for (auto g : cx.facets(c))
            for (auto h : cx.facets(g))
                below.push_back(h);
        std::sort(below.begin(), below.end());
        for (std::size_t i = 0; i < below.size();) {
            std::size_t j = i;
            while (j < below.size() && below[j] == below[i])
                ++j;
            if ((j - i) % 2 != 0)
                return false;
            i = j;
        }
    }
    return true;
}

namespace {

struct Reduction {
    std::size_t rank = 0;
    std::vector<bool> pivot_rows;
};

// Standard column reduction over GF(2). Columns flagged in `cleared` are known to
// reduce to zero and are skipped.
Reduction reduce(const SparseBoundary& d, const std::vector<bool>& cleared)
{
    Reduction out;
    out.pivot_rows.assign(d.rows, false);
    constexpr std::uint32_t kNoColumn = ~std::uint32_t{0};
    std::vector<std::uint32_t> owner(d.rows, kNoColumn);
    std::vector<std::vector<std::uint32_t>> reduced(d.columns.size());
    std::vector<std::uint32_t> scratch;

    for (std::size_t c = 0; c < d.columns.size(); ++c) {
        if (!cleared.empty() && cleared[c])
            continue;
        std::vector<std::uint32_t> col = d.columns[c];
        while (!col.empty() && owner[col.back()] != kNoColumn) {
            const auto& other = reduced[owner[col.back()]];
            scratch.clear();
            std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                          std::back_inserter(scratch));
            col.swap(scratch);
        }
        if (col.empty())
            continue;
        owner[col.back()] = static_cast<std::uint32_t>(c);
        out.pivot_rows[col.back()] = true;
        reduced[c] = std::move(col);
        ++out.rank;
    }
    return out;
}

} // namespace

std::size_t sparse_rank(const SparseBoundary& d)
{
    return reduce(d, {}).rank;
}

BettiVector betti_mod2(const Complex& cx)
{
    const int top = cx.top_dimension();
    const auto maps = boundary_maps(cx);
    std::vector<std::size_t> rank(static_cast<std::size_t>(top) + 2, 0);
    // Top-down, so pivots of d_{k+1} clear columns of d_k.
    std::vector<bool> cleared;
    for (int k = top; k >= 1; --k) {
        auto red = reduce(maps[k], cleared);
        rank[k] = red.rank;
        cleared = std::move(red.pivot_rows);
    }
    BettiVector b;
    for (int k = 0; k <= top; ++k)
        b.values.push_back(cx.count(k) - rank[k] - rank[k + 1]);
    return b;
}

BettiVector betti_from_short_sets(const Linkage& L)
{
    const auto a = L.short_set_profile();
    const std::size_t top = a.size() - 1;
    BettiVector b;
    for (std::size_t k = 0; k <= top; ++k)
        b.values.push_back(a[k] + a[top - k]);
    return b;
}

// ---------------------------------------------------------------------------
// Bijection between short sets containing n and final critical cells

BijectionRow bijection_map(const Linkage& L, Subset J)
{
    const int n = L.n();
    if (!J.contains(n))
        throw Error(ErrorKind::MissingN, J.to_string() + " does not contain " + std::to_string(n));
    if (!J.is_subset_of(L.all()) || !L.is_short(J))
        throw Error(ErrorKind::NotShort, J.to_string() + " is not short");

    const Subset complement = L.all() - J;
    std::vector<int> descending = complement.members();
    std::reverse(descending.begin(), descending.end());

    BijectionRow row;
    row.J = J;

    std::vector<Subset> type1;
    for (int e : descending)
        type1.push_back(Subset::single(e));
    type1.push_back(J);
    row.type1 = CellLabel(std::move(type1));

    // Grow I from the top of the complement while it stays short; the entry that
    // would make it long becomes j. The complement is long, so j exists.
    Subset I;
    int j = 0;
    for (int e : descending) {
        if (L.is_short(I.with(e))) {
            I = I.with(e);
        } else {
            j = e;
            break;
        }
    }
    const Subset nset = (complement - I).without(j).with(n);

    std::vector<int> singles = J.without(n).members();
    std::reverse(singles.begin(), singles.end());
    std::vector<Subset> type2;
    for (int s : singles)
        if (s > j)
            type2.push_back(Subset::single(s));
    type2.push_back(Subset::single(j));
    type2.push_back(I);
    for (int s : singles)
        if (s < j)
            type2.push_back(Subset::single(s));
    type2.push_back(nset);
    row.type2 = CellLabel(std::move(type2));
    return row;
}

std::vector<BijectionRow> bijection_table(const Linkage& L)
{
    std::vector<BijectionRow> rows;
    for (Subset J : L.short_sets_containing_n())
        rows.push_back(bijection_map(L, J));
    return rows;
}

// ---------------------------------------------------------------------------
// Morse differential

std::vector<BitMatrix> morse_differential_mod2(const Complex& cx, const VectorField& f)
{
    const auto crit = critical_cells(cx, f);
    std::vector<BitMatrix> out;
    for (int p = 0; p < cx.top_dimension(); ++p) {
        const PathDag dag(cx, f, p);
        if (!dag.acyclic())
            throw Error(ErrorKind::FieldAxiomViolation,
                        "closed V-path in dimension " + std::to_string(p) + "; not a Morse function");
        const auto& rows = crit[p];
        const auto& cols = crit[p + 1];
        const auto bits = dag.parities_to(rows);
        const auto base = cx.begin_of(p);
        BitMatrix m(rows.size(), cols.size());
        std::vector<std::uint64_t> acc;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            acc.assign((rows.size() + 63) / 64, 0);
            for (auto g : cx.facets(cols[c]))
                for (std::size_t w = 0; w < acc.size(); ++w)
                    acc[w] ^= bits[g - base][w];
            for (std::size_t r = 0; r < rows.size(); ++r)
                if ((acc[r / 64] >> (r % 64)) & 1u)
                    m.set(r, c);
        }
        out.push_back(std::move(m));
    }
    return out;
}

void require_zero_differential(const Complex& cx, const VectorField& f, const std::vector<BitMatrix>& d)
{
    const auto crit = critical_cells(cx, f);
    for (std::size_t p = 0; p < d.size(); ++p)
        for (std::size_t r = 0; r < d[p].rows(); ++r)
            for (std::size_t c = 0; c < d[p].cols(); ++c)
                if (d[p].get(r, c))
                    throw Error(ErrorKind::NonzeroDifferential,
                                "odd number of gradient paths from " + cx.label(crit[p + 1][c]).to_string() + " to " +
                                    cx.label(crit[p][r]).to_string());
}

} // namespace linkmorse
