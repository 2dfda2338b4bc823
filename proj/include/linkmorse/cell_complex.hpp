#pragma once

#include "linkmorse/linkage.hpp"
#include "linkmorse/subset.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace linkmorse {

/// A cyclically ordered partition of [n], written linearly with the block
/// containing n (the n-block) last. Order of blocks matters; order inside a
/// block does not.
class CellLabel {
public:
    CellLabel() = default;
    explicit CellLabel(std::vector<Subset> blocks) : blocks_(std::move(blocks)) {}

    /// Accepts "{3}{4,5,6}{7,1,2}", optionally wrapped in parentheses, members in
    /// any order. Checks only that the blocks partition {1..max}, with the
    /// maximum in the last block. Throws InvalidLabel.
    static CellLabel parse(std::string_view text);

    std::span<const Subset> blocks() const { return blocks_; }
    std::size_t block_count() const { return blocks_.size(); }
    Subset block(std::size_t i) const { return blocks_[i]; }
    Subset n_block() const { return blocks_.back(); }
    int n() const { return blocks_.empty() ? 0 : blocks_.back().max(); }
    int dimension() const { return n() - static_cast<int>(blocks_.size()); }

    /// Index of the block holding entry e, or -1.
    int block_of(int e) const;

    /// Canonical text: members ascending, n-block last, e.g. "{3}{4,5,6}{1,2,7}".
    std::string to_string() const;

    friend bool operator==(const CellLabel&, const CellLabel&) = default;
    /// Lexicographic over blocks, each block compared by its ascending member list.
    friend std::strong_ordering operator<=>(const CellLabel& a, const CellLabel& b);

private:
    std::vector<Subset> blocks_;
};

/// True iff the label partitions [L.n()], keeps n in the last block, has at
/// least three blocks, and every block is short.
bool is_admissible(const Linkage& L, const CellLabel& c);

/// Codimension-one faces: every ordered split of one block. A non-n block B
/// gives 2^|B|-2 facets in place. Splitting the n-block into J (without n) and K
/// (with n) gives two facets: J right before K, and J at the front of the string.
std::vector<CellLabel> facets(const CellLabel& c);

/// Face relation (reflexive): every block of `coarse` is a union of cyclically
/// consecutive blocks of `fine`, visited in the same cyclic order.
bool is_face(const CellLabel& fine, const CellLabel& coarse);

struct ComplexOptions {
    int max_n = 9;
    bool force = false;
};

/// The regular CW complex K(L): admissible cyclically ordered partitions as cells,
/// with the facet relation as its Hasse diagram.
///
/// Cell ids are dense and ordered by (dimension, label); each dimension occupies
/// a contiguous id range. Immutable once built.
class Complex {
public:
    using CellId = std::uint32_t;

    /// Throws SizeGuard when n > options.max_n and !options.force.
    static Complex enumerate(const Linkage& L, const ComplexOptions& options = {});

    const Linkage& linkage() const { return linkage_; }
    int n() const { return linkage_.n(); }
    int top_dimension() const { return linkage_.n() - 3; }

    std::size_t size() const { return labels_.size(); }
    std::size_t count(int dim) const { return dim_begin_[dim + 1] - dim_begin_[dim]; }
    std::vector<std::size_t> counts_per_dim() const;
    CellId begin_of(int dim) const { return dim_begin_[dim]; }
    CellId end_of(int dim) const { return dim_begin_[dim + 1]; }

    const CellLabel& label(CellId id) const { return labels_[id]; }
    int dimension(CellId id) const { return dims_[id]; }

    std::optional<CellId> find(const CellLabel& c) const;
    /// Throws InvalidLabel if c is not a cell.
    CellId id_of(const CellLabel& c) const;

    std::span<const CellId> facets(CellId id) const
    {
        return {facet_ids_.data() + facet_offsets_[id], facet_ids_.data() + facet_offsets_[id + 1]};
    }
    std::span<const CellId> cofacets(CellId id) const
    {
        return {cofacet_ids_.data() + cofacet_offsets_[id], cofacet_ids_.data() + cofacet_offsets_[id + 1]};
    }
    bool has_facet(CellId upper, CellId lower) const;

private:
    explicit Complex(Linkage L) : linkage_(std::move(L)) {}

    Linkage linkage_;
    std::vector<CellLabel> labels_;
    std::vector<int> dims_;
    std::vector<CellId> dim_begin_;
    std::vector<std::size_t> facet_offsets_;
    std::vector<CellId> facet_ids_; // sorted per cell
    std::vector<std::size_t> cofacet_offsets_;
    std::vector<CellId> cofacet_ids_;
};

long long euler_characteristic(const Complex& cx);

/// Face relation by downward search in the Hasse diagram; must agree with is_face.
bool is_face_by_reachability(const Complex& cx, Complex::CellId fine, Complex::CellId coarse);

struct RegularityReport {
    std::vector<std::string> violations;
    std::size_t intervals_checked = 0;
    bool ok() const { return violations.empty(); }
};

/// Diamond property on every length-2 interval, plus duplicate-free facet lists
/// that step down exactly one dimension.
RegularityReport validate_regular(const Complex& cx);

} // namespace linkmorse
