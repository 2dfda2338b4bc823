#pragma once

#include "linkmorse/cell_complex.hpp"
#include "linkmorse/morse_matching.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace linkmorse {

/// beta_0, alpha_1, beta_1, ..., alpha_{m+1}: beta_0 and alpha_{m+1} critical,
/// each (alpha_i, beta_i) a pair, each alpha_{i+1} a facet of beta_i other than alpha_i.
struct GradientPath {
    std::vector<Complex::CellId> cells;

    Complex::CellId source() const { return cells.front(); }
    Complex::CellId target() const { return cells.back(); }
    /// Number of split-steps.
    std::size_t splits() const { return (cells.size() + 1) / 2; }
};

/// Facets of the partner of alpha, except alpha itself. Throws Unmatched unless
/// alpha is matched with a higher cell.
std::vector<Complex::CellId> successors(const Complex& cx, const VectorField& f, Complex::CellId alpha);

/// The V-path graph on the p-cells: alpha -> alpha' whenever alpha is matched up to
/// beta and alpha' != alpha is a facet of beta. Holds references to cx and f.
class PathDag {
public:
    PathDag(const Complex& cx, const VectorField& f, int dim);

    int dimension() const { return dim_; }
    std::size_t size() const { return cx_.count(dim_); }
    bool acyclic() const { return order_.size() == size(); }
    /// Every edge goes from an earlier to a later position. Partial if cyclic.
    std::span<const Complex::CellId> topological_order() const { return order_; }

    /// Number of V-paths from every p-cell (as alpha_1) to the critical `target`,
    /// indexed by id - begin_of(dim). Saturates at UINT64_MAX.
    std::vector<std::uint64_t> counts_to(Complex::CellId target) const;

    /// For each p-cell, the parity of the number of V-paths to each of `targets`
    /// (critical p-cells), packed 64 per word.
    std::vector<std::vector<std::uint64_t>> parities_to(std::span<const Complex::CellId> targets) const;

    const Complex& complex() const { return cx_; }
    const VectorField& field() const { return f_; }

private:
    const Complex& cx_;
    const VectorField& f_;
    int dim_;
    std::vector<Complex::CellId> order_;
};

/// Exact number of gradient paths from critical beta to critical alpha
/// (saturating). Throws Unmatched if either end is not critical.
std::uint64_t count_paths(const Complex& cx, const VectorField& f, Complex::CellId beta, Complex::CellId alpha);

bool count_paths_mod2(const Complex& cx, const VectorField& f, Complex::CellId beta, Complex::CellId alpha);

/// All gradient paths from beta to alpha. Throws PathCapExceeded if there are more
/// than `cap`.
std::vector<GradientPath> enumerate_paths(const Complex& cx, const VectorField& f, Complex::CellId beta,
                                          Complex::CellId alpha, std::uint64_t cap = 1'000'000);

enum class OrderScope {
    /// Pairs whose smaller entry lies outside the n-block of the anchoring cell.
    OutsideNBlock,
    /// Every pair, reading "left of" in the linear string with the n-block last.
    /// Splitting J off to the front of the string breaks this reading.
    Literal,
};

/// Whenever k > m sit in different blocks with k to the left, they stay in
/// different blocks in that order in every later cell.
bool check_order_invariant(std::span<const CellLabel> cells, OrderScope scope = OrderScope::OutsideNBlock);
bool check_order_invariant(const Complex& cx, const GradientPath& path, OrderScope scope = OrderScope::OutsideNBlock);

/// Graphviz rendering: traversed cells as nodes, facet relations among them as
/// solid edges (downwards), matched pairs along the paths as bold edges (upwards).
std::string paths_to_dot(const Complex& cx, const VectorField& f, std::span<const GradientPath> paths);

} // namespace linkmorse
