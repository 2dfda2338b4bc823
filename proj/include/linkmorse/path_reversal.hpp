#pragma once

#include "linkmorse/cell_complex.hpp"
#include "linkmorse/gradient_paths.hpp"
#include "linkmorse/morse_matching.hpp"

#include <cstdint>
#include <vector>

namespace linkmorse {

/// One path to reverse: beta = (spade {k} I club {n,*,j}) down to
/// alpha = (spade {k} I {j} club {n,*}) along its unique gradient path.
struct ReversalTriple {
    Complex::CellId beta = 0;
    Complex::CellId alpha = 0;
    GradientPath path;
    int j = 0;
};

struct ReversalPlan {
    std::vector<ReversalTriple> triples;

    bool empty() const { return triples.empty(); }
};

struct PlanOptions {
    /// The j > k condition. Dropping it is only useful as a negative control.
    bool require_j_greater_than_k = true;
    std::uint64_t path_cap = 1'000'000;
};

/// Selects every type-2 pair (beta, alpha) as above with I j-prelong and
/// j > *, j > club (and j > k unless disabled), each with its unique path.
/// Throws NonUniquePath when the path count is not 1 and DuplicateEndpoint when
/// a critical cell would be used twice.
ReversalPlan plan_reversals(const Complex& cx, const VectorField& f, const PlanOptions& options = {});

/// Reverses all planned paths at once: drops (alpha_i, beta_i) for i = 1..m and
/// adds (alpha_{i+1}, beta_i) for i = 0..m. Throws FieldAxiomViolation if two
/// planned paths share a cell.
VectorField apply_reversals(const Complex& cx, const VectorField& f, const ReversalPlan& plan);

/// Critical cells expected after reversal, derived from the initial field: every
/// type-1 cell and every type-2 cell with k > * and k > club.
std::vector<std::vector<Complex::CellId>> predicted_final_critical(const Complex& cx, const VectorField& initial);

/// Unmatched cells of the reversed field. Throws PredictionMismatch when they
/// differ from predicted_final_critical(cx, initial).
std::vector<std::vector<Complex::CellId>> final_critical_cells(const Complex& cx, const VectorField& initial,
                                                               const VectorField& reversed);

inline bool verify_final_morse(const Complex& cx, const VectorField& reversed) { return verify_acyclic(cx, reversed); }

} // namespace linkmorse
