#pragma once

#include "linkmorse/cell_complex.hpp"
#include "linkmorse/error.hpp"
#include "linkmorse/linkage.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace linkmorse {

enum class MoveKind { Forward, Backward };

std::string_view to_string(MoveKind kind);

/// How a cell reaches its partner: entry k either merges forward into the block
/// that follows its singleton, or splits backward out of a block it is the
/// minimum of. The pair arises at step k.
struct MoveReport {
    int entry = 0;
    MoveKind kind = MoveKind::Forward;
    int step = 0;

    friend bool operator==(const MoveReport&, const MoveReport&) = default;
};

struct PairSearchResult {
    CellLabel partner;
    MoveReport report;
};

/// {k} is a singleton followed by a block I without n, k < I, and {k} + I short.
template <ShortnessOracle Oracle>
bool forward_movable(const Oracle& L, const CellLabel& c, int k)
{
    const int b = c.block_of(k);
    const int last = static_cast<int>(c.block_count()) - 1;
    if (b < 0 || b + 1 >= last || !c.block(b).is_singleton())
        return false;
    const Subset next = c.block(b + 1);
    return next.all_greater_than(k) && L.is_short(next.with(k));
}

/// k = Min(J) for a non-singleton block J without n, and J is preceded (cyclically)
/// by a non-singleton, by a singleton {m} with m > k, or by the n-block.
template <ShortnessOracle Oracle>
bool backward_movable(const Oracle&, const CellLabel& c, int k)
{
    const int b = c.block_of(k);
    const int last = static_cast<int>(c.block_count()) - 1;
    if (b < 0 || b == last)
        return false;
    const Subset J = c.block(b);
    if (J.is_singleton() || J.min() != k)
        return false;
    if (b == 0)
        return true;
    const Subset prev = c.block(b - 1);
    return !prev.is_singleton() || prev.min() > k;
}

CellLabel move_forward(const CellLabel& c, int k);
CellLabel move_backward(const CellLabel& c, int k);

/// Moves the minimal movable entry. Empty iff c is critical.
template <ShortnessOracle Oracle>
std::optional<PairSearchResult> pair_search(const Oracle& L, const CellLabel& c)
{
    for (int k = 1; k < c.n(); ++k) {
        if (forward_movable(L, c, k))
            return PairSearchResult{move_forward(c, k), {k, MoveKind::Forward, k}};
        if (backward_movable(L, c, k))
            return PairSearchResult{move_backward(c, k), {k, MoveKind::Backward, k}};
    }
    return std::nullopt;
}

/// A discrete vector field: a partial pairing of cells with cofacets.
class VectorField {
public:
    using CellId = Complex::CellId;
    static constexpr CellId kNone = std::numeric_limits<CellId>::max();

    VectorField() = default;
    explicit VectorField(std::size_t cells) : partner_(cells, kNone), up_(cells, false) {}

    std::size_t size() const { return partner_.size(); }

    bool is_critical(CellId c) const { return partner_[c] == kNone; }
    std::optional<CellId> partner(CellId c) const
    {
        return partner_[c] == kNone ? std::nullopt : std::optional<CellId>(partner_[c]);
    }
    /// Matched with a cell one dimension higher.
    bool matched_up(CellId c) const { return partner_[c] != kNone && up_[c]; }
    bool matched_down(CellId c) const { return partner_[c] != kNone && !up_[c]; }

    /// Throws FieldAxiomViolation if either cell is already matched.
    void pair(CellId lower, CellId upper);
    void unpair(CellId lower, CellId upper);

    /// All pairs as (lower, upper), ordered by lower id.
    std::vector<std::pair<CellId, CellId>> pairs() const;

    friend bool operator==(const VectorField&, const VectorField&) = default;

private:
    std::vector<CellId> partner_;
    std::vector<bool> up_;
};

/// The pairing produced by pair_search on every cell. Throws InconsistentMatch if
/// the search is not an involution.
VectorField build_field(const Complex& cx);

/// Runs Step 1..n-1 as a sequential simulation: at step k pair every
/// (.. {k} I ..) with (.. {k}+I ..), I free of n and of 1..k-1, when both cells
/// were unpaired before the step. Used as an oracle for build_field. Throws
/// AmbiguousStep if a cell would get two partners within one step.
VectorField build_field_literal_steps(const Complex& cx);

/// Involution, one-dimension shift and facet relation for every pair.
std::vector<std::string> check_field_axioms(const Complex& cx, const VectorField& f);

/// Unmatched cells, grouped by dimension, in id order.
std::vector<std::vector<Complex::CellId>> critical_cells(const Complex& cx, const VectorField& f);

/// A closed V-path alpha_0, beta_0, alpha_1, ..., alpha_0 if one exists.
std::optional<std::vector<Complex::CellId>> find_closed_path(const Complex& cx, const VectorField& f);

inline bool verify_acyclic(const Complex& cx, const VectorField& f) { return !find_closed_path(cx, f); }

// ---------------------------------------------------------------------------
// Classification of critical cells.

/// Type 1: (spade {n,*}). Type 2: (spade {k} I club {n,*}) with I k-prelong,
/// k < I and k < spade. Spade and club are strictly decreasing runs of singletons.
struct CriticalClass {
    enum class Type { One, Two };

    Type type = Type::One;
    std::vector<int> spade;
    int k = 0;
    Subset prelong;
    std::vector<int> club;
    Subset nblock;

    /// The n-block minus n (the "*").
    Subset star() const { return nblock.without(nblock.max()); }
    std::string to_string() const;
};

namespace detail {

inline bool decreasing_singletons(const CellLabel& c, std::size_t from, std::size_t to, std::vector<int>& out)
{
    out.clear();
    for (std::size_t i = from; i < to; ++i) {
        const Subset b = c.block(i);
        if (!b.is_singleton() || (!out.empty() && out.back() <= b.min()))
            return false;
        out.push_back(b.min());
    }
    return true;
}

} // namespace detail

/// Throws NotCritical if c has a movable entry, ClassificationGap if a critical
/// cell fits neither type.
template <ShortnessOracle Oracle>
CriticalClass classify_critical(const Oracle& L, const CellLabel& c)
{
    if (auto p = pair_search(L, c))
        throw Error(ErrorKind::NotCritical, c.to_string() + " is paired by moving entry " + std::to_string(p->report.entry));

    const std::size_t last = c.block_count() - 1;
    CriticalClass cls;
    cls.nblock = c.n_block();
    if (detail::decreasing_singletons(c, 0, last, cls.spade)) {
        cls.type = CriticalClass::Type::One;
        return cls;
    }

    for (std::size_t p = 1; p < last; ++p) {
        std::vector<int> head;
        if (!detail::decreasing_singletons(c, 0, p, head))
            break;
        const int k = head.back();
        const Subset I = c.block(p);
        if (!I.all_greater_than(k) || !L.is_short(I) || L.is_short(I.with(k)))
            continue;
        std::vector<int> club;
        if (!detail::decreasing_singletons(c, p + 1, last, club))
            continue;
        head.pop_back();
        cls.type = CriticalClass::Type::Two;
        cls.spade = std::move(head);
        cls.k = k;
        cls.prelong = I;
        cls.club = std::move(club);
        return cls;
    }
    throw Error(ErrorKind::ClassificationGap, "critical cell " + c.to_string() + " fits neither critical type");
}

} // namespace linkmorse
