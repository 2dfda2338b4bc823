#include "linkmorse/path_reversal.hpp"

#include <algorithm>
#include <set>

namespace linkmorse {

ReversalPlan plan_reversals(const Complex& cx, const VectorField& f, const PlanOptions& options)
{
    const Linkage& L = cx.linkage();
    const int n = cx.n();
    ReversalPlan plan;
    std::set<Complex::CellId> endpoints;

    for (Complex::CellId beta = 0; beta < cx.size(); ++beta) {
        if (!f.is_critical(beta))
            continue;
        const CellLabel& label = cx.label(beta);
        const auto cls = classify_critical(L, label);
        if (cls.type != CriticalClass::Type::Two)
            continue;

        // j > * forces j to be the largest entry of the n-block other than n.
        const Subset rest = cls.nblock.without(n);
        if (rest.empty())
            continue;
        const int j = rest.max();
        if (!cls.club.empty() && cls.club.front() > j)
            continue;
        if (options.require_j_greater_than_k && j < cls.k)
            continue;
        if (!L.is_prelong(cls.prelong, j))
            continue;

        std::vector<Subset> blocks;
        for (int s : cls.spade)
            blocks.push_back(Subset::single(s));
        blocks.push_back(Subset::single(cls.k));
        blocks.push_back(cls.prelong);
        blocks.push_back(Subset::single(j));
        for (int c : cls.club)
            blocks.push_back(Subset::single(c));
        blocks.push_back(cls.nblock.without(j));
        const CellLabel alpha_label(std::move(blocks));
        const auto alpha = cx.find(alpha_label);
        if (!alpha || !f.is_critical(*alpha))
            throw Error(ErrorKind::PredictionMismatch,
                        "expected critical partner " + alpha_label.to_string() + " for " + label.to_string());

        auto paths = enumerate_paths(cx, f, beta, *alpha, options.path_cap);
        if (paths.size() != 1)
            throw Error(ErrorKind::NonUniquePath, std::to_string(paths.size()) + " gradient paths from " +
                                                      label.to_string() + " to " + alpha_label.to_string());
        if (!endpoints.insert(beta).second || !endpoints.insert(*alpha).second)
            throw Error(ErrorKind::DuplicateEndpoint,
                        "critical cell reused by the pair " + label.to_string() + " -> " + alpha_label.to_string());
        plan.triples.push_back({beta, *alpha, std::move(paths.front()), j});
    }
    return plan;
}

VectorField apply_reversals(const Complex& cx, const VectorField& f, const ReversalPlan& plan)
{
    std::set<Complex::CellId> touched;
    for (const auto& t : plan.triples)
        for (auto c : t.path.cells)
            if (!touched.insert(c).second)
                throw Error(ErrorKind::FieldAxiomViolation,
                            "reversed paths share the cell " + cx.label(c).to_string());

    VectorField out = f;
    for (const auto& t : plan.triples) {
        const auto& cells = t.path.cells;
        for (std::size_t i = 1; i + 1 < cells.size(); i += 2)
            out.unpair(cells[i], cells[i + 1]);
    }
    for (const auto& t : plan.triples) {
        const auto& cells = t.path.cells;
        for (std::size_t i = 0; i + 1 < cells.size(); i += 2)
            out.pair(cells[i + 1], cells[i]);
    }
    return out;
}

std::vector<std::vector<Complex::CellId>> predicted_final_critical(const Complex& cx, const VectorField& initial)
{
    const Linkage& L = cx.linkage();
    auto crit = critical_cells(cx, initial);
    for (auto& cells : crit) {
        std::erase_if(cells, [&](Complex::CellId c) {
            const auto cls = classify_critical(L, cx.label(c));
            if (cls.type == CriticalClass::Type::One)
                return false;
            const bool survives = cls.star().all_less_than(cls.k) && (cls.club.empty() || cls.club.front() < cls.k);
            return !survives;
        });
    }
    return crit;
}

std::vector<std::vector<Complex::CellId>> final_critical_cells(const Complex& cx, const VectorField& initial,
                                                               const VectorField& reversed)
{
    auto actual = critical_cells(cx, reversed);
    const auto predicted = predicted_final_critical(cx, initial);
    if (actual != predicted) {
        for (std::size_t d = 0; d < actual.size(); ++d) {
            std::vector<Complex::CellId> extra, missing;
            std::set_difference(actual[d].begin(), actual[d].end(), predicted[d].begin(), predicted[d].end(),
                                std::back_inserter(extra));
            std::set_difference(predicted[d].begin(), predicted[d].end(), actual[d].begin(), actual[d].end(),
                                std::back_inserter(missing));
            if (!extra.empty())
                throw Error(ErrorKind::PredictionMismatch,
                            "unexpected critical cell " + cx.label(extra.front()).to_string() + " after reversal");
            if (!missing.empty())
                throw Error(ErrorKind::PredictionMismatch,
                            "expected critical cell " + cx.label(missing.front()).to_string() + " was matched");
        }
    }
    return actual;
}

} // namespace linkmorse
