#include "linkmorse/morse_matching.hpp"

#include <algorithm>

namespace linkmorse {

std::string_view to_string(MoveKind kind)
{
    return kind == MoveKind::Forward ? "forward" : "backward";
}

CellLabel move_forward(const CellLabel& c, int k)
{
    const int b = c.block_of(k);
    std::vector<Subset> blocks(c.blocks().begin(), c.blocks().end());
    blocks[b] = blocks[b] | blocks[b + 1];
    blocks.erase(blocks.begin() + b + 1);
    return CellLabel(std::move(blocks));
}

CellLabel move_backward(const CellLabel& c, int k)
{
    const int b = c.block_of(k);
    std::vector<Subset> blocks(c.blocks().begin(), c.blocks().end());
    blocks[b] = blocks[b].without(k);
    blocks.insert(blocks.begin() + b, Subset::single(k));
    return CellLabel(std::move(blocks));
}

void VectorField::pair(CellId lower, CellId upper)
{
    if (partner_[lower] != kNone || partner_[upper] != kNone)
        throw Error(ErrorKind::FieldAxiomViolation,
                    "cell " + std::to_string(partner_[lower] != kNone ? lower : upper) + " is already matched");
    partner_[lower] = upper;
    partner_[upper] = lower;
    up_[lower] = true;
    up_[upper] = false;
}

void VectorField::unpair(CellId lower, CellId upper)
{
    if (partner_[lower] != upper || partner_[upper] != lower)
        throw Error(ErrorKind::FieldAxiomViolation,
                    "cells " + std::to_string(lower) + " and " + std::to_string(upper) + " are not a pair");
    partner_[lower] = partner_[upper] = kNone;
    up_[lower] = up_[upper] = false;
}

std::vector<std::pair<VectorField::CellId, VectorField::CellId>> VectorField::pairs() const
{
    std::vector<std::pair<CellId, CellId>> out;
    for (CellId c = 0; c < partner_.size(); ++c)
        if (matched_up(c))
            out.emplace_back(c, partner_[c]);
    return out;
}

VectorField build_field(const Complex& cx)
{
    const Linkage& L = cx.linkage();
    VectorField f(cx.size());
    for (Complex::CellId c = 0; c < cx.size(); ++c) {
        if (!f.is_critical(c))
            continue;
        auto found = pair_search(L, cx.label(c));
        if (!found)
            continue;
        const auto partner = cx.find(found->partner);
        if (!partner)
            throw Error(ErrorKind::InconsistentMatch,
                        "partner " + found->partner.to_string() + " of " + cx.label(c).to_string() + " is not a cell");
        auto back = pair_search(L, found->partner);
        if (!back || back->partner != cx.label(c) || back->report.entry != found->report.entry)
            throw Error(ErrorKind::InconsistentMatch, "pair search is not an involution at " + cx.label(c).to_string() +
                                                          " -> " + found->partner.to_string());
        if (found->report.kind == MoveKind::Forward)
            f.pair(c, *partner);
        else
            f.pair(*partner, c);
    }
    return f;
}

VectorField build_field_literal_steps(const Complex& cx)
{
    const int n = cx.n();
    VectorField f(cx.size());
    std::vector<VectorField::CellId> step_partner(cx.size(), VectorField::kNone);

    for (int k = 1; k < n; ++k) {
        std::vector<std::pair<VectorField::CellId, VectorField::CellId>> found;
        for (Complex::CellId alpha = 0; alpha < cx.size(); ++alpha) {
            if (!f.is_critical(alpha))
                continue;
            const CellLabel& a = cx.label(alpha);
            const std::size_t last = a.block_count() - 1;
            for (std::size_t b = 0; b + 1 < last; ++b) {
                if (a.block(b) != Subset::single(k))
                    continue;
                const Subset I = a.block(b + 1);
                // n, 1, ..., k-1 not in I (k itself is in the singleton).
                if (I.contains(n) || I.intersects(Subset::range(k)))
                    break;
                std::vector<Subset> merged(a.blocks().begin(), a.blocks().end());
                merged[b] = Subset::single(k) | I;
                merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(b) + 1);
                const auto beta = cx.find(CellLabel(std::move(merged)));
                if (!beta || !f.is_critical(*beta))
                    break;
                if (step_partner[alpha] != VectorField::kNone || step_partner[*beta] != VectorField::kNone)
                    throw Error(ErrorKind::AmbiguousStep, "step " + std::to_string(k) + " pairs " +
                                                              cx.label(*beta).to_string() + " twice");
                step_partner[alpha] = *beta;
                step_partner[*beta] = alpha;
                found.emplace_back(alpha, *beta);
                break;
            }
        }
        for (auto [alpha, beta] : found) {
            f.pair(alpha, beta);
            step_partner[alpha] = step_partner[beta] = VectorField::kNone;
        }
    }
    return f;
}

std::vector<std::string> check_field_axioms(const Complex& cx, const VectorField& f)
{
    std::vector<std::string> violations;
    if (f.size() != cx.size()) {
        violations.push_back("field size does not match the complex");
        return violations;
    }
    for (Complex::CellId c = 0; c < cx.size(); ++c) {
        const auto p = f.partner(c);
        if (!p)
            continue;
        if (f.partner(*p) != c)
            violations.push_back("partner of partner differs at " + cx.label(c).to_string());
        if (f.matched_up(c) == f.matched_up(*p))
            violations.push_back("direction flags disagree at " + cx.label(c).to_string());
        if (!f.matched_up(c))
            continue;
        if (cx.dimension(*p) != cx.dimension(c) + 1)
            violations.push_back("pair " + cx.label(c).to_string() + " / " + cx.label(*p).to_string() +
                                 " does not shift dimension by one");
        else if (!cx.has_facet(*p, c))
            violations.push_back(cx.label(c).to_string() + " is not a facet of its partner " + cx.label(*p).to_string());
    }
    return violations;
}

std::vector<std::vector<Complex::CellId>> critical_cells(const Complex& cx, const VectorField& f)
{
    std::vector<std::vector<Complex::CellId>> out(static_cast<std::size_t>(cx.top_dimension()) + 1);
    for (Complex::CellId c = 0; c < cx.size(); ++c)
        if (f.is_critical(c))
            out[cx.dimension(c)].push_back(c);
    return out;
}

std::optional<std::vector<Complex::CellId>> find_closed_path(const Complex& cx, const VectorField& f)
{
    enum : std::uint8_t { White, Grey, Black };
    std::vector<std::uint8_t> colour(cx.size(), White);
    struct Frame {
        Complex::CellId alpha;
        std::size_t next;
    };

    for (Complex::CellId root = 0; root < cx.size(); ++root) {
        if (colour[root] != White || !f.matched_up(root))
            continue;
        std::vector<Frame> stack{{root, 0}};
        colour[root] = Grey;
        while (!stack.empty()) {
            Frame& top = stack.back();
            const auto beta = *f.partner(top.alpha);
            const auto faces = cx.facets(beta);
            if (top.next == faces.size()) {
                colour[top.alpha] = Black;
                stack.pop_back();
                continue;
            }
            const auto next = faces[top.next++];
            if (next == top.alpha || !f.matched_up(next))
                continue;
            if (colour[next] == Grey) {
                std::vector<Complex::CellId> cycle;
                auto it = std::find_if(stack.begin(), stack.end(), [&](const Frame& fr) { return fr.alpha == next; });
                for (; it != stack.end(); ++it) {
                    cycle.push_back(it->alpha);
                    cycle.push_back(*f.partner(it->alpha));
                }
                cycle.push_back(next);
                return cycle;
            }
            if (colour[next] == White) {
                colour[next] = Grey;
                stack.push_back({next, 0});
            }
        }
    }
    return std::nullopt;
}

std::string CriticalClass::to_string() const
{
    auto run = [](const std::vector<int>& v) {
        std::string s;
        for (int e : v)
            s += "{" + std::to_string(e) + "}";
        return s;
    };
    if (type == Type::One)
        return "type1 spade=" + run(spade) + " nset=" + nblock.to_string();
    return "type2 spade=" + run(spade) + " k=" + std::to_string(k) + " I=" + prelong.to_string() + " club=" + run(club) +
           " nset=" + nblock.to_string();
}

} // namespace linkmorse
