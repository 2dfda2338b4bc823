#include "linkmorse/pipeline.hpp"

#include "linkmorse/gradient_paths.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace linkmorse {

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string tag_for(ErrorCategory c)
{
    switch (c) {
    case ErrorCategory::Bug: return "[implementation bug] ";
    case ErrorCategory::Falsification: return "[claim falsified] ";
    case ErrorCategory::Input: return "[invalid input] ";
    case ErrorCategory::Precondition: return "[precondition] ";
    }
    return "";
}

Outcome falsified(const std::string& what) { return {false, "[claim falsified] " + what}; }
Outcome bug(const std::string& what) { return {false, "[implementation bug] " + what}; }

std::string join_counts(const std::vector<std::size_t>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

CellLabel insert_into_club(const CriticalClass& cls, int j)
{
    std::vector<int> club = cls.club;
    club.insert(std::upper_bound(club.begin(), club.end(), j, std::greater<>()), j);
    std::vector<Subset> blocks;
    for (int s : cls.spade)
        blocks.push_back(Subset::single(s));
    blocks.push_back(Subset::single(cls.k));
    blocks.push_back(cls.prelong);
    for (int c : club)
        blocks.push_back(Subset::single(c));
    blocks.push_back(cls.nblock.without(j));
    return CellLabel(std::move(blocks));
}

CellLabel split_backward_from_nblock(const CellLabel& beta, int j)
{
    std::vector<Subset> blocks(beta.blocks().begin(), beta.blocks().end());
    blocks.back() = blocks.back().without(j);
    blocks.insert(blocks.end() - 1, Subset::single(j));
    return CellLabel(std::move(blocks));
}

} // namespace

std::vector<std::size_t> sizes_per_dim(const std::vector<std::vector<Complex::CellId>>& cells)
{
    std::vector<std::size_t> out;
    for (const auto& c : cells)
        out.push_back(c.size());
    return out;
}

bool VerificationReport::passed() const
{
    return first_failure() == nullptr;
}

const Check* VerificationReport::first_failure() const
{
    for (const auto& c : checks)
        if (!c.pass)
            return &c;
    return nullptr;
}

nlohmann::json VerificationReport::to_json() const
{
    nlohmann::json j;
    j["linkage"] = linkage;
    j["permutation"] = permutation;
    j["n"] = n;
    j["cells_per_dim"] = cells_per_dim;
    j["critical_initial_per_dim"] = critical_initial_per_dim;
    j["critical_final_per_dim"] = critical_final_per_dim;
    j["betti_cellular"] = betti_cellular.values;
    j["betti_shortsets"] = betti_shortsets.values;
    j["euler"] = euler;
    j["perfect"] = perfect;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
        j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return j;
}

VerificationReport verify_linkage(const Linkage& L, const VerifyOptions& options, std::optional<PipelineState>* state)
{
    const auto started = std::chrono::steady_clock::now();
    VerificationReport report;
    report.linkage = L.to_string();
    report.permutation.assign(L.input_permutation().begin(), L.input_permutation().end());
    report.n = L.n();

    const Complex cx = Complex::enumerate(L, options.complex);
    report.cells_per_dim = cx.counts_per_dim();
    report.euler = euler_characteristic(cx);
    const int n = cx.n();
    const int top = cx.top_dimension();

    auto run = [&](const std::string& name, const std::function<Outcome()>& body) {
        Check check{name, true, ""};
        try {
            auto o = body();
            check.pass = o.pass;
            check.detail = std::move(o.detail);
        } catch (const Error& e) {
            check.pass = false;
            check.detail = tag_for(e.category()) + std::string(to_string(e.kind())) + ": " + e.what();
        } catch (const std::exception& e) {
            check.pass = false;
            check.detail = std::string("[implementation bug] ") + e.what();
        }
        report.checks.push_back(check);
        return check.pass;
    };
    auto skip = [&](const std::string& name, const std::string& why) {
        report.checks.push_back({name, false, "not run: " + why});
    };

    run("regular_complex", [&] {
        const auto r = validate_regular(cx);
        if (!r.ok())
            return bug(r.violations.front() + " (" + std::to_string(r.violations.size()) + " violations)");
        return Outcome{true, std::to_string(r.intervals_checked) + " length-2 intervals"};
    });

    run("boundary_squares_zero", [&] {
        return boundary_squares_to_zero(cx) ? Outcome{true, ""} : bug("d o d != 0 over GF(2)");
    });

    // Initial field ----------------------------------------------------------
    std::optional<VectorField> initial;
    run("field_axioms_initial", [&] {
        initial = build_field(cx);
        const auto v = check_field_axioms(cx, *initial);
        if (!v.empty())
            return bug(v.front());
        for (auto [lo, hi] : initial->pairs())
            if (cx.label(lo).n_block() != cx.label(hi).n_block())
                return bug("pair changes the n-block: " + cx.label(lo).to_string());
        return Outcome{true, std::to_string(initial->pairs().size()) + " pairs"};
    });
    if (!initial) {
        report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return report;
    }
    const VectorField& f = *initial;
    const auto crit0 = critical_cells(cx, f);
    report.critical_initial_per_dim = sizes_per_dim(crit0);

    if (n <= options.literal_steps_max_n) {
        run("literal_steps_agreement", [&] {
            const auto literal = build_field_literal_steps(cx);
            if (literal == f)
                return Outcome{true, ""};
            for (Complex::CellId c = 0; c < cx.size(); ++c)
                if (literal.partner(c) != f.partner(c))
                    return falsified("step simulation and pair search disagree at " + cx.label(c).to_string());
            return falsified("step simulation and pair search disagree");
        });
    } else {
        report.checks.push_back({"literal_steps_agreement", true, "skipped: n > " + std::to_string(options.literal_steps_max_n)});
    }

    const bool acyclic0 = run("acyclic_initial", [&] {
        if (auto cycle = find_closed_path(cx, f))
            return falsified("closed V-path through " + cx.label(cycle->front()).to_string());
        return Outcome{true, ""};
    });

    std::map<Complex::CellId, CriticalClass> classes;
    const bool classified = run("critical_classification", [&] {
        std::size_t type1 = 0, type2 = 0;
        for (const auto& cells : crit0)
            for (auto c : cells) {
                auto cls = classify_critical(L, cx.label(c));
                (cls.type == CriticalClass::Type::One ? type1 : type2)++;
                classes.emplace(c, std::move(cls));
            }
        return Outcome{true, std::to_string(type1) + " type 1, " + std::to_string(type2) + " type 2"};
    });

    std::vector<std::optional<PathDag>> dags(static_cast<std::size_t>(top) + 1);
    auto dag_for = [&](int p) -> const PathDag& {
        if (!dags[p])
            dags[p].emplace(cx, f, p);
        return *dags[p];
    };

    if (acyclic0 && classified) {
        run("type1_to_type2_no_paths", [&] {
            for (int p = 0; p < top; ++p) {
                const PathDag& dag = dag_for(p);
                const auto base = cx.begin_of(p);
                std::vector<char> reach(cx.count(p), 0);
                auto order = dag.topological_order();
                for (auto it = order.rbegin(); it != order.rend(); ++it) {
                    const auto a = *it;
                    if (f.is_critical(a)) {
                        reach[a - base] = classes.at(a).type == CriticalClass::Type::Two;
                    } else if (f.matched_up(a)) {
                        for (auto g : successors(cx, f, a))
                            if (reach[g - base]) {
                                reach[a - base] = 1;
                                break;
                            }
                    }
                }
                for (auto beta : crit0[p + 1]) {
                    if (classes.at(beta).type != CriticalClass::Type::One)
                        continue;
                    for (auto g : cx.facets(beta))
                        if (reach[g - base])
                            return falsified("gradient path from type 1 cell " + cx.label(beta).to_string() +
                                             " to a type 2 cell");
                }
            }
            return Outcome{true, ""};
        });

        run("prelong_pairs_unique_path", [&] {
            std::size_t pairs = 0;
            for (const auto& [beta, cls] : classes) {
                if (cls.type != CriticalClass::Type::Two)
                    continue;
                for (int j : cls.star().members()) {
                    if (!L.is_prelong(cls.prelong, j))
                        continue;
                    const auto alpha = cx.find(insert_into_club(cls, j));
                    if (!alpha || !f.is_critical(*alpha) || classes.at(*alpha).type != CriticalClass::Type::Two)
                        continue;
                    ++pairs;
                    const PathDag& dag = dag_for(cx.dimension(*alpha));
                    const auto base = cx.begin_of(dag.dimension());
                    const auto counts = dag.counts_to(*alpha);
                    std::uint64_t total = 0;
                    for (auto g : cx.facets(beta))
                        total += counts[g - base];
                    if (total != 1)
                        return falsified(std::to_string(total) + " gradient paths from " + cx.label(beta).to_string() +
                                         " to " + cx.label(*alpha).to_string());
                    const auto first = cx.find(split_backward_from_nblock(cx.label(beta), j));
                    if (!first || counts[*first - base] != 1)
                        return falsified("the path from " + cx.label(beta).to_string() + " does not start by splitting " +
                                         std::to_string(j) + " backward out of the n-block");
                }
            }
            return Outcome{true, std::to_string(pairs) + " pairs"};
        });

        run("order_invariant", [&] {
            std::mt19937_64 rng(options.seed);
            std::size_t checked = 0, wraparound = 0;
            for (int p = 0; p < top; ++p) {
                const auto& sources = crit0[p + 1];
                if (sources.empty())
                    continue;
                for (std::size_t s = 0; s < options.order_samples; ++s) {
                    GradientPath path;
                    const auto beta = sources[rng() % sources.size()];
                    path.cells.push_back(beta);
                    auto faces = cx.facets(beta);
                    auto a = faces[rng() % faces.size()];
                    path.cells.push_back(a);
                    for (std::size_t guard = 0; f.matched_up(a) && guard <= cx.count(p); ++guard) {
                        const auto next = successors(cx, f, a);
                        path.cells.push_back(*f.partner(a));
                        if (next.empty())
                            break;
                        a = next[rng() % next.size()];
                        path.cells.push_back(a);
                    }
                    if (!f.is_critical(path.cells.back()))
                        continue;
                    ++checked;
                    if (!check_order_invariant(cx, path))
                        return falsified("order of entries changes along the path from " + cx.label(beta).to_string() +
                                         " to " + cx.label(path.cells.back()).to_string());
                    if (!check_order_invariant(cx, path, OrderScope::Literal))
                        ++wraparound;
                }
            }
            return Outcome{true, std::to_string(checked) + " sampled gradient paths; " + std::to_string(wraparound) +
                                     " reorder an n-block entry when it is split off to the front"};
        });
    } else {
        for (auto name : {"type1_to_type2_no_paths", "prelong_pairs_unique_path", "order_invariant"})
            skip(name, "initial field is not a classified Morse function");
    }

    // Reversal ---------------------------------------------------------------
    std::optional<ReversalPlan> plan;
    if (acyclic0 && classified) {
        run("reversal_plan", [&] {
            plan = plan_reversals(cx, f, PlanOptions{true, options.path_cap});
            for (const auto& t : plan->triples)
                if (!check_order_invariant(cx, t.path))
                    return falsified("order of entries changes along the reversed path from " +
                                     cx.label(t.beta).to_string());
            return Outcome{true, std::to_string(plan->triples.size()) + " paths"};
        });
    } else {
        skip("reversal_plan", "initial field is not a classified Morse function");
    }

    std::optional<VectorField> reversed;
    if (plan) {
        run("field_axioms_final", [&] {
            reversed = apply_reversals(cx, f, *plan);
            const auto v = check_field_axioms(cx, *reversed);
            return v.empty() ? Outcome{true, ""} : bug(v.front());
        });
    } else {
        skip("field_axioms_final", "no reversal plan");
    }

    const auto betti = betti_mod2(cx);
    const auto betti_short = betti_from_short_sets(L);
    report.betti_cellular = betti;
    report.betti_shortsets = betti_short;

    run("betti_agreement", [&] {
        if (betti != betti_short)
            return falsified("cellular Betti numbers " + betti.to_string() + " differ from the short-set count " +
                             betti_short.to_string());
        return Outcome{true, betti.to_string()};
    });
    run("euler_characteristic", [&] {
        if (report.euler != betti.euler())
            return bug("cell count Euler characteristic " + std::to_string(report.euler) + " differs from " +
                       std::to_string(betti.euler()));
        return Outcome{true, std::to_string(report.euler)};
    });

    if (reversed) {
        const VectorField& f2 = *reversed;
        const auto crit2 = critical_cells(cx, f2);
        report.critical_final_per_dim = sizes_per_dim(crit2);

        const bool acyclic2 = run("acyclic_final", [&] {
            if (auto cycle = find_closed_path(cx, f2))
                return falsified("closed V-path after reversal through " + cx.label(cycle->front()).to_string());
            return Outcome{true, ""};
        });
        run("final_critical_prediction", [&] {
            final_critical_cells(cx, f, f2);
            return Outcome{true, join_counts(report.critical_final_per_dim)};
        });
        run("perfect_per_dimension", [&] {
            for (int k = 0; k <= top; ++k)
                if (crit2[k].size() != betti.values[k])
                    return falsified(std::to_string(crit2[k].size()) + " critical " + std::to_string(k) +
                                     "-cells but b_" + std::to_string(k) + " = " + std::to_string(betti.values[k]));
            return Outcome{true, ""};
        });
        report.perfect = report.critical_final_per_dim == std::vector<std::size_t>(betti.values.begin(), betti.values.end());

        if (acyclic2) {
            run("morse_differential_zero", [&] {
                const auto d = morse_differential_mod2(cx, f2);
                require_zero_differential(cx, f2, d);
                return Outcome{true, ""};
            });
        } else {
            skip("morse_differential_zero", "reversed field has closed paths");
        }

        run("bijection", [&] {
            std::set<CellLabel> hit;
            const auto rows = bijection_table(L);
            for (const auto& row : rows) {
                const int k = row.J.size() - 1;
                for (const auto* label : {&row.type1, &row.type2}) {
                    const auto id = cx.find(*label);
                    if (!id || !f2.is_critical(*id))
                        return falsified("image " + label->to_string() + " of " + row.J.to_string() +
                                         " is not a final critical cell");
                    if (!hit.insert(*label).second)
                        return falsified("bijection is not injective at " + label->to_string());
                }
                if (row.type1.dimension() != k || row.type2.dimension() != top - k)
                    return falsified("dimension bookkeeping fails for " + row.J.to_string());
            }
            std::size_t total = 0;
            for (const auto& cells : crit2)
                total += cells.size();
            if (hit.size() != total)
                return falsified(std::to_string(total - hit.size()) + " final critical cells are not hit");
            return Outcome{true, std::to_string(rows.size()) + " short sets containing n"};
        });
    } else {
        for (auto name : {"acyclic_final", "final_critical_prediction", "perfect_per_dimension",
                          "morse_differential_zero", "bijection"})
            skip(name, "no reversed field");
    }

    if (state && reversed)
        state->emplace(PipelineState{cx, f, *plan, *reversed});
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

} // namespace linkmorse
