// Acceptance run: one line per criterion, exit status 1 if any fails.
#include "support.hpp"

#include "linkmorse/homology.hpp"
#include "linkmorse/morse_matching.hpp"
#include "linkmorse/path_reversal.hpp"
#include "linkmorse/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace linkmorse;
using namespace linkmorse::testing;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<std::size_t> to_sizes(const std::vector<std::uint64_t>& v) { return {v.begin(), v.end()}; }

std::string join(const std::vector<std::size_t>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

// Every report produced along the way, for the perfectness criterion.
std::vector<VerificationReport> seen;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool condition, const std::string& what)
    {
        if (!condition && pass) {
            pass = false;
            detail = what;
        }
    }
};

VerificationReport timed_verify(const Linkage& L, double& ms, std::optional<PipelineState>* state = nullptr)
{
    const auto start = Clock::now();
    auto r = verify_linkage(L, {}, state);
    ms += ms_since(start);
    seen.push_back(r);
    return r;
}

void require_all_checks(Outcome& o, const VerificationReport& r)
{
    if (const auto* c = r.first_failure())
        o.require(false, r.linkage + ": " + c->name + ": " + c->detail);
}

Outcome triangle()
{
    double ms = 0;
    Outcome o;
    const auto r = timed_verify(Linkage::parse("1,1,1"), ms);
    require_all_checks(o, r);
    o.require(r.cells_per_dim == std::vector<std::size_t>{2}, "cells " + join(r.cells_per_dim));
    o.require(r.critical_final_per_dim == std::vector<std::size_t>{2}, "final critical " + join(r.critical_final_per_dim));
    o.require(r.betti_cellular.values == std::vector<std::uint64_t>{2}, "betti " + r.betti_cellular.to_string());
    o.require(ms < 1.0, "took " + std::to_string(ms) + " ms");
    if (o.pass)
        o.detail = "2 cells, 2 final critical, betti (2); " + std::to_string(ms) + " ms < 1 ms";
    return o;
}

Outcome circle()
{
    double ms = 0;
    Outcome o;
    std::optional<PipelineState> state;
    const auto r = timed_verify(Linkage::parse("1,1,1,3/2"), ms, &state);
    require_all_checks(o, r);
    o.require(r.betti_cellular.values == std::vector<std::uint64_t>{1, 1}, "cellular " + r.betti_cellular.to_string());
    o.require(r.betti_shortsets.values == std::vector<std::uint64_t>{1, 1}, "short sets " + r.betti_shortsets.to_string());
    o.require(r.euler == 0, "euler " + std::to_string(r.euler));
    o.require(r.critical_final_per_dim == std::vector<std::size_t>{1, 1}, "final " + join(r.critical_final_per_dim));
    if (state) {
        for (const auto& m : morse_differential_mod2(state->complex, state->reversed))
            o.require(m.is_zero(), "nonzero Morse differential");
    }
    o.require(ms < 10.0, "took " + std::to_string(ms) + " ms");
    if (o.pass)
        o.detail = "betti (1,1) both ways, chi 0, zero differential; " + std::to_string(ms) + " ms < 10 ms";
    return o;
}

Outcome sphere_family()
{
    Outcome o;
    double worst = 0;
    for (int n = 5; n <= 7; ++n) {
        double ms = 0;
        const auto r = timed_verify(sphere(n), ms);
        require_all_checks(o, r);
        std::vector<std::size_t> expected(static_cast<std::size_t>(n - 2), 0);
        expected.front() = expected.back() = 1;
        o.require(r.critical_final_per_dim == expected, "n=" + std::to_string(n) + " final " + join(r.critical_final_per_dim));
        o.require(to_sizes(r.betti_cellular.values) == expected, "n=" + std::to_string(n) + " betti " + r.betti_cellular.to_string());
        o.require(ms < 5000.0, "n=" + std::to_string(n) + " took " + std::to_string(ms) + " ms");
        worst = std::max(worst, ms);
    }
    if (o.pass)
        o.detail = "n=5,6,7: critical cells only in dims 0 and n-3; slowest " + std::to_string(worst) + " ms < 5 s";
    return o;
}

Outcome tori_family()
{
    Outcome o;
    double worst = 0;
    for (int n = 5; n <= 7; ++n) {
        double ms = 0;
        std::optional<PipelineState> state;
        const auto r = timed_verify(two_tori(n), ms, &state);
        require_all_checks(o, r);
        const std::string tag = "n=" + std::to_string(n) + " ";
        o.require(r.betti_cellular.sum() == (std::uint64_t{2} << (n - 3)), tag + "betti sum " + std::to_string(r.betti_cellular.sum()));
        o.require(r.critical_final_per_dim == to_sizes(r.betti_shortsets.values), tag + "final " + join(r.critical_final_per_dim));
        o.require(state && state->plan.empty(), tag + "reversal plan is not empty");
        o.require(ms < 5000.0, tag + "took " + std::to_string(ms) + " ms");
        worst = std::max(worst, ms);
    }
    if (o.pass)
        o.detail = "n=5,6,7: betti sum 2*2^(n-3), empty plan; slowest " + std::to_string(worst) + " ms < 5 s";
    return o;
}

Outcome equilateral7()
{
    Outcome o;
    double ms = 0;
    std::optional<PipelineState> state;
    const auto L = equilateral(7);
    const auto r = timed_verify(L, ms, &state);
    const auto start = Clock::now();
    const auto r7 = bijection_map(L, Subset::of({7}));
    const auto r567 = bijection_map(L, Subset::of({5, 6, 7}));
    ms += ms_since(start);

    require_all_checks(o, r);
    o.require(r.critical_final_per_dim == std::vector<std::size_t>{1, 6, 30, 6, 1}, "final " + join(r.critical_final_per_dim));
    o.require(r.betti_cellular.sum() == 44, "betti sum");
    o.require(r.betti_cellular.values == std::vector<std::uint64_t>{1, 6, 30, 6, 1}, "betti " + r.betti_cellular.to_string());
    o.require(r7.type1 == lab("({6}{5}{4}{3}{2}{1}{7})"), "J={7} type 1 " + r7.type1.to_string());
    o.require(r7.type2 == lab("({3}{4,5,6}{7,1,2})"), "J={7} type 2 " + r7.type2.to_string());
    o.require(r567.type1 == lab("({4}{3}{2}{1}{7,5,6})"), "J={5,6,7} type 1 " + r567.type1.to_string());
    o.require(r567.type2 == lab("({6}{5}{1}{2,3,4}{7})"), "J={5,6,7} type 2 " + r567.type2.to_string());
    if (state)
        for (const auto& m : morse_differential_mod2(state->complex, state->reversed))
            o.require(m.is_zero(), "nonzero Morse differential");
    o.require(ms < 60000.0, "took " + std::to_string(ms) + " ms");
    if (o.pass)
        o.detail = "44 final critical cells (1,6,30,6,1), bijection labels verbatim; " + std::to_string(ms) + " ms < 60 s";
    return o;
}

Outcome fuzz_suite()
{
    Outcome o;
    std::mt19937_64 rng(1);
    constexpr std::size_t cases = 24;
    std::map<int, std::size_t> by_n;
    std::size_t literal = 0;
    double ms = 0;
    for (std::size_t i = 0; i < cases; ++i) {
        const auto L = random_linkage(rng, 4, 7);
        const auto r = timed_verify(L, ms);
        require_all_checks(o, r);
        ++by_n[L.n()];
        for (const auto& c : r.checks)
            if (c.name == "literal_steps_agreement" && c.detail.find("skipped") == std::string::npos)
                ++literal;
    }
    std::size_t small = 0;
    for (auto [n, count] : by_n)
        if (n <= 6)
            small += count;
    o.require(literal == small, "literal-step oracle ran on " + std::to_string(literal) + " of " + std::to_string(small) + " cases with n <= 6");
    o.require(ms < 600000.0, "took " + std::to_string(ms) + " ms");
    if (o.pass) {
        std::ostringstream os;
        os << cases << " generic linkages (";
        bool first = true;
        for (auto [n, count] : by_n) {
            os << (first ? "" : ", ") << "n=" << n << ": " << count;
            first = false;
        }
        os << "), 18 checks each; " << ms << " ms < 10 min";
        o.detail = os.str();
    }
    return o;
}

Outcome perfectness()
{
    Outcome o;
    double ms = 0;
    timed_verify(Linkage::parse("1,2,4,4,4,5,5,6"), ms);
    for (const auto& r : seen) {
        o.require(r.critical_final_per_dim == to_sizes(r.betti_cellular.values),
                  r.linkage + ": final " + join(r.critical_final_per_dim) + " vs cellular " + r.betti_cellular.to_string());
        o.require(r.betti_cellular == r.betti_shortsets,
                  r.linkage + ": cellular " + r.betti_cellular.to_string() + " vs short sets " + r.betti_shortsets.to_string());
    }
    if (o.pass)
        o.detail = "critical k-cells = b_k = a_k + a_(n-3-k) on all " + std::to_string(seen.size()) + " linkages";
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"triangle", triangle},
        {"circle", circle},
        {"sphere family", sphere_family},
        {"two-tori family", tori_family},
        {"equilateral 7", equilateral7},
        {"structural suite on fuzzed linkages", fuzz_suite},
        {"per-dimension perfectness", perfectness},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const Error& e) {
            o = {false, std::string(to_string(e.kind())) + ": " + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail << "\n";
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
}
