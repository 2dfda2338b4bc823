#include "support.hpp"

#include "linkmorse/morse_matching.hpp"

#include <doctest.h>

using namespace linkmorse;
using namespace linkmorse::testing;

namespace {

const auto all_short9 = PredicateOracle{9, [](Subset s) { return s.size() <= 4; }};

// A field on the circle that pairs every vertex with the edge leading to the
// next vertex around the loop: every cell matched, one closed V-path.
VectorField cyclic_circle_field(const Complex& cx)
{
    VectorField f(cx.size());
    Complex::CellId v = cx.begin_of(0);
    Complex::CellId e = cx.cofacets(v)[0];
    for (std::size_t step = 0; step < cx.count(0); ++step) {
        f.pair(v, e);
        const auto ends = cx.facets(e);
        v = ends[0] == v ? ends[1] : ends[0];
        const auto up = cx.cofacets(v);
        e = up[0] == e ? up[1] : up[0];
    }
    return f;
}

} // namespace

TEST_CASE("forward movable")
{
    const auto L = equilateral(7);
    CHECK(forward_movable(L, lab("{1}{2}{3}{4}{5}{6}{7}"), 1));
    CHECK_FALSE(forward_movable(L, lab("{6}{5}{4}{3}{2}{1}{7}"), 6));
    // The block before the n-block never accepts.
    CHECK_FALSE(forward_movable(L, lab("{6}{5}{4}{3}{2}{1}{7}"), 1));

    const auto o = short_only(8, {Subset::of({5, 6}), Subset::of({4, 7, 8})});
    CHECK(forward_movable(o, lab("{5}{6}{3}{2}{1}{8,4,7}"), 5));
    const auto tight = short_only(8, {Subset::of({4, 7, 8})});
    CHECK_FALSE(forward_movable(tight, lab("{5}{6}{3}{2}{1}{8,4,7}"), 5));
}

TEST_CASE("backward movable")
{
    CHECK(backward_movable(all_short9, lab("{7,5}{3}{8,1,2,4,6}"), 5));
    CHECK(backward_movable(all_short9, lab("{7}{5}{3}{6,2}{1}{8,4}"), 2));
    CHECK_FALSE(backward_movable(equilateral(7), lab("{3}{4,5,6}{7,1,2}"), 4));
    // Not the minimum of its block.
    CHECK_FALSE(backward_movable(all_short9, lab("{7,5}{3}{8,1,2,4,6}"), 7));
    // Preceded by a non-singleton.
    CHECK(backward_movable(equilateral(7), lab("{1,2}{3,4}{5}{6,7}"), 3));
}

TEST_CASE("pair search on labelled examples")
{
    auto p = pair_search(all_short9, lab("{7,5}{3}{8,1,2,4,6}"));
    REQUIRE(p);
    CHECK(p->partner == lab("{5}{7}{3}{8,1,2,4,6}"));
    CHECK(p->report == MoveReport{5, MoveKind::Backward, 5});

    const auto o = short_only(8, {Subset::of({5, 6}), Subset::of({4, 7, 8})});
    p = pair_search(o, lab("{5}{6}{3}{2}{1}{8,4,7}"));
    REQUIRE(p);
    CHECK(p->partner == lab("{5,6}{3}{2}{1}{8,4,7}"));
    CHECK(p->report == MoveReport{5, MoveKind::Forward, 5});

    p = pair_search(all_short9, lab("{7}{5}{3}{6,2}{1}{8,4}"));
    REQUIRE(p);
    CHECK(p->partner == lab("{7}{5}{3}{2}{6}{1}{8,4}"));

    CHECK_FALSE(pair_search(all_short9, lab("{7}{5}{3}{8,1,2,4,6}")));
    CHECK(to_string(MoveKind::Backward) == "backward");
}

TEST_CASE("classification of critical cells")
{
    const auto t1 = classify_critical(all_short9, lab("{7}{5}{3}{8,1,2,4,6}"));
    CHECK(t1.type == CriticalClass::Type::One);
    CHECK(t1.spade == std::vector<int>{7, 5, 3});

    const auto L = equilateral(7);
    const auto a = classify_critical(L, lab("{3}{4,5,6}{7,1,2}"));
    CHECK(a.type == CriticalClass::Type::Two);
    CHECK(a.spade.empty());
    CHECK(a.k == 3);
    CHECK(a.prelong == Subset::of({4, 5, 6}));
    CHECK(a.club.empty());
    CHECK(a.star() == Subset::of({1, 2}));

    const auto b = classify_critical(L, lab("{6}{5}{1}{2,3,4}{7}"));
    CHECK(b.type == CriticalClass::Type::Two);
    CHECK(b.spade == std::vector<int>{6, 5});
    CHECK(b.k == 1);
    CHECK(b.prelong == Subset::of({2, 3, 4}));

    // {6,4} is 3-prelong: short, but {3,4,6} is long.
    const auto prelong = short_only(7, {Subset::of({4, 6}), Subset::of({2, 7}), Subset::of({3, 5})});
    const auto c = classify_critical(prelong, lab("{5}{3}{6,4}{1}{7,2}"));
    CHECK(c.type == CriticalClass::Type::Two);
    CHECK(c.spade == std::vector<int>{5});
    CHECK(c.k == 3);
    CHECK(c.club == std::vector<int>{1});
    const auto loose = short_only(7, {Subset::of({3, 4, 6}), Subset::of({2, 7}), Subset::of({3, 5})});
    CHECK(pair_search(loose, lab("{5}{3}{6,4}{1}{7,2}")).has_value());

    CHECK(error_kind([&] { classify_critical(L, lab("{1}{2}{3}{4}{5}{6}{7}")); }) == ErrorKind::NotCritical);
}

TEST_CASE("triangle: both points are critical")
{
    const auto cx = Complex::enumerate(Linkage::parse("1,1,1"));
    const auto f = build_field(cx);
    CHECK(f.pairs().empty());
    CHECK(critical_cells(cx, f) == std::vector<std::vector<Complex::CellId>>{{0, 1}});
    CHECK(build_field_literal_steps(cx) == f);
}

TEST_CASE("sphere n = 6: exactly two critical cells")
{
    const auto cx = Complex::enumerate(sphere(6));
    const auto f = build_field(cx);
    const auto crit = critical_cells(cx, f);
    std::vector<std::string> labels;
    for (const auto& d : crit)
        for (auto c : d)
            labels.push_back(cx.label(c).to_string());
    CHECK(labels == std::vector<std::string>{"{5}{4}{3}{2}{1}{6}", "{1}{2,3,4,5}{6}"});
}

TEST_CASE("literal step simulation agrees with pair search for n <= 6")
{
    for (const auto& L : sample_linkages(6, 16)) {
        const auto cx = Complex::enumerate(L);
        CHECK_MESSAGE(build_field_literal_steps(cx) == build_field(cx), L.to_string());
    }
    const auto eq5 = Complex::enumerate(Linkage::parse("1,1,1,1,7/4"));
    CHECK(build_field_literal_steps(eq5) == build_field(eq5));
}

TEST_CASE("property: field axioms, move shape and classification")
{
    for (const auto& L : sample_linkages(7, 8)) {
        const auto cx = Complex::enumerate(L);
        const auto f = build_field(cx);
        CHECK_MESSAGE(check_field_axioms(cx, f).empty(), L.to_string());
        for (Complex::CellId c = 0; c < cx.size(); ++c) {
            const auto& label = cx.label(c);
            for (int k = 1; k < L.n(); ++k)
                REQUIRE_FALSE((forward_movable(L, label, k) && backward_movable(L, label, k)));
            if (auto p = f.partner(c)) {
                REQUIRE(cx.label(*p).n_block() == label.n_block());
                REQUIRE(f.partner(*p) == c);
                REQUIRE(std::abs(cx.dimension(*p) - cx.dimension(c)) == 1);
            } else {
                REQUIRE_FALSE(pair_search(L, label));
                REQUIRE_NOTHROW(classify_critical(L, label));
            }
        }
        CHECK_MESSAGE(verify_acyclic(cx, f), L.to_string());
    }
}

TEST_CASE("acyclicity and the closed-path negative control")
{
    const auto circle = Complex::enumerate(Linkage::parse("1,1,1,3/2"));
    CHECK(verify_acyclic(circle, build_field(circle)));
    CHECK(verify_acyclic(Complex::enumerate(equilateral(7)), build_field(Complex::enumerate(equilateral(7)))));

    const auto bad = cyclic_circle_field(circle);
    CHECK(check_field_axioms(circle, bad).empty());
    const auto loop = find_closed_path(circle, bad);
    REQUIRE(loop);
    CHECK(loop->front() == loop->back());
    CHECK(loop->size() == 2 * circle.count(0) + 1);
    CHECK_FALSE(verify_acyclic(circle, bad));
}

TEST_CASE("vector field bookkeeping")
{
    VectorField f(4);
    f.pair(0, 2);
    CHECK(f.matched_up(0));
    CHECK(f.matched_down(2));
    CHECK(error_kind([&] { f.pair(0, 3); }) == ErrorKind::FieldAxiomViolation);
    CHECK(error_kind([&] { f.pair(1, 2); }) == ErrorKind::FieldAxiomViolation);
    f.unpair(0, 2);
    CHECK(f.is_critical(0));
    CHECK(f.is_critical(2));

    // A pair that is not a facet relation is reported.
    const auto cx = Complex::enumerate(Linkage::parse("1,1,1,3/2"));
    VectorField g(cx.size());
    Complex::CellId edge = cx.begin_of(1);
    Complex::CellId far = cx.begin_of(0);
    while (cx.has_facet(edge, far))
        ++far;
    g.pair(far, edge);
    CHECK_FALSE(check_field_axioms(cx, g).empty());
}
