#pragma once

#include "linkmorse/cell_complex.hpp"
#include "linkmorse/error.hpp"
#include "linkmorse/linkage.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

namespace linkmorse::testing {

inline CellLabel lab(std::string_view text) { return CellLabel::parse(text); }

/// The kind of Error thrown by fn, if any.
template <class Fn>
std::optional<ErrorKind> error_kind(Fn&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

/// Shortness given by a predicate, for checking label patterns that no sorted
/// linkage realizes.
struct PredicateOracle {
    int size;
    std::function<bool(Subset)> pred;

    int n() const { return size; }
    bool is_short(Subset s) const { return pred(s); }
};

static_assert(ShortnessOracle<PredicateOracle>);

/// Only the listed subsets (and their subsets) are short.
inline PredicateOracle short_only(int n, std::vector<Subset> maximal)
{
    return {n, [maximal = std::move(maximal)](Subset s) {
                for (auto m : maximal)
                    if (s.is_subset_of(m))
                        return true;
                return s.size() <= 1;
            }};
}

/// Generic linkage with integer lengths in 1..max_length, n uniform in
/// [lo, hi]; degenerate draws are redrawn with the same n.
inline Linkage random_linkage(std::mt19937_64& rng, int lo, int hi, int max_length = 12)
{
    const int n = lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    for (;;) {
        std::vector<Rational> lengths;
        for (int i = 0; i < n; ++i)
            lengths.emplace_back(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_length)));
        try {
            return Linkage::create(lengths);
        } catch (const Error&) {
        }
    }
}

inline Linkage equilateral(int n)
{
    return Linkage::create(std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)));
}

/// (1, ..., 1, n - 3/2): the (n-3)-sphere.
inline Linkage sphere(int n)
{
    std::vector<Rational> lengths(static_cast<std::size_t>(n - 1), Rational(1));
    lengths.push_back(Rational(2 * n - 3, 2));
    return Linkage::create(lengths);
}

/// (e, ..., e, 1, 1, 1) with e = 1/(10n): two disjoint (n-3)-tori.
inline Linkage two_tori(int n)
{
    std::vector<Rational> lengths(static_cast<std::size_t>(n - 3), Rational(1, 10 * n));
    lengths.insert(lengths.end(), 3, Rational(1));
    return Linkage::create(lengths);
}

/// A handful of generic linkages with n <= max_n used by property tests.
inline std::vector<Linkage> sample_linkages(int max_n, std::size_t random_count, std::uint64_t seed = 7)
{
    std::vector<Linkage> out;
    out.push_back(Linkage::parse("1,1,1"));
    out.push_back(Linkage::parse("1,1,1,3/2"));
    for (int n = 5; n <= max_n; ++n) {
        if (n % 2 == 1)
            out.push_back(equilateral(n));
        out.push_back(sphere(n));
        out.push_back(two_tori(n));
    }
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < random_count; ++i)
        out.push_back(random_linkage(rng, 4, max_n));
    return out;
}

} // namespace linkmorse::testing
