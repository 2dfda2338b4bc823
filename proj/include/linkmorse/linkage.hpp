#pragma once

#include "linkmorse/subset.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace linkmorse {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "1,1,1,3/2": comma-separated "p" or "p/q" tokens, whitespace ignored.
/// A leading sign is accepted so that non-positive values reach validation.
std::vector<Rational> parse_lengths(std::string_view text);

std::string format_rational(const Rational& value);

/// Anything that can answer "is this subset short?" for a fixed n.
/// The matching rules only ever consult shortness, so hand-written oracles can
/// stand in for a linkage when checking label patterns.
template <class T>
concept ShortnessOracle = requires(const T& oracle, Subset s) {
    { oracle.n() } -> std::convertible_to<int>;
    { oracle.is_short(s) } -> std::convertible_to<bool>;
};

/// A generic planar polygonal linkage with edges re-indexed so that lengths are
/// non-decreasing (edge n is a longest edge).
///
/// Immutable after construction. Shortness of every subset is tabulated up front,
/// which is also how genericity is certified.
class Linkage {
public:
    /// Validates and sorts. Throws Error with kind TooFewEdges, NonPositiveLength,
    /// EmptyModuliSpace or DegenerateLinkage.
    static Linkage create(std::vector<Rational> lengths);
    static Linkage parse(std::string_view text) { return create(parse_lengths(text)); }

    int n() const { return n_; }
    /// Sorted lengths; lengths()[i-1] is the length of internal edge i.
    const std::vector<Rational>& lengths() const { return lengths_; }
    const Rational& length(int i) const { return lengths_[i - 1]; }
    const Rational& perimeter() const { return perimeter_; }
    /// Lengths in the order they were supplied.
    const std::vector<Rational>& input_lengths() const { return input_lengths_; }
    /// input_permutation()[u] is the internal (1-based) index of user edge u+1.
    std::span<const int> input_permutation() const { return permutation_; }

    Subset all() const { return Subset::range(n_); }

    /// Sum of member lengths below half the perimeter. The empty set is short.
    bool is_short(Subset s) const { return short_[s.bits()]; }
    bool is_long(Subset s) const { return !is_short(s); }

    /// I short and I + {k} long. Throws MemberOverlap if k is in I.
    bool is_prelong(Subset s, int k) const;

    /// a[k] = number of short subsets of cardinality k+1 containing n, k = 0..n-3.
    std::vector<std::size_t> short_set_profile() const;

    /// All short subsets containing n, ordered by (size, members).
    std::vector<Subset> short_sets_containing_n() const;

    std::string to_string() const;

private:
    Linkage() = default;

    int n_ = 0;
    std::vector<Rational> lengths_;
    std::vector<Rational> input_lengths_;
    std::vector<int> permutation_;
    Rational perimeter_;
    std::vector<bool> short_;
};

static_assert(ShortnessOracle<Linkage>);

} // namespace linkmorse
