#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace linkmorse {

/// A subset of the edge set [n] = {1..n}. Bit (i-1) set means edge i is a member.
class Subset {
public:
    using Bits = std::uint32_t;
    static constexpr int kMaxEdges = 31;

    constexpr Subset() = default;
    constexpr explicit Subset(Bits bits) : bits_(bits) {}

    static constexpr Subset single(int i) { return Subset(Bits{1} << (i - 1)); }
    static constexpr Subset range(int n) { return Subset(n >= 32 ? ~Bits{0} : (Bits{1} << n) - 1); }
    static Subset of(std::initializer_list<int> members)
    {
        Subset s;
        for (int m : members)
            s = s.with(m);
        return s;
    }

    constexpr Bits bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(int i) const { return (bits_ >> (i - 1)) & 1u; }
    constexpr bool is_singleton() const { return std::has_single_bit(bits_); }

    /// Smallest member; 0 for the empty set.
    constexpr int min() const { return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1; }
    /// Largest member; 0 for the empty set.
    constexpr int max() const { return std::bit_width(bits_); }

    constexpr Subset with(int i) const { return Subset(bits_ | (Bits{1} << (i - 1))); }
    constexpr Subset without(int i) const { return Subset(bits_ & ~(Bits{1} << (i - 1))); }

    constexpr bool is_subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool intersects(Subset other) const { return (bits_ & other.bits_) != 0; }

    /// True iff every member is strictly greater than k (vacuous for the empty set).
    constexpr bool all_greater_than(int k) const { return min() == 0 || min() > k; }
    /// True iff every member is strictly less than k (vacuous for the empty set).
    constexpr bool all_less_than(int k) const { return max() < k; }

    friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
    friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
    friend constexpr Subset operator-(Subset a, Subset b) { return Subset(a.bits_ & ~b.bits_); }
    friend constexpr bool operator==(Subset a, Subset b) = default;

    std::vector<int> members() const
    {
        std::vector<int> out;
        for (Bits b = bits_; b != 0; b &= b - 1)
            out.push_back(std::countr_zero(b) + 1);
        return out;
    }

    /// "{1,2,7}" with members ascending.
    std::string to_string() const
    {
        std::string s = "{";
        bool first = true;
        for (int m : members()) {
            if (!first)
                s += ',';
            s += std::to_string(m);
            first = false;
        }
        return s + "}";
    }

private:
    Bits bits_ = 0;
};

/// Lexicographic order of the ascending member lists ({1} < {1,2} < {1,3} < {2}).
constexpr std::strong_ordering compare_members(Subset a, Subset b)
{
    const Subset::Bits diff = a.bits() ^ b.bits();
    if (diff == 0)
        return std::strong_ordering::equal;
    const int d = std::countr_zero(diff);
    const Subset::Bits above = d >= 31 ? 0 : ~((Subset::Bits{2} << d) - 1);
    // Both agree below d. The set holding d continues with d; the other continues
    // with something larger, or ends (and is then a prefix, hence smaller).
    if ((a.bits() >> d) & 1u)
        return (b.bits() & above) != 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return (a.bits() & above) != 0 ? std::strong_ordering::greater : std::strong_ordering::less;
}

} // namespace linkmorse
