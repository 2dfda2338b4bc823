#include "linkmorse/linkage.hpp"

#include "linkmorse/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace linkmorse {

namespace {

constexpr int kMaxTabulatedEdges = 24;

using Integer = boost::multiprecision::cpp_int;

Integer parse_integer(std::string_view digits, std::string_view token)
{
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw Error(ErrorKind::ParseError, "malformed length '" + std::string(token) + "'");
    return Integer(std::string(digits));
}

Rational parse_token(std::string_view token)
{
    std::string_view body = token;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    Integer num, den = 1;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        num = parse_integer(body.substr(0, slash), token);
        den = parse_integer(body.substr(slash + 1), token);
        if (den == 0)
            throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(token) + "'");
    } else {
        num = parse_integer(body, token);
    }
    Rational r(num, den);
    return negative ? Rational(-r) : r;
}

} // namespace

std::vector<Rational> parse_lengths(std::string_view text)
{
    std::string compact;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            compact += c;
    if (compact.empty())
        throw Error(ErrorKind::ParseError, "empty length list");

    std::vector<Rational> out;
    std::string_view rest = compact;
    while (true) {
        auto comma = rest.find(',');
        out.push_back(parse_token(rest.substr(0, comma)));
        if (comma == std::string_view::npos)
            break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

std::string format_rational(const Rational& value)
{
    const auto num = boost::multiprecision::numerator(value);
    const auto den = boost::multiprecision::denominator(value);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

Linkage Linkage::create(std::vector<Rational> lengths)
{
    const int n = static_cast<int>(lengths.size());
    if (n < 3)
        throw Error(ErrorKind::TooFewEdges, "a linkage needs at least 3 edges, got " + std::to_string(n));
    if (n > kMaxTabulatedEdges)
        throw Error(ErrorKind::SizeGuard, "at most " + std::to_string(kMaxTabulatedEdges) + " edges are supported, got " + std::to_string(n));
    for (int i = 0; i < n; ++i)
        if (lengths[i] <= 0)
            throw Error(ErrorKind::NonPositiveLength,
                        "edge " + std::to_string(i + 1) + " has non-positive length " + format_rational(lengths[i]));

    Linkage L;
    L.n_ = n;
    L.input_lengths_ = lengths;
    L.perimeter_ = std::accumulate(lengths.begin(), lengths.end(), Rational(0));

    for (int i = 0; i < n; ++i)
        if (2 * lengths[i] >= L.perimeter_)
            throw Error(ErrorKind::EmptyModuliSpace,
                        "empty moduli space: edge " + std::to_string(i + 1) + " (length " + format_rational(lengths[i]) +
                            ") is at least half the perimeter " + format_rational(L.perimeter_));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return lengths[a] < lengths[b]; });
    L.permutation_.assign(n, 0);
    for (int internal = 0; internal < n; ++internal) {
        L.permutation_[order[internal]] = internal + 1;
        L.lengths_.push_back(lengths[order[internal]]);
    }

    // Work with integers: scale by the lcm of the denominators.
    Integer scale = 1;
    for (const auto& l : L.lengths_)
        scale = boost::multiprecision::lcm(scale, Integer(boost::multiprecision::denominator(l)));
    std::vector<Integer> weight;
    for (const auto& l : L.lengths_)
        weight.push_back(Integer(boost::multiprecision::numerator(l)) * (scale / Integer(boost::multiprecision::denominator(l))));
    const Integer total = std::accumulate(weight.begin(), weight.end(), Integer(0));

    // Gray-code walk over all subsets.
    const std::uint32_t count = std::uint32_t{1} << n;
    L.short_.assign(count, false);
    Integer sum = 0;
    std::uint32_t mask = 0;
    bool degenerate = false;
    for (std::uint32_t step = 0; step < count; ++step) {
        if (step > 0) {
            const int bit = std::countr_zero(step);
            mask ^= std::uint32_t{1} << bit;
            if ((mask >> bit) & 1u)
                sum += weight[bit];
            else
                sum -= weight[bit];
        }
        const Integer twice = 2 * sum;
        if (twice == total)
            degenerate = true;
        L.short_[mask] = twice < total;
    }

    if (degenerate) {
        // Report the first offending subset in the user's own numbering.
        std::vector<Integer> user_weight(n);
        for (int u = 0; u < n; ++u)
            user_weight[u] = weight[L.permutation_[u] - 1];
        for (std::uint32_t m = 1; m < count; ++m) {
            Integer s = 0;
            for (int u = 0; u < n; ++u)
                if ((m >> u) & 1u)
                    s += user_weight[u];
            if (2 * s == total)
                throw Error(ErrorKind::DegenerateLinkage,
                            "degenerate: subset " + Subset(m).to_string() + " sums to half-perimeter");
        }
    }
    return L;
}

bool Linkage::is_prelong(Subset s, int k) const
{
    if (s.contains(k))
        throw Error(ErrorKind::MemberOverlap, "entry " + std::to_string(k) + " already belongs to " + s.to_string());
    return is_short(s) && !is_short(s.with(k));
}

std::vector<std::size_t> Linkage::short_set_profile() const
{
    std::vector<std::size_t> a(static_cast<std::size_t>(n_ - 2), 0);
    const Subset::Bits nbit = Subset::single(n_).bits();
    for (std::uint32_t m = 0; m < short_.size(); ++m)
        if ((m & nbit) && short_[m])
            ++a[static_cast<std::size_t>(std::popcount(m) - 1)];
    return a;
}

std::vector<Subset> Linkage::short_sets_containing_n() const
{
    std::vector<Subset> out;
    const Subset::Bits nbit = Subset::single(n_).bits();
    for (std::uint32_t m = 0; m < short_.size(); ++m)
        if ((m & nbit) && short_[m])
            out.emplace_back(m);
    std::sort(out.begin(), out.end(), [](Subset a, Subset b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return compare_members(a, b) < 0;
    });
    return out;
}

std::string Linkage::to_string() const
{
    std::string s;
    for (std::size_t i = 0; i < input_lengths_.size(); ++i) {
        if (i)
            s += ',';
        s += format_rational(input_lengths_[i]);
    }
    return s;
}

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NonPositiveLength: return "NonPositiveLength";
    case ErrorKind::TooFewEdges: return "TooFewEdges";
    case ErrorKind::DegenerateLinkage: return "DegenerateLinkage";
    case ErrorKind::EmptyModuliSpace: return "EmptyModuliSpace";
    case ErrorKind::SizeGuard: return "SizeGuard";
    case ErrorKind::InvalidLabel: return "InvalidLabel";
    case ErrorKind::MemberOverlap: return "MemberOverlap";
    case ErrorKind::NotShort: return "NotShort";
    case ErrorKind::MissingN: return "MissingN";
    case ErrorKind::NotCritical: return "NotCritical";
    case ErrorKind::Unmatched: return "Unmatched";
    case ErrorKind::PathCapExceeded: return "PathCapExceeded";
    case ErrorKind::InconsistentMatch: return "InconsistentMatch";
    case ErrorKind::AmbiguousStep: return "AmbiguousStep";
    case ErrorKind::FieldAxiomViolation: return "FieldAxiomViolation";
    case ErrorKind::ClassificationGap: return "ClassificationGap";
    case ErrorKind::NonUniquePath: return "NonUniquePath";
    case ErrorKind::DuplicateEndpoint: return "DuplicateEndpoint";
    case ErrorKind::PredictionMismatch: return "PredictionMismatch";
    case ErrorKind::NonzeroDifferential: return "NonzeroDifferential";
    }
    return "Unknown";
}

} // namespace linkmorse
