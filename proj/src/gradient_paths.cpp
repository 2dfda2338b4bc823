#include "linkmorse/gradient_paths.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace linkmorse {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b)
{
    return a > kSaturated - b ? kSaturated : a + b;
}

void require_critical(const VectorField& f, Complex::CellId c, const Complex& cx)
{
    if (!f.is_critical(c))
        throw Error(ErrorKind::Unmatched, cx.label(c).to_string() + " is not critical");
}

} // namespace

std::vector<Complex::CellId> successors(const Complex& cx, const VectorField& f, Complex::CellId alpha)
{
    if (!f.matched_up(alpha))
        throw Error(ErrorKind::Unmatched, cx.label(alpha).to_string() + " is not matched with a higher cell");
    std::vector<Complex::CellId> out;
    for (auto g : cx.facets(*f.partner(alpha)))
        if (g != alpha)
            out.push_back(g);
    return out;
}

PathDag::PathDag(const Complex& cx, const VectorField& f, int dim) : cx_(cx), f_(f), dim_(dim)
{
    const auto begin = cx.begin_of(dim);
    const auto end = cx.end_of(dim);
    std::vector<std::size_t> indegree(end - begin, 0);
    for (auto a = begin; a < end; ++a) {
        if (!f.matched_up(a))
            continue;
        for (auto g : cx.facets(*f.partner(a)))
            if (g != a)
                ++indegree[g - begin];
    }
    // Kahn's algorithm; lowest id first among ready nodes.
    std::vector<Complex::CellId> ready;
    for (auto a = begin; a < end; ++a)
        if (indegree[a - begin] == 0)
            ready.push_back(a);
    std::reverse(ready.begin(), ready.end());
    while (!ready.empty()) {
        const auto a = ready.back();
        ready.pop_back();
        order_.push_back(a);
        if (!f.matched_up(a))
            continue;
        for (auto g : cx.facets(*f.partner(a)))
            if (g != a && --indegree[g - begin] == 0)
                ready.push_back(g);
    }
}

std::vector<std::uint64_t> PathDag::counts_to(Complex::CellId target) const
{
    const auto begin = cx_.begin_of(dim_);
    std::vector<std::uint64_t> count(size(), 0);
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
        const auto a = *it;
        if (a == target) {
            count[a - begin] = 1;
            continue;
        }
        if (!f_.matched_up(a))
            continue;
        std::uint64_t total = 0;
        for (auto g : cx_.facets(*f_.partner(a)))
            if (g != a)
                total = saturating_add(total, count[g - begin]);
        count[a - begin] = total;
    }
    return count;
}

std::vector<std::vector<std::uint64_t>> PathDag::parities_to(std::span<const Complex::CellId> targets) const
{
    const auto begin = cx_.begin_of(dim_);
    const std::size_t words = (targets.size() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> bits(size(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t t = 0; t < targets.size(); ++t)
        bits[targets[t] - begin][t / 64] |= std::uint64_t{1} << (t % 64);
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
        const auto a = *it;
        if (!f_.matched_up(a))
            continue;
        auto& row = bits[a - begin];
        for (auto g : cx_.facets(*f_.partner(a))) {
            if (g == a)
                continue;
            const auto& src = bits[g - begin];
            for (std::size_t w = 0; w < words; ++w)
                row[w] ^= src[w];
        }
    }
    return bits;
}

std::uint64_t count_paths(const Complex& cx, const VectorField& f, Complex::CellId beta, Complex::CellId alpha)
{
    require_critical(f, beta, cx);
    require_critical(f, alpha, cx);
    if (cx.dimension(beta) != cx.dimension(alpha) + 1)
        return 0;
    const PathDag dag(cx, f, cx.dimension(alpha));
    const auto counts = dag.counts_to(alpha);
    std::uint64_t total = 0;
    for (auto g : cx.facets(beta))
        total = saturating_add(total, counts[g - cx.begin_of(dag.dimension())]);
    return total;
}

bool count_paths_mod2(const Complex& cx, const VectorField& f, Complex::CellId beta, Complex::CellId alpha)
{
    require_critical(f, beta, cx);
    require_critical(f, alpha, cx);
    if (cx.dimension(beta) != cx.dimension(alpha) + 1)
        return false;
    const PathDag dag(cx, f, cx.dimension(alpha));
    const Complex::CellId target[] = {alpha};
    const auto bits = dag.parities_to(target);
    bool parity = false;
    for (auto g : cx.facets(beta))
        parity ^= (bits[g - cx.begin_of(dag.dimension())][0] & 1u) != 0;
    return parity;
}

std::vector<GradientPath> enumerate_paths(const Complex& cx, const VectorField& f, Complex::CellId beta,
                                          Complex::CellId alpha, std::uint64_t cap)
{
    const std::uint64_t total = count_paths(cx, f, beta, alpha);
    if (total > cap)
        throw Error(ErrorKind::PathCapExceeded, "more than " + std::to_string(cap) + " gradient paths from " +
                                                    cx.label(beta).to_string() + " to " + cx.label(alpha).to_string());
    std::vector<GradientPath> out;
    if (total == 0)
        return out;

    const PathDag dag(cx, f, cx.dimension(alpha));
    const auto counts = dag.counts_to(alpha);
    const auto begin = cx.begin_of(dag.dimension());

    // Depth-first; only step into cells that still reach alpha.
    std::vector<Complex::CellId> trail{beta};
    struct Frame {
        std::vector<Complex::CellId> options;
        std::size_t next = 0;
    };
    auto options_from = [&](Complex::CellId upper, Complex::CellId skip) {
        std::vector<Complex::CellId> opts;
        for (auto g : cx.facets(upper))
            if (g != skip && counts[g - begin] > 0)
                opts.push_back(g);
        return opts;
    };
    std::vector<Frame> stack{{options_from(beta, VectorField::kNone), 0}};
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next == top.options.size()) {
            stack.pop_back();
            // Frames above the root were entered through an (alpha_i, beta_i) pair.
            if (!stack.empty())
                trail.resize(trail.size() - 2);
            continue;
        }
        const auto a = top.options[top.next++];
        if (a == alpha) {
            trail.push_back(a);
            out.push_back({trail});
            trail.pop_back();
            continue;
        }
        const auto b = *f.partner(a);
        trail.push_back(a);
        trail.push_back(b);
        stack.push_back({options_from(b, a), 0});
    }
    return out;
}

bool check_order_invariant(std::span<const CellLabel> cells, OrderScope scope)
{
    if (cells.size() < 2)
        return true;
    const int n = cells.front().n();
    // Checking consecutive cells suffices: the relation then propagates, and an
    // entry outside the n-block never re-enters it (the n-block only shrinks).
    for (std::size_t t = 0; t + 1 < cells.size(); ++t) {
        const int last = static_cast<int>(cells[t].block_count()) - 1;
        for (int k = 2; k <= n; ++k) {
            const int bk = cells[t].block_of(k);
            const int bk_next = cells[t + 1].block_of(k);
            for (int m = 1; m < k; ++m) {
                const int bm = cells[t].block_of(m);
                if (scope == OrderScope::OutsideNBlock && bm == last)
                    continue;
                if (bk < bm && !(bk_next < cells[t + 1].block_of(m)))
                    return false;
            }
        }
    }
    return true;
}

bool check_order_invariant(const Complex& cx, const GradientPath& path, OrderScope scope)
{
    std::vector<CellLabel> labels;
    for (auto c : path.cells)
        labels.push_back(cx.label(c));
    return check_order_invariant(labels, scope);
}

std::string paths_to_dot(const Complex& cx, const VectorField& f, std::span<const GradientPath> paths)
{
    std::set<Complex::CellId> nodes;
    std::set<std::pair<Complex::CellId, Complex::CellId>> matched;
    for (const auto& p : paths) {
        nodes.insert(p.cells.begin(), p.cells.end());
        for (std::size_t i = 1; i + 1 < p.cells.size(); i += 2)
            matched.emplace(p.cells[i], p.cells[i + 1]);
    }

    std::ostringstream os;
    os << "digraph gradient_paths {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n";
    for (auto c : nodes) {
        os << "  c" << c << " [label=\"" << cx.label(c).to_string() << "\"";
        if (f.is_critical(c))
            os << ", peripheries=2";
        os << "];\n";
    }
    for (auto upper : nodes)
        for (auto lower : cx.facets(upper))
            if (nodes.count(lower) && !matched.count({lower, upper}))
                os << "  c" << upper << " -> c" << lower << ";\n";
    for (auto [lower, upper] : matched)
        os << "  c" << lower << " -> c" << upper << " [style=bold, penwidth=2.5];\n";
    os << "}\n";
    return os.str();
}

} // namespace linkmorse
