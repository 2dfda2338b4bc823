#include "linkmorse/cell_complex.hpp"

#include "linkmorse/error.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

namespace linkmorse {

// ---------------------------------------------------------------------------
// CellLabel

CellLabel CellLabel::parse(std::string_view text)
{
    auto fail = [&](const std::string& why) {
        throw Error(ErrorKind::InvalidLabel, "invalid label '" + std::string(text) + "': " + why);
    };

    std::vector<Subset> blocks;
    std::size_t i = 0;
    auto skip_space = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '(' || text[i] == ')'))
            ++i;
    };
    skip_space();
    while (i < text.size()) {
        if (text[i] != '{')
            fail("expected '{'");
        ++i;
        Subset block;
        while (true) {
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
                ++i;
            int value = 0;
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                value = value * 10 + (text[i++] - '0');
            if (i == start || value < 1 || value > Subset::kMaxEdges)
                fail("bad entry");
            if (block.contains(value))
                fail("repeated entry " + std::to_string(value));
            block = block.with(value);
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
                ++i;
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == '}') {
                ++i;
                break;
            }
            fail("unterminated block");
        }
        blocks.push_back(block);
        skip_space();
    }
    if (blocks.empty())
        fail("no blocks");

    Subset seen;
    for (Subset b : blocks) {
        if (b.intersects(seen))
            fail("blocks overlap");
        seen = seen | b;
    }
    const int n = seen.max();
    if (seen != Subset::range(n))
        fail("blocks do not cover 1.." + std::to_string(n));
    if (!blocks.back().contains(n))
        fail("the block containing " + std::to_string(n) + " must come last");
    return CellLabel(std::move(blocks));
}

int CellLabel::block_of(int e) const
{
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        if (blocks_[i].contains(e))
            return static_cast<int>(i);
    return -1;
}

std::string CellLabel::to_string() const
{
    std::string s;
    for (Subset b : blocks_)
        s += b.to_string();
    return s;
}

std::strong_ordering operator<=>(const CellLabel& a, const CellLabel& b)
{
    const std::size_t common = std::min(a.blocks_.size(), b.blocks_.size());
    for (std::size_t i = 0; i < common; ++i)
        if (auto c = compare_members(a.blocks_[i], b.blocks_[i]); c != 0)
            return c;
    return a.blocks_.size() <=> b.blocks_.size();
}

bool is_admissible(const Linkage& L, const CellLabel& c)
{
    if (c.block_count() < 3)
        return false;
    Subset seen;
    for (Subset b : c.blocks()) {
        if (b.empty() || b.intersects(seen) || !L.is_short(b))
            return false;
        seen = seen | b;
    }
    return seen == L.all() && c.n_block().contains(L.n());
}

std::vector<CellLabel> facets(const CellLabel& c)
{
    std::vector<CellLabel> out;
    const auto blocks = c.blocks();
    const std::size_t last = blocks.size() - 1;
    const int n = c.n();

    for (std::size_t i = 0; i < last; ++i) {
        const Subset::Bits b = blocks[i].bits();
        for (Subset::Bits s = (b - 1) & b; s != 0; s = (s - 1) & b) {
            std::vector<Subset> split(blocks.begin(), blocks.end());
            split[i] = Subset(s);
            split.insert(split.begin() + static_cast<std::ptrdiff_t>(i) + 1, Subset(b & ~s));
            out.emplace_back(std::move(split));
        }
    }

    const Subset nblock = blocks[last];
    const Subset::Bits rest = nblock.without(n).bits();
    for (Subset::Bits s = rest; s != 0; s = (s - 1) & rest) {
        const Subset J(s);
        const Subset K = nblock - J;

        std::vector<Subset> before(blocks.begin(), blocks.end());
        before.back() = J;
        before.push_back(K);
        out.emplace_back(std::move(before));

        std::vector<Subset> front;
        front.reserve(blocks.size() + 1);
        front.push_back(J);
        front.insert(front.end(), blocks.begin(), blocks.end());
        front.back() = K;
        out.emplace_back(std::move(front));
    }
    return out;
}

bool is_face(const CellLabel& fine, const CellLabel& coarse)
{
    const std::size_t r = fine.block_count();
    const std::size_t r2 = coarse.block_count();
    if (r < r2 || r2 == 0)
        return false;

    std::vector<std::size_t> owner(r);
    for (std::size_t i = 0; i < r; ++i) {
        const Subset b = fine.block(i);
        bool found = false;
        for (std::size_t j = 0; j < r2; ++j) {
            if (b.is_subset_of(coarse.block(j))) {
                owner[i] = j;
                found = true;
                break;
            }
        }
        if (!found)
            return false;
    }
    if (r2 == 1)
        return true;

    // Walking `fine` cyclically must visit each coarse block as one run, with
    // the runs in the coarse cyclic order.
    std::size_t changes = 0;
    for (std::size_t i = 0; i < r; ++i) {
        const std::size_t a = owner[i];
        const std::size_t b = owner[(i + 1) % r];
        if (a != b) {
            if (b != (a + 1) % r2)
                return false;
            ++changes;
        }
    }
    return changes == r2;
}

// ---------------------------------------------------------------------------
// Complex

namespace {

// Appends every ordered sequence of short blocks partitioning `remaining`.
void extend_blocks(const Linkage& L, Subset::Bits remaining, std::vector<Subset>& prefix, Subset nblock,
                   std::vector<CellLabel>& out)
{
    if (remaining == 0) {
        std::vector<Subset> blocks = prefix;
        blocks.push_back(nblock);
        out.emplace_back(std::move(blocks));
        return;
    }
    for (Subset::Bits s = remaining; s != 0; s = (s - 1) & remaining) {
        if (!L.is_short(Subset(s)))
            continue;
        prefix.push_back(Subset(s));
        extend_blocks(L, remaining & ~s, prefix, nblock, out);
        prefix.pop_back();
    }
}

} // namespace

Complex Complex::enumerate(const Linkage& L, const ComplexOptions& options)
{
    if (L.n() > options.max_n && !options.force)
        throw Error(ErrorKind::SizeGuard, "refusing to enumerate a complex with n = " + std::to_string(L.n()) +
                                              " > " + std::to_string(options.max_n) + " (use --force or raise --max-n)");

    Complex cx(L);
    const int n = L.n();
    const Subset::Bits all = L.all().bits();
    const Subset::Bits nbit = Subset::single(n).bits();

    std::vector<CellLabel> labels;
    std::vector<Subset> prefix;
    const Subset::Bits others = all & ~nbit;
    // n-block = {n} + t for every t, including the empty one.
    for (Subset::Bits t = others;; t = (t - 1) & others) {
        const Subset nblock(t | nbit);
        if (L.is_short(nblock))
            extend_blocks(L, others & ~t, prefix, nblock, labels);
        if (t == 0)
            break;
    }

    std::sort(labels.begin(), labels.end(), [](const CellLabel& a, const CellLabel& b) {
        if (a.block_count() != b.block_count())
            return a.block_count() > b.block_count();
        return a < b;
    });

    const int top = n - 3;
    cx.labels_ = std::move(labels);
    cx.dims_.reserve(cx.labels_.size());
    cx.dim_begin_.assign(static_cast<std::size_t>(top) + 2, 0);
    for (const auto& c : cx.labels_) {
        const int d = c.dimension();
        cx.dims_.push_back(d);
        ++cx.dim_begin_[static_cast<std::size_t>(d) + 1];
    }
    for (std::size_t d = 1; d < cx.dim_begin_.size(); ++d)
        cx.dim_begin_[d] += cx.dim_begin_[d - 1];

    const std::size_t total = cx.labels_.size();
    cx.facet_offsets_.assign(total + 1, 0);
    std::vector<std::size_t> cofacet_count(total, 0);
    for (CellId id = 0; id < total; ++id) {
        std::vector<CellId> ids;
        for (const auto& f : linkmorse::facets(cx.labels_[id]))
            ids.push_back(cx.id_of(f));
        std::sort(ids.begin(), ids.end());
        for (CellId f : ids)
            ++cofacet_count[f];
        cx.facet_ids_.insert(cx.facet_ids_.end(), ids.begin(), ids.end());
        cx.facet_offsets_[id + 1] = cx.facet_ids_.size();
    }

    cx.cofacet_offsets_.assign(total + 1, 0);
    for (std::size_t id = 0; id < total; ++id)
        cx.cofacet_offsets_[id + 1] = cx.cofacet_offsets_[id] + cofacet_count[id];
    cx.cofacet_ids_.assign(cx.cofacet_offsets_.back(), 0);
    std::vector<std::size_t> cursor(cx.cofacet_offsets_.begin(), cx.cofacet_offsets_.end() - 1);
    for (CellId id = 0; id < total; ++id)
        for (CellId f : cx.facets(id))
            cx.cofacet_ids_[cursor[f]++] = id;
    return cx;
}

std::vector<std::size_t> Complex::counts_per_dim() const
{
    std::vector<std::size_t> out;
    for (int d = 0; d <= top_dimension(); ++d)
        out.push_back(count(d));
    return out;
}

std::optional<Complex::CellId> Complex::find(const CellLabel& c) const
{
    if (c.n() != n())
        return std::nullopt;
    const int d = c.dimension();
    if (d < 0 || d > top_dimension())
        return std::nullopt;
    auto first = labels_.begin() + dim_begin_[d];
    auto last = labels_.begin() + dim_begin_[d + 1];
    auto it = std::lower_bound(first, last, c);
    if (it == last || *it != c)
        return std::nullopt;
    return static_cast<CellId>(it - labels_.begin());
}

Complex::CellId Complex::id_of(const CellLabel& c) const
{
    if (auto id = find(c))
        return *id;
    throw Error(ErrorKind::InvalidLabel, c.to_string() + " is not a cell of the complex");
}

bool Complex::has_facet(CellId upper, CellId lower) const
{
    auto f = facets(upper);
    return std::binary_search(f.begin(), f.end(), lower);
}

long long euler_characteristic(const Complex& cx)
{
    long long chi = 0;
    for (int d = 0; d <= cx.top_dimension(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(cx.count(d));
    return chi;
}

bool is_face_by_reachability(const Complex& cx, Complex::CellId fine, Complex::CellId coarse)
{
    if (fine == coarse)
        return true;
    const int target_dim = cx.dimension(fine);
    std::vector<bool> seen(cx.size(), false);
    std::deque<Complex::CellId> queue{coarse};
    seen[coarse] = true;
    while (!queue.empty()) {
        const auto c = queue.front();
        queue.pop_front();
        if (cx.dimension(c) <= target_dim)
            continue;
        for (auto f : cx.facets(c)) {
            if (f == fine)
                return true;
            if (!seen[f]) {
                seen[f] = true;
                queue.push_back(f);
            }
        }
    }
    return false;
}

RegularityReport validate_regular(const Complex& cx)
{
    RegularityReport report;
    std::vector<Complex::CellId> below;
    for (Complex::CellId c = 0; c < cx.size(); ++c) {
        const auto f = cx.facets(c);
        if (std::adjacent_find(f.begin(), f.end()) != f.end())
            report.violations.push_back("duplicate facet in " + cx.label(c).to_string());
        for (auto g : f)
            if (cx.dimension(g) + 1 != cx.dimension(c))
                report.violations.push_back("facet " + cx.label(g).to_string() + " of " + cx.label(c).to_string() +
                                            " is not one dimension lower");
        if (cx.dimension(c) < 2)
            continue;

        below.clear();
        for (auto g : f)
            for (auto h : cx.facets(g))
                below.push_back(h);
        std::sort(below.begin(), below.end());
        for (std::size_t i = 0; i < below.size();) {
            std::size_t j = i;
            while (j < below.size() && below[j] == below[i])
                ++j;
            ++report.intervals_checked;
            if (j - i != 2)
                report.violations.push_back("interval [" + cx.label(below[i]).to_string() + ", " +
                                            cx.label(c).to_string() + "] has " + std::to_string(j - i) +
                                            " intermediate cells");
            i = j;
        }
    }
    return report;
}

} // namespace linkmorse
