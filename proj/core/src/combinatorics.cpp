#include "hyperdesign/combinatorics.hpp"

#include <algorithm>
#include <sstream>

namespace hd {

std::string to_string(const VertexSet& s)
{
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out << ',';
        out << s[i];
    }
    out << '}';
    return out.str();
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > UINT64_MAX) throw Error("binomial overflow");
    }
    return static_cast<std::uint64_t>(acc);
}

std::optional<std::uint64_t> colex_rank(std::span<const Vertex> sorted)
{
    unsigned __int128 rank = 0;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        // C(v, j+1) via a short product; bail out on overflow.
        const std::uint64_t v = sorted[j];
        const std::uint64_t k = j + 1;
        if (k > v) continue;
        unsigned __int128 c = 1;
        for (std::uint64_t i = 1; i <= k; ++i) {
            c = c * (v - k + i) / i;
            if (c > UINT64_MAX) return std::nullopt;
        }
        rank += c;
        if (rank > UINT64_MAX) return std::nullopt;
    }
    return static_cast<std::uint64_t>(rank);
}

void for_each_subset(std::span<const Vertex> items, std::size_t k,
                     const std::function<bool(const VertexSet&)>& visit)
{
    const std::size_t n = items.size();
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    VertexSet cur(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i) cur[i] = items[idx[i]];
        if (!visit(cur)) return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::vector<VertexSet> subsets(std::span<const Vertex> items, std::size_t k)
{
    std::vector<VertexSet> out;
    for_each_subset(items, k, [&](const VertexSet& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

std::vector<VertexSet> subsets_of_range(std::size_t n, std::size_t k)
{
    const VertexSet all = range_set(n);
    return subsets(all, k);
}

VertexSet range_set(std::size_t n)
{
    return range_set(0, static_cast<Vertex>(n));
}

VertexSet range_set(Vertex begin, Vertex end)
{
    VertexSet out;
    out.reserve(end > begin ? end - begin : 0);
    for (Vertex v = begin; v < end; ++v) out.push_back(v);
    return out;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b)
{
    VertexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b)
{
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b)
{
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_subset(const VertexSet& small, const VertexSet& big)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool contains(const VertexSet& s, Vertex v)
{
    return std::binary_search(s.begin(), s.end(), v);
}

VertexSet normalized(VertexSet s)
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

}  // namespace hd
