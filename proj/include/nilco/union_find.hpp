#ifndef NILCO_UNION_FIND_HPP
#define NILCO_UNION_FIND_HPP

#include <cstdint>
#include <numeric>
#include <vector>

namespace nilco {

// Disjoint sets whose roots are always the smallest member, so block ids
// assigned in index order are independent of the union order.
struct UnionFind {
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }

    std::uint32_t find(std::uint32_t x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(std::uint32_t a, std::uint32_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (a < b)
            parent[b] = a;
        else
            parent[a] = b;
    }

    std::vector<std::uint32_t> parent;
};

} // namespace nilco

#endif
