#include "nilco/oracle.hpp"

#include <cstdlib>
#include <deque>

#include "nilco/errors.hpp"
#include "nilco/linalg.hpp"
#include "nilco/union_find.hpp"

namespace nilco::oracle {

namespace {

constexpr std::uint32_t unassigned = 0xffffffffu;

std::vector<std::pair<Index, Index>> prepare(const FiniteGroupTable& g,
                                             const std::vector<FiniteMover>& movers)
{
    std::vector<std::pair<Index, Index>> out; // (a^-1, b)
    for (const auto& [a, b] : movers) {
        if (a >= g.order() || b >= g.order())
            throw SchemaError("mover element outside the finite group");
        out.emplace_back(g.inverse(a), b);
    }
    return out;
}

} // namespace

OrbitPartition twisted_orbits_serial(const FiniteGroupTable& g, const std::vector<FiniteMover>& movers)
{
    const auto moves = prepare(g, movers);
    OrbitPartition out;
    out.block.assign(g.order(), unassigned);
    std::deque<Index> queue;
    for (Index start = 0; start < g.order(); ++start) {
        if (out.block[start] != unassigned)
            continue;
        const auto id = static_cast<std::uint32_t>(out.count++);
        out.block[start] = id;
        queue.push_back(start);
        while (!queue.empty()) {
            Index u = queue.front();
            queue.pop_front();
            for (const auto& [a_inv, b] : moves) {
                Index v = g.multiply(g.multiply(b, u), a_inv);
                if (out.block[v] == unassigned) {
                    out.block[v] = id;
                    queue.push_back(v);
                }
            }
        }
    }
    return out;
}

OrbitPartition twisted_orbits_finite(const FiniteGroupTable& g, const std::vector<FiniteMover>& movers)
{
    const auto moves = prepare(g, movers);
    const auto n = static_cast<std::int64_t>(g.order());
    std::vector<std::vector<Index>> image(moves.size(), std::vector<Index>(g.order()));

#pragma omp parallel for schedule(static)
    for (std::int64_t u = 0; u < n; ++u)
        for (std::size_t j = 0; j < moves.size(); ++j)
            image[j][u] = g.multiply(g.multiply(moves[j].second, static_cast<Index>(u)), moves[j].first);

    UnionFind uf(g.order());
    for (std::size_t j = 0; j < moves.size(); ++j)
        for (std::int64_t u = 0; u < n; ++u)
            uf.unite(static_cast<std::uint32_t>(u), image[j][u]);

    // roots are block minima, so ids follow the smallest member
    OrbitPartition out;
    out.block.assign(g.order(), unassigned);
    for (std::int64_t u = 0; u < n; ++u) {
        std::uint32_t r = uf.find(static_cast<std::uint32_t>(u));
        if (out.block[r] == unassigned)
            out.block[r] = static_cast<std::uint32_t>(out.count++);
        out.block[u] = out.block[r];
    }
    return out;
}

Integer cokernel_oracle(const IntMatrix& a, std::int64_t det_bound, std::uint64_t max_order)
{
    if (!a.is_square() || a.rows() == 0 || a.rows() > 4)
        throw DimensionError("cokernel oracle needs a square matrix of size 1..4");
    Integer det = determinant(a);
    if (det == 0)
        throw SchemaError("cokernel oracle needs a nonsingular matrix");
    Integer m = det < 0 ? Integer(-det) : det;
    if (m > det_bound)
        throw BoundExceeded("|det| = " + m.get_str() + " exceeds the oracle bound " +
                            std::to_string(det_bound));
    if (m == 1)
        return Integer{1};

    const std::int64_t mod = to_int64(m);
    FiniteGroupTable group = reduce_mod(NilpotentLattice::torus(a.rows()), mod, max_order);
    std::vector<FiniteMover> movers;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        LatticeElement col{{a.column(j)}};
        movers.emplace_back(group.identity(), group.project(col));
    }
    return Integer{static_cast<unsigned long>(twisted_orbits_finite(group, movers).count)};
}

OrbitPartition quotient_orbits(const TwistedAction& action, std::int64_t m, std::uint64_t max_order)
{
    FiniteGroupTable group = reduce_mod(action.target, m, max_order);
    std::vector<FiniteMover> movers;
    for (const auto& p : action.movers)
        movers.emplace_back(group.project(p.phi), group.project(p.psi));
    return twisted_orbits_finite(group, movers);
}

} // namespace nilco::oracle
