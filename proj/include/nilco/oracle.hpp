#ifndef NILCO_ORACLE_HPP
#define NILCO_ORACLE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "nilco/finite_group.hpp"
#include "nilco/int_matrix.hpp"
#include "nilco/twisted.hpp"

namespace nilco::oracle {

using Index = FiniteGroupTable::Index;

struct OrbitPartition {
    std::size_t count = 0;
    // Block id per element; ids are numbered by smallest member.
    std::vector<std::uint32_t> block;
};

// Movers are (a_j, b_j) with move u -> b_j * u * a_j^-1.
using FiniteMover = std::pair<Index, Index>;

// Orbits of the group generated by the moves. Breadth-first closure, one
// thread; this is the reference the parallel kernel is tested against.
OrbitPartition twisted_orbits_serial(const FiniteGroupTable& g, const std::vector<FiniteMover>& movers);

// Same partition, with move images computed by an OpenMP parallel loop and
// merged with a sequential union-find.
OrbitPartition twisted_orbits_finite(const FiniteGroupTable& g, const std::vector<FiniteMover>& movers);

inline constexpr std::int64_t default_det_bound = 10'000;

// Order of coker(A) for square nonsingular A (n <= 4), counted as the number
// of orbits of translations by the columns of A on (Z/m)^n, m = |det A|.
// Sound because |det A| Z^n lies in im(A).
Integer cokernel_oracle(const IntMatrix& a, std::int64_t det_bound = default_det_bound,
                        std::uint64_t max_order = default_max_order);

// Twisted orbit count of the action projected to the target mod m.
OrbitPartition quotient_orbits(const TwistedAction& action, std::int64_t m,
                               std::uint64_t max_order = default_max_order);

} // namespace nilco::oracle

#endif
