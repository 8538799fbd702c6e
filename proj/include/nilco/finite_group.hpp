#ifndef NILCO_FINITE_GROUP_HPP
#define NILCO_FINITE_GROUP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "nilco/lattice.hpp"

namespace nilco {

// Hard cap on enumerated group orders unless overridden.
inline constexpr std::uint64_t default_max_order = 1'000'000;

// A finite group whose elements are indexed 0..order-1. Elements are either
// coordinate tuples of a class <= 2 lattice reduced mod m (product computed on
// the fly from the cocycle) or rows of an explicit Cayley table.
class FiniteGroupTable {
public:
    using Index = std::uint32_t;

    static FiniteGroupTable from_cayley_table(std::vector<Index> table, std::size_t order);

    std::size_t order() const { return order_; }
    Index identity() const { return identity_; }
    Index multiply(Index x, Index y) const;
    Index inverse(Index x) const;

    bool has_coordinates() const { return modulus_ != 0; }
    std::int64_t modulus() const { return modulus_; }
    // Residues in [0, m), level 1 followed by level 2.
    std::vector<std::int64_t> coordinates(Index x) const;
    Index index_of(const std::vector<std::int64_t>& coords) const;
    // Projection of a lattice element (coordinates reduced mod m).
    Index project(const LatticeElement& u) const;

    // Exhaustive associativity over all triples.
    bool is_associative_exhaustive() const;
    // Light's test: (x g) y == x (g y) for every x, y and every g in gens.
    // Exact when gens generates the group.
    bool is_associative_on(const std::vector<Index>& gens) const;
    // Elements whose images generate the group (basis vectors for lattice quotients).
    std::vector<Index> generators() const;

private:
    friend FiniteGroupTable reduce_mod(const NilpotentLattice&, std::int64_t, std::uint64_t);

    std::size_t order_ = 0;
    Index identity_ = 0;
    std::vector<Index> table_;

    std::int64_t modulus_ = 0;
    std::size_t r1_ = 0;
    std::size_t r2_ = 0;
    // brackets_[k][i * r1 + j] mod m
    std::vector<std::vector<std::int64_t>> brackets_;
};

// Quotient of a class <= 2 lattice with every coordinate reduced mod m. The
// projection is a homomorphism because the cocycle is bilinear.
// Throws UnsupportedClass for class > 2 and BoundExceeded when m^dim > max_order.
FiniteGroupTable reduce_mod(const NilpotentLattice& g, std::int64_t m,
                            std::uint64_t max_order = default_max_order);

} // namespace nilco

#endif
