#include <doctest.h>

#include "generators.hpp"
#include "nilco/errors.hpp"
#include "nilco/finite_group.hpp"
#include "nilco/oracle.hpp"

using namespace nilco;
using namespace nilco::testing;
using oracle::FiniteMover;

namespace {

// Ordinary conjugacy classes by brute force over all pairs.
std::size_t conjugacy_class_count(const FiniteGroupTable& g)
{
    std::vector<int> seen(g.order(), -1);
    std::size_t classes = 0;
    for (FiniteGroupTable::Index u = 0; u < g.order(); ++u) {
        if (seen[u] >= 0)
            continue;
        for (FiniteGroupTable::Index x = 0; x < g.order(); ++x)
            seen[g.multiply(g.multiply(x, u), g.inverse(x))] = static_cast<int>(classes);
        ++classes;
    }
    return classes;
}

void check_move_closed(const FiniteGroupTable& g, const std::vector<FiniteMover>& movers,
                       const oracle::OrbitPartition& p)
{
    for (FiniteGroupTable::Index u = 0; u < g.order(); ++u)
        for (const auto& [a, b] : movers)
            CHECK(p.block[g.multiply(g.multiply(b, u), g.inverse(a))] == p.block[u]);
}

} // namespace

TEST_CASE("quotient groups are groups")
{
    for (const auto& [lat, m] : std::vector<std::pair<NilpotentLattice, std::int64_t>>{
             {NilpotentLattice::heisenberg(), 2},
             {NilpotentLattice::heisenberg(), 4},
             {NilpotentLattice::torus(2), 6},
             {NilpotentLattice({2, 1}, {IntMatrix{{1, 2}, {-1, 3}}}), 3}}) {
        auto g = reduce_mod(lat, m);
        CHECK(g.is_associative_exhaustive());
        CHECK(g.is_associative_on(g.generators()));
        for (FiniteGroupTable::Index x = 0; x < g.order(); ++x) {
            CHECK(g.multiply(x, g.inverse(x)) == g.identity());
            CHECK(g.multiply(g.identity(), x) == x);
            CHECK(g.index_of(g.coordinates(x)) == x);
        }
    }
    auto big = reduce_mod(NilpotentLattice::free_two_step(3), 3);
    CHECK(big.order() == 729);
    CHECK(big.is_associative_on(big.generators()));
}

TEST_CASE("projection is a homomorphism")
{
    Rng rng(31);
    auto h = NilpotentLattice::free_two_step(3);
    auto g = reduce_mod(h, 3);
    for (int i = 0; i < 200; ++i) {
        auto u = random_element(rng, h, -30, 30);
        auto v = random_element(rng, h, -30, 30);
        CHECK(g.project(multiply(u, v, h)) == g.multiply(g.project(u), g.project(v)));
    }
}

TEST_CASE("Cayley table input")
{
    // Z/3 with identity at index 1
    std::vector<FiniteGroupTable::Index> t{2, 0, 1, 0, 1, 2, 1, 2, 0};
    auto g = FiniteGroupTable::from_cayley_table(t, 3);
    CHECK(g.identity() == 1);
    CHECK(g.is_associative_exhaustive());
    CHECK(g.multiply(0, g.inverse(0)) == 1);
    CHECK_THROWS(FiniteGroupTable::from_cayley_table({0, 0, 0}, 3));
}

TEST_CASE("reduce_mod errors")
{
    CHECK_THROWS_AS(reduce_mod(NilpotentLattice({2, 1, 1}), 2), UnsupportedClass);
    CHECK_THROWS_AS(reduce_mod(NilpotentLattice::heisenberg(), 1), SchemaError);
    CHECK_THROWS_AS(reduce_mod(NilpotentLattice::heisenberg(), 1000), BoundExceeded);
    CHECK_NOTHROW(reduce_mod(NilpotentLattice::heisenberg(), 1000, 1'000'000'000));
}

TEST_CASE("orbit examples")
{
    auto z2 = reduce_mod(NilpotentLattice::torus(1), 2);
    CHECK(oracle::twisted_orbits_finite(z2, {{0, 0}}).count == 2);

    auto z6 = reduce_mod(NilpotentLattice::torus(2), 6);
    auto t20 = z6.index_of({2, 0});
    auto t03 = z6.index_of({0, 3});
    CHECK(oracle::twisted_orbits_finite(z6, {{z6.identity(), t20}, {z6.identity(), t03}}).count == 6);

    // ordinary conjugacy in the Heisenberg group mod 2 (order 8)
    auto h2 = reduce_mod(NilpotentLattice::heisenberg(), 2);
    auto x = h2.index_of({1, 0, 0});
    auto y = h2.index_of({0, 1, 0});
    auto p = oracle::twisted_orbits_finite(h2, {{x, x}, {y, y}});
    CHECK(p.count == 5);
    CHECK(conjugacy_class_count(h2) == 5);
}

TEST_CASE("parallel orbits equal the serial reference")
{
    Rng rng(32);
    for (int trial = 0; trial < 40; ++trial) {
        const auto m = uniform(rng, 2, 6);
        auto lat = trial % 2 ? NilpotentLattice::heisenberg() : NilpotentLattice::free_two_step(3);
        if (lat.dimension() == 6 && m > 4)
            continue;
        auto g = reduce_mod(lat, m);
        std::vector<FiniteMover> movers;
        const auto k = uniform(rng, 1, 3);
        for (long j = 0; j < k; ++j)
            movers.emplace_back(static_cast<FiniteGroupTable::Index>(uniform(rng, 0, static_cast<long>(g.order()) - 1)),
                                static_cast<FiniteGroupTable::Index>(uniform(rng, 0, static_cast<long>(g.order()) - 1)));
        auto serial = oracle::twisted_orbits_serial(g, movers);
        auto parallel = oracle::twisted_orbits_finite(g, movers);
        CHECK(serial.count == parallel.count);
        CHECK(serial.block == parallel.block);
        check_move_closed(g, movers, parallel);
    }
}

TEST_CASE("foreign mover elements are rejected")
{
    auto g = reduce_mod(NilpotentLattice::torus(1), 3);
    CHECK_THROWS_AS(oracle::twisted_orbits_finite(g, {{0, 7}}), SchemaError);
}

TEST_CASE("cokernel oracle agrees with |det| on random matrices")
{
    Rng rng(33);
    int checked = 0;
    while (checked < 100) {
        const auto n = static_cast<std::size_t>(uniform(rng, 1, 3));
        IntMatrix a = random_matrix(rng, n, n, -6, 6);
        Integer d = abs(determinant(a));
        const long cap = n == 1 ? 10000 : (n == 2 ? 1000 : 100);
        if (d == 0 || d > cap)
            continue;
        CHECK(oracle::cokernel_oracle(a) == d);
        ++checked;
    }
}
