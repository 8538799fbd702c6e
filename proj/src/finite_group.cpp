#include "nilco/finite_group.hpp"

#include <array>

#include "nilco/errors.hpp"

namespace nilco {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t m)
{
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

} // namespace

FiniteGroupTable FiniteGroupTable::from_cayley_table(std::vector<Index> table, std::size_t order)
{
    if (table.size() != order * order)
        throw DimensionError("Cayley table must have order^2 entries");
    FiniteGroupTable g;
    g.order_ = order;
    g.table_ = std::move(table);
    for (auto x : g.table_)
        if (x >= order)
            throw SchemaError("Cayley table entry out of range");
    bool found = false;
    for (Index e = 0; e < order && !found; ++e) {
        bool ok = true;
        for (Index x = 0; x < order && ok; ++x)
            ok = g.table_[e * order + x] == x && g.table_[x * order + e] == x;
        if (ok) {
            g.identity_ = e;
            found = true;
        }
    }
    if (!found)
        throw SchemaError("Cayley table has no identity");
    return g;
}

FiniteGroupTable reduce_mod(const NilpotentLattice& g, std::int64_t m, std::uint64_t max_order)
{
    if (!g.has_element_arithmetic())
        throw UnsupportedClass("finite quotients need class <= 2, lattice has " + g.describe());
    if (m < 2)
        throw SchemaError("quotient modulus must be at least 2");
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < g.dimension(); ++i) {
        if (order > max_order / static_cast<std::uint64_t>(m))
            throw BoundExceeded("quotient mod " + std::to_string(m) + " of a dimension-" +
                                std::to_string(g.dimension()) + " lattice exceeds " +
                                std::to_string(max_order) + " elements");
        order *= static_cast<std::uint64_t>(m);
    }
    if (order > 0xffffffffu)
        throw BoundExceeded("quotient order does not fit 32-bit indices");

    FiniteGroupTable t;
    t.order_ = order;
    t.identity_ = 0;
    t.modulus_ = m;
    t.r1_ = g.rank(0);
    t.r2_ = g.rank(1);
    const Integer big_m{static_cast<long>(m)};
    for (const auto& b : g.brackets()) {
        std::vector<std::int64_t> flat;
        for (std::size_t i = 0; i < t.r1_; ++i)
            for (std::size_t j = 0; j < t.r1_; ++j)
                flat.push_back(to_int64(floor_mod(b(i, j), big_m)));
        t.brackets_.push_back(std::move(flat));
    }
    return t;
}

std::vector<std::int64_t> FiniteGroupTable::coordinates(Index x) const
{
    std::vector<std::int64_t> c(r1_ + r2_);
    std::uint64_t v = x;
    for (std::size_t i = c.size(); i > 0; --i) {
        c[i - 1] = static_cast<std::int64_t>(v % static_cast<std::uint64_t>(modulus_));
        v /= static_cast<std::uint64_t>(modulus_);
    }
    return c;
}

FiniteGroupTable::Index FiniteGroupTable::index_of(const std::vector<std::int64_t>& coords) const
{
    if (coords.size() != r1_ + r2_)
        throw DimensionError("coordinate tuple length mismatch");
    std::uint64_t v = 0;
    for (auto x : coords)
        v = v * static_cast<std::uint64_t>(modulus_) + static_cast<std::uint64_t>(mod(x, modulus_));
    return static_cast<Index>(v);
}

FiniteGroupTable::Index FiniteGroupTable::project(const LatticeElement& u) const
{
    if (!has_coordinates())
        throw std::logic_error("project() on a table without coordinates");
    std::vector<std::int64_t> c;
    const Integer big_m{static_cast<long>(modulus_)};
    for (std::size_t l = 0; l < u.levels.size() && l < 2; ++l)
        for (const auto& x : u.levels[l])
            c.push_back(to_int64(floor_mod(x, big_m)));
    return index_of(c);
}

FiniteGroupTable::Index FiniteGroupTable::multiply(Index x, Index y) const
{
    if (!table_.empty())
        return table_[static_cast<std::size_t>(x) * order_ + y];
    // orders fit 32-bit indices and m >= 2, so at most 32 coordinates
    const std::size_t dim = r1_ + r2_;
    const auto m = static_cast<std::uint64_t>(modulus_);
    std::array<std::int64_t, 32> a{};
    std::array<std::int64_t, 32> b{};
    std::uint64_t vx = x;
    std::uint64_t vy = y;
    for (std::size_t i = dim; i > 0; --i) {
        a[i - 1] = static_cast<std::int64_t>(vx % m);
        b[i - 1] = static_cast<std::int64_t>(vy % m);
        vx /= m;
        vy /= m;
    }
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < r1_; ++i)
        out = out * m + static_cast<std::uint64_t>((a[i] + b[i]) % modulus_);
    for (std::size_t k = 0; k < r2_; ++k) {
        const auto& bk = brackets_[k];
        std::int64_t s = (a[r1_ + k] + b[r1_ + k]) % modulus_;
        for (std::size_t i = 0; i < r1_; ++i) {
            if (a[i] == 0)
                continue;
            std::int64_t row = 0;
            for (std::size_t j = 0; j < r1_; ++j)
                row = (row + bk[i * r1_ + j] * b[j]) % modulus_;
            s = (s + a[i] * row) % modulus_;
        }
        out = out * m + static_cast<std::uint64_t>(s);
    }
    return static_cast<Index>(out);
}

FiniteGroupTable::Index FiniteGroupTable::inverse(Index x) const
{
    if (!table_.empty()) {
        for (Index y = 0; y < order_; ++y)
            if (table_[static_cast<std::size_t>(x) * order_ + y] == identity_)
                return y;
        throw std::logic_error("element without inverse");
    }
    // (a, c)^-1 = (-a, B(a, a) - c)
    auto a = coordinates(x);
    std::vector<std::int64_t> c(a.size());
    for (std::size_t i = 0; i < r1_; ++i)
        c[i] = mod(-a[i], modulus_);
    for (std::size_t k = 0; k < r2_; ++k) {
        const auto& bk = brackets_[k];
        std::int64_t s = 0;
        for (std::size_t i = 0; i < r1_; ++i)
            for (std::size_t j = 0; j < r1_; ++j)
                s = mod(s + mod(a[i] * bk[i * r1_ + j], modulus_) * a[j], modulus_);
        c[r1_ + k] = mod(s - a[r1_ + k], modulus_);
    }
    return index_of(c);
}

bool FiniteGroupTable::is_associative_exhaustive() const
{
    const auto n = static_cast<std::int64_t>(order_);
    bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
    for (std::int64_t xi = 0; xi < n; ++xi) {
        const auto x = static_cast<Index>(xi);
        for (Index y = 0; y < order_ && ok; ++y) {
            Index xy = multiply(x, y);
            for (Index z = 0; z < order_; ++z)
                if (multiply(xy, z) != multiply(x, multiply(y, z))) {
                    ok = false;
                    break;
                }
        }
    }
    return ok;
}

bool FiniteGroupTable::is_associative_on(const std::vector<Index>& gens) const
{
    const auto n = static_cast<std::int64_t>(order_);
    bool ok = true;
    for (Index g : gens) {
#pragma omp parallel for schedule(static) reduction(&& : ok)
        for (std::int64_t xi = 0; xi < n; ++xi) {
            const auto x = static_cast<Index>(xi);
            Index xg = multiply(x, g);
            for (Index y = 0; y < order_; ++y)
                if (multiply(xg, y) != multiply(x, multiply(g, y))) {
                    ok = false;
                    break;
                }
        }
        if (!ok)
            return false;
    }
    return true;
}

std::vector<FiniteGroupTable::Index> FiniteGroupTable::generators() const
{
    std::vector<Index> gens;
    if (!table_.empty()) {
        for (Index x = 0; x < order_; ++x)
            gens.push_back(x);
        return gens;
    }
    for (std::size_t i = 0; i < r1_ + r2_; ++i) {
        std::vector<std::int64_t> c(r1_ + r2_, 0);
        c[i] = 1;
        gens.push_back(index_of(c));
    }
    return gens;
}

} // namespace nilco
