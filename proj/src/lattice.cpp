#include "nilco/lattice.hpp"

#include <algorithm>

#include "nilco/errors.hpp"

namespace nilco {

NilpotentLattice::NilpotentLattice(std::vector<std::size_t> ranks, std::vector<IntMatrix> brackets)
    : ranks_(std::move(ranks)), brackets_(std::move(brackets))
{
    if (ranks_.empty())
        throw SchemaError("lattice needs at least one level");
    if (ranks_[0] == 0)
        throw SchemaError("lattice level 1 must have positive rank");
    if (ranks_.size() == 2) {
        if (brackets_.size() != ranks_[1])
            throw DimensionError("class-2 lattice needs " + std::to_string(ranks_[1]) +
                                 " bracket matrices, got " + std::to_string(brackets_.size()));
        for (const auto& b : brackets_)
            if (b.rows() != ranks_[0] || b.cols() != ranks_[0])
                throw DimensionError("bracket matrix must be " + std::to_string(ranks_[0]) + "x" +
                                     std::to_string(ranks_[0]));
    } else if (!brackets_.empty()) {
        throw SchemaError("bracket data is only accepted for class-2 lattices");
    }
}

NilpotentLattice NilpotentLattice::torus(std::size_t n) { return NilpotentLattice({n}); }

NilpotentLattice NilpotentLattice::heisenberg()
{
    return NilpotentLattice({2, 1}, {IntMatrix{{0, 1}, {0, 0}}});
}

NilpotentLattice NilpotentLattice::free_two_step(std::size_t n)
{
    std::vector<IntMatrix> brackets;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            IntMatrix b(n, n);
            b(i, j) = 1;
            brackets.push_back(std::move(b));
        }
    const std::size_t r2 = brackets.size();
    return NilpotentLattice({n, r2}, std::move(brackets));
}

NilpotentLattice NilpotentLattice::product(const NilpotentLattice& a, const NilpotentLattice& b)
{
    if (!a.has_element_arithmetic() || !b.has_element_arithmetic())
        throw UnsupportedClass("lattice products are limited to class <= 2");
    const std::size_t r1 = a.rank(0) + b.rank(0);
    const std::size_t r2 = a.rank(1) + b.rank(1);
    if (r2 == 0)
        return NilpotentLattice({r1});
    std::vector<IntMatrix> brackets;
    for (const auto& m : a.brackets_) {
        IntMatrix big(r1, r1);
        for (std::size_t i = 0; i < a.rank(0); ++i)
            for (std::size_t j = 0; j < a.rank(0); ++j)
                big(i, j) = m(i, j);
        brackets.push_back(std::move(big));
    }
    const std::size_t off = a.rank(0);
    for (const auto& m : b.brackets_) {
        IntMatrix big(r1, r1);
        for (std::size_t i = 0; i < b.rank(0); ++i)
            for (std::size_t j = 0; j < b.rank(0); ++j)
                big(off + i, off + j) = m(i, j);
        brackets.push_back(std::move(big));
    }
    return NilpotentLattice({r1, r2}, std::move(brackets));
}

std::size_t NilpotentLattice::rank(std::size_t level) const
{
    return level < ranks_.size() ? ranks_[level] : 0;
}

std::size_t NilpotentLattice::dimension() const
{
    std::size_t d = 0;
    for (auto r : ranks_)
        d += r;
    return d;
}

std::string NilpotentLattice::describe() const
{
    std::string s = "class " + std::to_string(ranks_.size()) + ", ranks [";
    for (std::size_t i = 0; i < ranks_.size(); ++i)
        s += (i ? "," : "") + std::to_string(ranks_[i]);
    return s + "]";
}

bool operator==(const NilpotentLattice& a, const NilpotentLattice& b)
{
    return a.ranks_ == b.ranks_ && a.brackets_ == b.brackets_;
}

std::string LatticeElement::to_string() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < levels.size(); ++i)
        s += (i ? "," : "") + nilco::to_string(levels[i]);
    return s + ")";
}

bool operator<(const LatticeElement& a, const LatticeElement& b)
{
    if (a.levels.size() != b.levels.size())
        return a.levels.size() < b.levels.size();
    for (std::size_t l = 0; l < a.levels.size(); ++l) {
        const auto& x = a.levels[l];
        const auto& y = b.levels[l];
        if (x.size() != y.size())
            return x.size() < y.size();
        for (std::size_t i = 0; i < x.size(); ++i) {
            int c = cmp(x[i], y[i]);
            if (c != 0)
                return c < 0;
        }
    }
    return false;
}

LatticeElement identity_element(const NilpotentLattice& g)
{
    LatticeElement e;
    for (auto r : g.ranks())
        e.levels.push_back(zero_vector(r));
    return e;
}

LatticeElement make_element(const NilpotentLattice& g, IntVector a, IntVector c)
{
    LatticeElement e = identity_element(g);
    if (a.size() != g.rank(0))
        throw DimensionError("level-1 coordinate length mismatch");
    e.levels[0] = std::move(a);
    if (c.empty())
        return e;
    if (g.nilpotency_class() < 2 || c.size() != g.rank(1))
        throw DimensionError("level-2 coordinate length mismatch");
    e.levels[1] = std::move(c);
    return e;
}

void check_shape(const NilpotentLattice& g, const LatticeElement& u)
{
    if (u.levels.size() != g.nilpotency_class())
        throw DimensionError("element has " + std::to_string(u.levels.size()) +
                             " levels, lattice has " + std::to_string(g.nilpotency_class()));
    for (std::size_t l = 0; l < u.levels.size(); ++l)
        if (u.levels[l].size() != g.rank(l))
            throw DimensionError("element level " + std::to_string(l + 1) + " has length " +
                                 std::to_string(u.levels[l].size()) + ", expected " +
                                 std::to_string(g.rank(l)));
}

IntVector cocycle(const NilpotentLattice& g, const IntVector& a, const IntVector& b)
{
    const auto& brackets = g.brackets();
    IntVector out = zero_vector(brackets.size());
    const std::size_t n = g.rank(0);
    for (std::size_t k = 0; k < brackets.size(); ++k) {
        const IntMatrix& m = brackets[k];
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                if (m(i, j) != 0)
                    out[k] += a[i] * m(i, j) * b[j];
        }
    }
    return out;
}

IntVector commutator_form(const NilpotentLattice& g, const IntVector& a, const IntVector& b)
{
    return sub(cocycle(g, a, b), cocycle(g, b, a));
}

namespace {

void require_arithmetic(const NilpotentLattice& g)
{
    if (!g.has_element_arithmetic())
        throw UnsupportedClass("element arithmetic needs class <= 2, lattice has " + g.describe());
}

} // namespace

LatticeElement multiply(const LatticeElement& u, const LatticeElement& v, const NilpotentLattice& g)
{
    require_arithmetic(g);
    check_shape(g, u);
    check_shape(g, v);
    LatticeElement w;
    w.levels.push_back(add(u.levels[0], v.levels[0]));
    if (g.nilpotency_class() == 2)
        w.levels.push_back(
            add(add(u.levels[1], v.levels[1]), cocycle(g, u.levels[0], v.levels[0])));
    return w;
}

LatticeElement inverse(const LatticeElement& u, const NilpotentLattice& g)
{
    require_arithmetic(g);
    check_shape(g, u);
    LatticeElement w;
    w.levels.push_back(scale(Integer{-1}, u.levels[0]));
    if (g.nilpotency_class() == 2)
        w.levels.push_back(sub(cocycle(g, u.levels[0], u.levels[0]), u.levels[1]));
    return w;
}

LatticeElement power(const LatticeElement& u, const Integer& n, const NilpotentLattice& g)
{
    require_arithmetic(g);
    check_shape(g, u);
    // (a, c)^n = (n a, n c + n(n-1)/2 B(a, a)), valid for negative n as well
    LatticeElement w;
    w.levels.push_back(scale(n, u.levels[0]));
    if (g.nilpotency_class() == 2) {
        Integer tri = n * (n - 1) / 2;
        w.levels.push_back(
            add(scale(n, u.levels[1]), scale(tri, cocycle(g, u.levels[0], u.levels[0]))));
    }
    return w;
}

LatticeElement commutator(const LatticeElement& u, const LatticeElement& v, const NilpotentLattice& g)
{
    require_arithmetic(g);
    check_shape(g, u);
    check_shape(g, v);
    LatticeElement w = identity_element(g);
    if (g.nilpotency_class() == 2)
        w.levels[1] = commutator_form(g, u.levels[0], v.levels[0]);
    return w;
}

LatticeHomomorphism LatticeHomomorphism::identity(const NilpotentLattice& g)
{
    LatticeHomomorphism h{g, g, {}};
    for (auto r : g.ranks())
        h.levels.push_back(IntMatrix::identity(r));
    return h;
}

LatticeHomomorphism LatticeHomomorphism::trivial(const NilpotentLattice& source,
                                                 const NilpotentLattice& target)
{
    LatticeHomomorphism h{source, target, {}};
    const std::size_t c = std::max(source.nilpotency_class(), target.nilpotency_class());
    for (std::size_t l = 0; l < c; ++l)
        h.levels.push_back(IntMatrix::zero(target.rank(l), source.rank(l)));
    return h;
}

std::optional<HomViolation> validate_hom(const LatticeHomomorphism& phi)
{
    const auto& src = phi.source;
    const auto& tgt = phi.target;
    const std::size_t c = std::max(src.nilpotency_class(), tgt.nilpotency_class());
    if (phi.levels.size() != c)
        return HomViolation{"expected " + std::to_string(c) + " level matrices, got " +
                                std::to_string(phi.levels.size()),
                            std::nullopt};
    for (std::size_t l = 0; l < c; ++l) {
        const IntMatrix& m = phi.levels[l];
        if (m.rows() != tgt.rank(l) || m.cols() != src.rank(l))
            return HomViolation{"level " + std::to_string(l + 1) + " matrix is " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                    ", expected " + std::to_string(tgt.rank(l)) + "x" +
                                    std::to_string(src.rank(l)),
                                std::nullopt};
    }
    if (tgt.nilpotency_class() != 2 || !src.has_element_arithmetic())
        return std::nullopt;

    const std::size_t n = src.rank(0);
    const IntMatrix& m1 = phi.levels[0];
    std::vector<IntVector> images;
    for (std::size_t i = 0; i < n; ++i)
        images.push_back(m1.column(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            IntVector lhs = zero_vector(tgt.rank(1));
            if (src.nilpotency_class() == 2) {
                IntVector ei = zero_vector(n), ej = zero_vector(n);
                ei[i] = 1;
                ej[j] = 1;
                lhs = phi.levels[1] * commutator_form(src, ei, ej);
            }
            IntVector rhs = commutator_form(tgt, images[i], images[j]);
            if (lhs != rhs)
                return HomViolation{"commutator of basis generators " + std::to_string(i + 1) +
                                        " and " + std::to_string(j + 1) + " maps to " +
                                        to_string(lhs) + " but the images commute to " +
                                        to_string(rhs),
                                    std::make_pair(i, j)};
        }
    return std::nullopt;
}

void require_valid(const LatticeHomomorphism& phi)
{
    if (auto v = validate_hom(phi))
        throw ValidationError("invalid homomorphism: " + v->message);
}

LatticeElement apply_hom(const LatticeHomomorphism& phi, const LatticeElement& u)
{
    require_valid(phi);
    check_shape(phi.source, u);
    const auto& src = phi.source;
    const auto& tgt = phi.target;
    if (!tgt.has_element_arithmetic() || !src.has_element_arithmetic())
        throw UnsupportedClass("apply_hom needs class <= 2 on both ends");
    LatticeElement w = identity_element(tgt);
    w.levels[0] = phi.levels[0] * u.levels[0];
    if (tgt.nilpotency_class() < 2)
        return w;

    const IntVector& a = u.levels[0];
    IntVector c2 = src.nilpotency_class() == 2 ? phi.levels[1] * u.levels[1]
                                               : zero_vector(tgt.rank(1));
    // quadratic correction q(a) = sum_{i<j} beta_ij a_i a_j + sum_i beta_ii a_i(a_i-1)/2
    const std::size_t n = src.rank(0);
    const IntMatrix& m1 = phi.levels[0];
    auto beta = [&](std::size_t i, std::size_t j) {
        IntVector ei = zero_vector(n), ej = zero_vector(n);
        ei[i] = 1;
        ej[j] = 1;
        IntVector v = cocycle(tgt, m1.column(i), m1.column(j));
        if (src.nilpotency_class() == 2)
            v = sub(v, phi.levels[1] * cocycle(src, ei, ej));
        return v;
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0)
            continue;
        Integer tri = a[i] * (a[i] - 1) / 2;
        if (tri != 0)
            c2 = add(c2, scale(tri, beta(i, i)));
        for (std::size_t j = i + 1; j < n; ++j)
            if (a[j] != 0)
                c2 = add(c2, scale(a[i] * a[j], beta(i, j)));
    }
    w.levels[1] = std::move(c2);
    return w;
}

std::vector<LatticeElement> source_generators(const NilpotentLattice& g)
{
    std::vector<LatticeElement> gens;
    for (std::size_t l = 0; l < g.nilpotency_class(); ++l)
        for (std::size_t i = 0; i < g.rank(l); ++i) {
            LatticeElement e = identity_element(g);
            e.levels[l][i] = 1;
            gens.push_back(std::move(e));
        }
    return gens;
}

std::vector<LatticeElement> generator_images(const LatticeHomomorphism& phi)
{
    require_valid(phi);
    std::vector<LatticeElement> images;
    for (std::size_t l = 0; l < phi.source.nilpotency_class(); ++l)
        for (std::size_t i = 0; i < phi.source.rank(l); ++i) {
            LatticeElement e = identity_element(phi.target);
            if (l < phi.target.nilpotency_class())
                e.levels[l] = phi.levels[l].column(i);
            images.push_back(std::move(e));
        }
    return images;
}

} // namespace nilco
