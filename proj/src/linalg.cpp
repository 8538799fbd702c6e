#include "nilco/linalg.hpp"

#include <cstdlib>

#include "nilco/errors.hpp"

namespace nilco {

Integer determinant(const IntMatrix& a)
{
    if (!a.is_square())
        throw DimensionError("determinant of a " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " matrix");
    const std::size_t n = a.rows();
    if (n == 0)
        return Integer{1};

    IntMatrix m = a;
    Integer prev{1};
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m(swap_row, k) == 0)
                ++swap_row;
            if (swap_row == n)
                return Integer{0};
            m.swap_rows(k, swap_row);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& a) { return hermite_normal_form(a).rank(); }

namespace {

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// Smallest nonzero |entry| in row t (cols >= t) and column t (rows >= t).
bool find_cross_pivot(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj)
{
    bool found = false;
    Integer best;
    auto consider = [&](std::size_t i, std::size_t j) {
        const Integer& x = d(i, j);
        if (x == 0)
            return;
        Integer ax = abs_value(x);
        if (!found || ax < best) {
            found = true;
            best = ax;
            pi = i;
            pj = j;
        }
    };
    for (std::size_t i = t; i < d.rows(); ++i)
        consider(i, t);
    for (std::size_t j = t + 1; j < d.cols(); ++j)
        consider(t, j);
    return found;
}

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    IntMatrix d = a;
    IntMatrix u = IntMatrix::identity(m);
    IntMatrix v = IntMatrix::identity(n);

    std::size_t t = 0;
    for (; t < m && t < n; ++t) {
        // global minimal pivot of the trailing block
        bool found = false;
        std::size_t pi = t, pj = t;
        Integer best;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (d(i, j) == 0)
                    continue;
                Integer ax = abs_value(d(i, j));
                if (!found || ax < best) {
                    found = true;
                    best = ax;
                    pi = i;
                    pj = j;
                }
            }
        if (!found)
            break;

        for (;;) {
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            for (std::size_t i = t + 1; i < m; ++i) {
                if (d(i, t) == 0)
                    continue;
                Integer q = d(i, t) / d(t, t); // truncating
                d.add_row_multiple(i, t, -q);
                u.add_row_multiple(i, t, -q);
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d(t, j) == 0)
                    continue;
                Integer q = d(t, j) / d(t, t);
                d.add_col_multiple(j, t, -q);
                v.add_col_multiple(j, t, -q);
            }

            std::size_t ci = t, cj = t;
            if (find_cross_pivot(d, t, ci, cj) && (ci != t || cj != t)) {
                // a remainder smaller than the pivot survived
                pi = ci;
                pj = cj;
                continue;
            }

            bool divisible = true;
            for (std::size_t i = t + 1; i < m && divisible; ++i)
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t()) == 0) {
                        d.add_row_multiple(t, i, Integer{1});
                        u.add_row_multiple(t, i, Integer{1});
                        divisible = false;
                        break;
                    }
                }
            if (divisible)
                break;
            find_cross_pivot(d, t, pi, pj);
        }

        if (d(t, t) < 0) {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithDecomposition out{std::move(u), std::move(d), std::move(v), {}};
    for (std::size_t i = 0; i < t; ++i)
        out.invariant_factors.push_back(out.d(i, i));
    return out;
}

HermiteDecomposition hermite_normal_form(const IntMatrix& a)
{
    const std::size_t rows = a.rows();
    const std::size_t n = a.cols();
    HermiteDecomposition out{a, IntMatrix::identity(n), {}};
    IntMatrix& h = out.h;
    IntMatrix& v = out.v;

    auto column_combine = [](IntMatrix& m, std::size_t k, std::size_t j, const Integer& s,
                             const Integer& t, const Integer& p, const Integer& q) {
        // (col_k, col_j) <- (s*col_k + t*col_j, p*col_k + q*col_j)
        for (std::size_t i = 0; i < m.rows(); ++i) {
            Integer x = m(i, k);
            Integer y = m(i, j);
            m(i, k) = s * x + t * y;
            m(i, j) = p * x + q * y;
        }
    };

    std::size_t k = 0;
    for (std::size_t r = 0; r < rows && k < n; ++r) {
        for (std::size_t j = k + 1; j < n; ++j) {
            if (h(r, j) == 0)
                continue;
            if (h(r, k) == 0) {
                h.swap_cols(k, j);
                v.swap_cols(k, j);
                continue;
            }
            if (mpz_divisible_p(h(r, j).get_mpz_t(), h(r, k).get_mpz_t()) != 0) {
                Integer q = h(r, j) / h(r, k);
                h.add_col_multiple(j, k, -q);
                v.add_col_multiple(j, k, -q);
                continue;
            }
            Integer x = h(r, k);
            Integer y = h(r, j);
            ExtendedGcd e = extended_gcd(x, y);
            Integer p = -(y / e.g);
            Integer q = x / e.g;
            column_combine(h, k, j, e.s, e.t, p, q);
            column_combine(v, k, j, e.s, e.t, p, q);
        }
        if (h(r, k) == 0)
            continue;
        if (h(r, k) < 0) {
            h.negate_col(k);
            v.negate_col(k);
        }
        for (std::size_t c = 0; c < k; ++c) {
            Integer q = floor_div(h(r, c), h(r, k));
            if (q != 0) {
                h.add_col_multiple(c, k, -q);
                v.add_col_multiple(c, k, -q);
            }
        }
        out.pivot_rows.push_back(r);
        ++k;
    }
    return out;
}

IntMatrix kernel_basis(const IntMatrix& a)
{
    HermiteDecomposition hnf = hermite_normal_form(a);
    const std::size_t n = a.cols();
    IntMatrix basis(n, n - hnf.rank());
    for (std::size_t j = hnf.rank(); j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            basis(i, j - hnf.rank()) = hnf.v(i, j);
    return basis;
}

Count CokernelStructure::exponent() const
{
    if (free_rank > 0)
        return Count::infinite();
    return Count(torsion.empty() ? Integer{1} : torsion.back());
}

CokernelStructure cokernel(const IntMatrix& a)
{
    SmithDecomposition snf = smith_normal_form(a);
    CokernelStructure out;
    out.free_rank = a.rows() - snf.invariant_factors.size();
    Integer order{1};
    for (const auto& f : snf.invariant_factors) {
        if (f > 1)
            out.torsion.push_back(f);
        order *= f;
    }
    out.order = out.free_rank > 0 ? Count::infinite() : Count(order);
    return out;
}

CosetReducer::CosetReducer(const IntMatrix& a) : hnf_(hermite_normal_form(a)) {}

CanonicalRep CosetReducer::reduce(const IntVector& u) const
{
    const IntMatrix& h = hnf_.h;
    if (u.size() != h.rows())
        throw DimensionError("vector of length " + std::to_string(u.size()) +
                             " reduced modulo a lattice in Z^" + std::to_string(h.rows()));
    CanonicalRep out{u, zero_vector(hnf_.v.rows())};
    IntVector lambda = zero_vector(h.cols());
    for (std::size_t k = 0; k < hnf_.rank(); ++k) {
        const std::size_t p = hnf_.pivot_rows[k];
        Integer q = floor_div(out.rep[p], h(p, k));
        if (q == 0)
            continue;
        for (std::size_t i = p; i < h.rows(); ++i)
            out.rep[i] -= q * h(i, k);
        lambda[k] = q;
    }
    out.witness = hnf_.v * lambda;
    return out;
}

IntVector CosetReducer::reduce_rep(const IntVector& u) const
{
    const IntMatrix& h = hnf_.h;
    if (u.size() != h.rows())
        throw DimensionError("vector length mismatch in coset reduction");
    IntVector rep = u;
    for (std::size_t k = 0; k < hnf_.rank(); ++k) {
        const std::size_t p = hnf_.pivot_rows[k];
        Integer q = floor_div(rep[p], h(p, k));
        if (q == 0)
            continue;
        for (std::size_t i = p; i < h.rows(); ++i)
            rep[i] -= q * h(i, k);
    }
    return rep;
}

Count CosetReducer::index() const
{
    if (hnf_.rank() < hnf_.h.rows())
        return Count::infinite();
    Integer order{1};
    for (std::size_t k = 0; k < hnf_.rank(); ++k)
        order *= hnf_.h(hnf_.pivot_rows[k], k);
    return Count(order);
}

std::vector<IntVector> CosetReducer::representatives() const
{
    const std::size_t dim = hnf_.h.rows();
    if (hnf_.rank() < dim)
        throw std::logic_error("representatives() of an infinite quotient");
    // full rank: pivot_rows[k] == k
    std::vector<IntVector> reps;
    IntVector cur = zero_vector(dim);
    for (;;) {
        reps.push_back(cur);
        std::size_t i = dim;
        while (i > 0) {
            --i;
            cur[i] += 1;
            if (cur[i] < hnf_.h(i, i))
                break;
            cur[i] = 0;
            if (i == 0)
                return reps;
        }
        if (dim == 0)
            return reps;
    }
}

CanonicalRep reduce_to_canonical_rep(const IntVector& u, const IntMatrix& a)
{
    if (u.size() != a.rows())
        throw DimensionError("reduce_to_canonical_rep: vector length " + std::to_string(u.size()) +
                             " but matrix has " + std::to_string(a.rows()) + " rows");
    return CosetReducer(a).reduce(u);
}

} // namespace nilco
