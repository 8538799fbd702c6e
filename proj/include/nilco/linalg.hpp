#ifndef NILCO_LINALG_HPP
#define NILCO_LINALG_HPP

#include <vector>

#include "nilco/int_matrix.hpp"
#include "nilco/integer.hpp"

namespace nilco {

// Fraction-free (Bareiss) elimination. Throws DimensionError on a non-square input.
Integer determinant(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);

struct SmithDecomposition {
    IntMatrix u; // rows x rows, unimodular
    IntMatrix d; // rows x cols, diagonal
    IntMatrix v; // cols x cols, unimodular
    // Nonzero diagonal entries of d, d_i | d_{i+1}. Zeros are not listed.
    IntVector invariant_factors;
};

// U * A * V == D, pivots chosen by minimal nonzero absolute value.
SmithDecomposition smith_normal_form(const IntMatrix& a);

// Column-style Hermite form H = A * V with V unimodular. Nonzero columns of H
// come first; column k has its leading (topmost) nonzero entry, which is
// positive, in row pivot_rows[k], and pivot rows strictly increase. Entries of
// earlier columns in a pivot row are reduced into [0, pivot). Columns from
// rank() onward are zero, so the matching columns of V span ker(A).
struct HermiteDecomposition {
    IntMatrix h;
    IntMatrix v;
    std::vector<std::size_t> pivot_rows;

    std::size_t rank() const { return pivot_rows.size(); }
};

HermiteDecomposition hermite_normal_form(const IntMatrix& a);

// Integer basis (as columns) of the kernel lattice {z : A z = 0}.
IntMatrix kernel_basis(const IntMatrix& a);

struct CokernelStructure {
    std::size_t free_rank = 0;
    IntVector torsion; // entries >= 2, each dividing the next
    Count order;       // product(torsion) when free_rank == 0, otherwise infinite

    // Largest torsion factor (1 for trivial, infinite when free_rank > 0).
    Count exponent() const;
};

// Cokernel of A viewed as a map Z^cols -> Z^rows.
CokernelStructure cokernel(const IntMatrix& a);

struct CanonicalRep {
    IntVector rep;
    IntVector witness; // u - rep == A * witness
};

// Canonical representatives of Z^rows / im(A). Pivot coordinates (in the
// Hermite echelon of im(A)) are reduced into [0, pivot); other coordinates
// are left untouched. For a full-rank image this is the lexicographically
// smallest nonnegative vector in the coset.
class CosetReducer {
public:
    explicit CosetReducer(const IntMatrix& a);

    CanonicalRep reduce(const IntVector& u) const;
    // Same representative without the witness bookkeeping.
    IntVector reduce_rep(const IntVector& u) const;

    std::size_t ambient_dim() const { return hnf_.h.rows(); }
    std::size_t generator_count() const { return hnf_.h.cols(); }
    const HermiteDecomposition& hermite() const { return hnf_; }
    // Index of im(A) in Z^rows.
    Count index() const;
    // Every canonical representative, in lexicographic order of the pivot
    // coordinates. Only defined for finite index.
    std::vector<IntVector> representatives() const;

private:
    HermiteDecomposition hnf_;
};

CanonicalRep reduce_to_canonical_rep(const IntVector& u, const IntMatrix& a);

} // namespace nilco

#endif
