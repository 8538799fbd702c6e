#ifndef NILCO_LATTICE_HPP
#define NILCO_LATTICE_HPP

#include <optional>
#include <string>
#include <vector>

#include "nilco/int_matrix.hpp"
#include "nilco/integer.hpp"

namespace nilco {

// A finitely generated torsion-free nilpotent group given by a central tower
// with free-abelian quotients of ranks r_1..r_c. For class <= 2 the group law
// in Mal'cev-style coordinates (a, c) is
//
//     (a, c) * (a', c') = (a + a', c + c' + B(a, a'))
//
// where B is the integer bilinear cocycle whose k-th component is
// a^T * brackets[k] * a'. No 1/2 factor is used, so every coordinate stays
// integral. Lattices of class > 2 carry ranks only.
class NilpotentLattice {
public:
    NilpotentLattice() = default;
    NilpotentLattice(std::vector<std::size_t> ranks, std::vector<IntMatrix> brackets = {});

    static NilpotentLattice torus(std::size_t n);
    // (x, y, z) with z += x * y', i.e. the 3x3 unitriangular integer matrices.
    static NilpotentLattice heisenberg();
    // Free 2-step nilpotent group on n generators: one central coordinate per
    // pair i < j, cocycle component a_i * b_j.
    static NilpotentLattice free_two_step(std::size_t n);
    // Direct product of two class <= 2 lattices.
    static NilpotentLattice product(const NilpotentLattice& a, const NilpotentLattice& b);

    std::size_t nilpotency_class() const { return ranks_.size(); }
    const std::vector<std::size_t>& ranks() const { return ranks_; }
    // Rank of level i (0-based); zero for levels beyond the class.
    std::size_t rank(std::size_t level) const;
    std::size_t dimension() const;
    const std::vector<IntMatrix>& brackets() const { return brackets_; }
    bool has_element_arithmetic() const { return nilpotency_class() <= 2; }

    std::string describe() const;

    friend bool operator==(const NilpotentLattice& a, const NilpotentLattice& b);

private:
    std::vector<std::size_t> ranks_;
    std::vector<IntMatrix> brackets_;
};

// Coordinates per level; level i has length r_i.
struct LatticeElement {
    std::vector<IntVector> levels;

    std::string to_string() const;
    friend bool operator==(const LatticeElement& a, const LatticeElement& b) = default;
    // Lexicographic, level by level.
    friend bool operator<(const LatticeElement& a, const LatticeElement& b);
};

LatticeElement identity_element(const NilpotentLattice& g);
// Convenience for class <= 2: builds (a, c), padding missing levels with zeros.
LatticeElement make_element(const NilpotentLattice& g, IntVector a, IntVector c = {});
void check_shape(const NilpotentLattice& g, const LatticeElement& u);

// Cocycle value B(a, b) in Z^{r_2}.
IntVector cocycle(const NilpotentLattice& g, const IntVector& a, const IntVector& b);
// Commutator form B(a, b) - B(b, a).
IntVector commutator_form(const NilpotentLattice& g, const IntVector& a, const IntVector& b);

// Element arithmetic. Each throws UnsupportedClass for class > 2.
LatticeElement multiply(const LatticeElement& u, const LatticeElement& v, const NilpotentLattice& g);
LatticeElement inverse(const LatticeElement& u, const NilpotentLattice& g);
LatticeElement power(const LatticeElement& u, const Integer& n, const NilpotentLattice& g);
LatticeElement commutator(const LatticeElement& u, const LatticeElement& v, const NilpotentLattice& g);

// A homomorphism given level-wise by matrices M_i of shape r_i(target) x r_i(source).
// The number of levels is the larger of the two classes; missing levels have rank 0.
//
// For class <= 2 the level matrices determine the homomorphism once the basis
// generators e_i of the first level are sent to (M_1 e_i, 0). On a general
// element the map is (a, c) -> (M_1 a, M_2 c + q(a)) where q is the quadratic
// correction making the map multiplicative; it exists exactly when M_1 and
// M_2 intertwine the commutator forms (see validate_hom).
struct LatticeHomomorphism {
    NilpotentLattice source;
    NilpotentLattice target;
    std::vector<IntMatrix> levels;

    static LatticeHomomorphism identity(const NilpotentLattice& g);
    static LatticeHomomorphism trivial(const NilpotentLattice& source, const NilpotentLattice& target);
    std::size_t level_count() const { return levels.size(); }
};

struct HomViolation {
    std::string message;
    // Offending basis pair for bracket violations.
    std::optional<std::pair<std::size_t, std::size_t>> basis_pair;
};

// Shape checks, then commutator-form equivariance
//   M_2 * omega_src(e_i, e_j) == omega_tgt(M_1 e_i, M_1 e_j)
// on every basis pair (only when both ends carry brackets). Returns the first
// violation found.
std::optional<HomViolation> validate_hom(const LatticeHomomorphism& phi);
// Throws ValidationError on failure.
void require_valid(const LatticeHomomorphism& phi);

LatticeElement apply_hom(const LatticeHomomorphism& phi, const LatticeElement& u);

// Generator images used to encode a lattice homomorphism as a finite list of
// target elements: one per basis vector of each source level, in level order.
std::vector<LatticeElement> generator_images(const LatticeHomomorphism& phi);
// The matching source generators.
std::vector<LatticeElement> source_generators(const NilpotentLattice& g);

} // namespace nilco

#endif
