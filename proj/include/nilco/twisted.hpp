#ifndef NILCO_TWISTED_HPP
#define NILCO_TWISTED_HPP

#include <vector>

#include "nilco/lattice.hpp"

namespace nilco {

// Images (phi(s), psi(s)) of one source generator s. The induced move on the
// target is u -> psi(s) * u * phi(s)^-1.
struct MoverPair {
    LatticeElement phi;
    LatticeElement psi;
};

// A map pair from an arbitrary finitely generated source, recorded only
// through the images of a generating set.
struct GeneratorPairSystem {
    NilpotentLattice target;
    std::vector<MoverPair> pairs;
};

enum class SourceKind {
    lattice, // source is itself a nilpotent lattice (nilmanifold domain)
    general, // arbitrary finitely generated source group
    infra,   // infra-nilmanifold domain, handled through a finite nil-cover
};

// The twisted-conjugacy relation u ~ psi(x) u phi(x)^-1 generated by a finite
// list of movers. Built either from generator pairs or from two lattice
// homomorphisms (movers are then the images of the source basis generators).
struct TwistedAction {
    NilpotentLattice target;
    std::vector<MoverPair> movers;
    SourceKind source_kind = SourceKind::general;

    static TwistedAction from_pairs(const GeneratorPairSystem& system);
    static TwistedAction from_homs(const LatticeHomomorphism& phi, const LatticeHomomorphism& psi);
};

// One move (or its inverse when exponent < 0), applied |exponent| times.
LatticeElement apply_move(const TwistedAction& action, std::size_t mover, const Integer& exponent,
                          const LatticeElement& u);

} // namespace nilco

#endif
