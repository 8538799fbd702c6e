#ifndef NILCO_INFRA_HPP
#define NILCO_INFRA_HPP

#include <optional>
#include <string>
#include <vector>

#include "nilco/lattice.hpp"
#include "nilco/reidemeister.hpp"

namespace nilco {

// Conjugation by a coset representative x on the cover lattice, given level by
// level, together with the cover element t = x^k (k the order of x modulo the
// cover). Conjugation by x fixes t, which validation checks at level 1.
struct CosetAction {
    std::vector<IntMatrix> a;
    LatticeElement t;
};

// An infra-nilmanifold domain described by a regular finite nil-cover: the
// cover lattice, the order of the holonomy group F, and for every nontrivial
// coset representative x its action on the cover and the images
// (f(x), g(x)) in the target.
struct InfraStructure {
    NilpotentLattice cover;
    std::size_t holonomy_order = 1;
    std::vector<CosetAction> coset_actions;
    std::vector<MoverPair> map_images;
};

struct InfraViolation {
    std::string message;
};

// Shape, unimodularity and count checks on the holonomy data alone.
std::vector<InfraViolation> validate_infra(const InfraStructure& infra);
// Additional checks tying the data to a cover map pair: both maps are
// defined on the cover, map images live in the common target, and the
// level-1 maps are invariant under every coset action (F_1 A_1 = F_1).
std::vector<InfraViolation> validate_infra(const InfraStructure& infra, const LatticeHomomorphism& phi,
                                           const LatticeHomomorphism& psi);

struct InfraLimits {
    ClassifierLimits classifier;
    // Cover classes enumerated for the merge.
    std::uint64_t max_cover_classes = 1'000'000;
};

struct InfraReport {
    CoincidenceReport cover;
    CoincidenceReport merged;
    // False when the cover target has no element arithmetic and only the
    // bound interval below is known.
    bool exact = true;
    std::optional<std::pair<Integer, Integer>> bounds;
    // Cover classes per merged class, in the order of merged.reidemeister.reps.
    std::vector<std::size_t> block_sizes;
};

// Report for the lifted pair (f p, g p) on the cover.
CoincidenceReport lift_pair(const InfraStructure& infra, const LatticeHomomorphism& phi,
                            const LatticeHomomorphism& psi, ClassifierLimits limits = {});

// Cover classes merged under the coset moves u -> g(x) u f(x)^-1.
// Throws ValidationError when the data is inconsistent.
InfraReport decide_infra(const InfraStructure& infra, const LatticeHomomorphism& phi,
                         const LatticeHomomorphism& psi, InfraLimits limits = {});

} // namespace nilco

#endif
