#ifndef NILCO_REIDEMEISTER_HPP
#define NILCO_REIDEMEISTER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nilco/int_matrix.hpp"
#include "nilco/lattice.hpp"
#include "nilco/linalg.hpp"
#include "nilco/twisted.hpp"

namespace nilco {

// Twisted-conjugacy class counts of a map pair into a nilpotent lattice.
//
// Level 1 counts classes of the abelianized relation, |coker D_1| where the
// columns of D_1 are psi(s)_1 - phi(s)_1. Over each level-1 class the central
// coordinates fall into |Z^{r_2} / L_a| classes, L_a being the translations
// realized by stabilizing words. level_counts[1] is the largest such fiber
// count; count is the sum over all fibers. When every fiber has the same size
// (always the case for square nonsingular lattice maps) count equals the
// product of level_counts.
struct ReidemeisterResult {
    Count count;
    std::vector<Count> level_counts;           // entry i belongs to level i + 1
    std::optional<std::size_t> infinite_level; // 1-based
    // |coker(G_i - F_i)| per level, lattice input only.
    std::vector<Count> difference_cokernels;
    bool uniform_fibers = true;
    // Per level-1 class, in the order of the level-1 representatives; empty
    // when the fibers are uniform and were not enumerated.
    std::vector<Count> fiber_counts;
    // Canonical class labels, when finite, class <= 2, and count <= rep limit.
    std::vector<LatticeElement> reps;
    bool reps_complete = false;

    bool is_finite() const { return count.is_finite(); }
};

enum class Deformable { yes, no, unknown };

enum class Rationale {
    eq_thm,     // lattice source: N = 0, R infinite and deformability coincide
    infty_thm,  // general source with R infinite: deformable
    remark_gap, // general source with finite R: no conclusion
    infra_cor,  // infra-nilmanifold source with finite R: N = R > 0
};

std::string to_string(Deformable d);
std::string to_string(Rationale r);
std::optional<Deformable> parse_deformable(const std::string& s);

struct CoincidenceReport {
    ReidemeisterResult reidemeister;
    // Nielsen number; unknown for general sources with finite R.
    std::optional<Integer> nielsen;
    Deformable deformable = Deformable::unknown;
    Rationale rationale = Rationale::eq_thm;
    SourceKind source = SourceKind::lattice;
};

// A word in the movers: letters (mover, exponent) read left to right as a
// group word; its action is u -> psi(w) u phi(w)^-1.
struct WordLetter {
    std::size_t mover;
    Integer exponent;
};
using Word = std::vector<WordLetter>;

struct WitnessStep {
    Word word;
    Integer power;
};
// Steps applied in order; step k maps u to psi(w_k)^p u phi(w_k)^-p.
using Witness = std::vector<WitnessStep>;

LatticeElement apply_word(const TwistedAction& action, const Word& word, const Integer& power,
                          const LatticeElement& u);
LatticeElement replay_witness(const TwistedAction& action, const Witness& witness, LatticeElement u);

struct ClassLabel {
    LatticeElement label;
    Witness witness;
};

struct ClassifierLimits {
    // Level-1 classes enumerated when fibers are not uniform.
    std::uint64_t max_level1_classes = 1'000'000;
    // Class representatives listed in results.
    std::uint64_t rep_limit = 4096;
};

// Precomputed canonical labelling of the twisted-conjugacy classes of a
// class <= 2 target. Immutable after construction; safe for concurrent use.
class TwistedClassifier {
public:
    explicit TwistedClassifier(TwistedAction action, ClassifierLimits limits = {});

    const TwistedAction& action() const { return action_; }
    const ReidemeisterResult& result() const { return result_; }

    // Throws InfiniteClasses when R is infinite.
    ClassLabel label(const LatticeElement& u) const;
    LatticeElement label_only(const LatticeElement& u) const;

    // Labels of many elements; the parallel version splits the span across
    // OpenMP threads and must agree with the serial one element for element.
    std::vector<LatticeElement> label_all(std::span<const LatticeElement> elements) const;
    std::vector<LatticeElement> label_all_serial(std::span<const LatticeElement> elements) const;

    // Rank of the level-1 translation lattice and of the fiber translation
    // lattice over the identity class.
    std::size_t level1_translation_rank() const { return level1_.hermite().rank(); }
    std::size_t fiber_translation_rank() const;

private:
    struct Fiber {
        IntMatrix generators; // r_2 x fiber_words_.size()
        CosetReducer reducer;
    };

    Fiber build_fiber(const IntVector& a) const;
    const Fiber& fiber_for(const IntVector& level1_rep) const;
    void require_finite() const;

    TwistedAction action_;
    ClassifierLimits limits_;
    CosetReducer level1_;
    std::vector<Word> fiber_words_; // commutator words, then stabilizing kernel words
    std::optional<Fiber> uniform_fiber_;
    std::map<IntVector, Fiber> fibers_;
    ReidemeisterResult result_;
};

// G - F; throws DimensionError on shape mismatch.
IntMatrix difference_map(const IntMatrix& f, const IntMatrix& g);

CoincidenceReport coincidence_invariants(const LatticeHomomorphism& phi, const LatticeHomomorphism& psi,
                                         ClassifierLimits limits = {});
CoincidenceReport coincidence_invariants_from_pairs(const GeneratorPairSystem& system,
                                                    ClassifierLimits limits = {});

ClassLabel label_class(const LatticeElement& u, const TwistedAction& action);

// Rank of the translation subgroup at a level (1-based): im(G_i - F_i) for
// lattice maps.
std::size_t fiber_deviation_rank(const LatticeHomomorphism& phi, const LatticeHomomorphism& psi,
                                 std::size_t level);
// For generator pairs the level-2 value includes commutator corrections and
// stabilizing words, evaluated over the identity class.
std::size_t fiber_deviation_rank(const GeneratorPairSystem& system, std::size_t level);

struct WeckenDecision {
    Deformable decision;
    Rationale rationale;
    std::string explanation;
};

WeckenDecision decide_wecken(const CoincidenceReport& report);

// Report for a lattice or general source, filling N and the decision from R.
CoincidenceReport make_report(ReidemeisterResult r, SourceKind source);

} // namespace nilco

#endif
