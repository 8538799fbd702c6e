#include "nilco/reidemeister.hpp"

#include <algorithm>

#include "nilco/errors.hpp"

namespace nilco {

std::string to_string(Deformable d)
{
    switch (d) {
    case Deformable::yes:
        return "YES";
    case Deformable::no:
        return "NO";
    case Deformable::unknown:
        return "UNKNOWN";
    }
    return "UNKNOWN";
}

std::string to_string(Rationale r)
{
    switch (r) {
    case Rationale::eq_thm:
        return "EQ-THM";
    case Rationale::infty_thm:
        return "INFTY-THM";
    case Rationale::remark_gap:
        return "REMARK-GAP";
    case Rationale::infra_cor:
        return "INFRA-COR";
    }
    return "EQ-THM";
}

std::optional<Deformable> parse_deformable(const std::string& s)
{
    std::string u;
    for (char c : s)
        u += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (u == "YES")
        return Deformable::yes;
    if (u == "NO")
        return Deformable::no;
    if (u == "UNKNOWN")
        return Deformable::unknown;
    return std::nullopt;
}

LatticeElement apply_word(const TwistedAction& action, const Word& word, const Integer& p,
                          const LatticeElement& u)
{
    const auto& t = action.target;
    LatticeElement left = identity_element(t);
    LatticeElement right = identity_element(t);
    for (const auto& letter : word) {
        if (letter.mover >= action.movers.size())
            throw DimensionError("word letter refers to a missing mover");
        const auto& m = action.movers[letter.mover];
        left = multiply(left, power(m.psi, letter.exponent, t), t);
        right = multiply(right, power(m.phi, letter.exponent, t), t);
    }
    return multiply(multiply(power(left, p, t), u, t), power(right, -p, t), t);
}

LatticeElement replay_witness(const TwistedAction& action, const Witness& witness, LatticeElement u)
{
    for (const auto& step : witness)
        u = apply_word(action, step.word, step.power, u);
    return u;
}

namespace {

IntMatrix level1_differences(const TwistedAction& action)
{
    const auto& t = action.target;
    if (!t.has_element_arithmetic())
        throw UnsupportedClass("twisted classes of explicit movers need a class <= 2 target, got " +
                               t.describe());
    std::vector<IntVector> columns;
    for (const auto& m : action.movers) {
        check_shape(t, m.phi);
        check_shape(t, m.psi);
        columns.push_back(sub(m.psi.levels[0], m.phi.levels[0]));
    }
    return IntMatrix::from_columns(t.rank(0), columns);
}

bool has_central_rank(const NilpotentLattice& t)
{
    return t.nilpotency_class() == 2 && t.rank(1) > 0;
}

LatticeElement element_at(const NilpotentLattice& t, const IntVector& a, const IntVector& c)
{
    LatticeElement e = identity_element(t);
    e.levels[0] = a;
    if (t.nilpotency_class() == 2)
        e.levels[1] = c;
    return e;
}

} // namespace

TwistedClassifier::TwistedClassifier(TwistedAction action, ClassifierLimits limits)
    : action_(std::move(action)), limits_(limits), level1_(level1_differences(action_))
{
    const auto& t = action_.target;
    auto& r = result_;
    const Count idx1 = level1_.index();
    r.level_counts.push_back(idx1);

    // Words fixing level 1: commutators of movers, and lifts of a basis of ker D_1.
    bool uniform = true;
    if (has_central_rank(t)) {
        const std::size_t n = action_.movers.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                fiber_words_.push_back({{i, 1}, {j, 1}, {i, -1}, {j, -1}});

        const auto& hnf = level1_.hermite();
        for (std::size_t col = hnf.rank(); col < n; ++col) {
            Word w;
            IntVector image = zero_vector(t.rank(0));
            for (std::size_t j = 0; j < n; ++j) {
                const Integer& k = hnf.v(j, col);
                if (k == 0)
                    continue;
                w.push_back({j, k});
                image = add(image, scale(k, action_.movers[j].phi.levels[0]));
            }
            // the central shift of w at a is t_w(0) + omega(image, a)
            for (std::size_t i = 0; i < t.rank(0) && uniform; ++i) {
                IntVector e = zero_vector(t.rank(0));
                e[i] = 1;
                uniform = is_zero(commutator_form(t, image, e));
            }
            fiber_words_.push_back(std::move(w));
        }
    }

    if (idx1.is_infinite()) {
        r.count = Count::infinite();
        r.infinite_level = 1;
        return;
    }

    if (!has_central_rank(t)) {
        r.count = idx1;
        if (idx1.value() <= limits_.rep_limit) {
            for (const auto& a : level1_.representatives())
                r.reps.push_back(element_at(t, a, {}));
            r.reps_complete = true;
        }
        return;
    }
    r.uniform_fibers = uniform;

    if (uniform) {
        uniform_fiber_ = build_fiber(zero_vector(t.rank(0)));
        const Count f = uniform_fiber_->reducer.index();
        r.level_counts.push_back(f);
        if (f.is_infinite()) {
            r.count = Count::infinite();
            r.infinite_level = 2;
            return;
        }
        r.count = Count(idx1.value() * f.value());
    } else {
        if (idx1.value() > limits_.max_level1_classes)
            throw BoundExceeded("non-uniform fibers over " + idx1.to_string() +
                                " level-1 classes exceed the enumeration limit");
        const auto reps1 = level1_.representatives();
        std::vector<std::optional<Fiber>> built(reps1.size());
        const auto count1 = static_cast<std::int64_t>(reps1.size());
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < count1; ++i)
            built[i] = build_fiber(reps1[i]);

        Integer total{0};
        Integer largest{0};
        bool infinite = false;
        for (std::size_t i = 0; i < reps1.size(); ++i) {
            const Count f = built[i]->reducer.index();
            r.fiber_counts.push_back(f);
            if (f.is_infinite())
                infinite = true;
            else {
                total += f.value();
                largest = std::max(largest, f.value());
            }
            fibers_.emplace(reps1[i], std::move(*built[i]));
        }
        if (infinite) {
            r.level_counts.push_back(Count::infinite());
            r.count = Count::infinite();
            r.infinite_level = 2;
            return;
        }
        r.level_counts.push_back(Count(largest));
        r.count = Count(total);
    }

    if (r.count.value() <= limits_.rep_limit) {
        for (const auto& a : level1_.representatives())
            for (const auto& c : fiber_for(a).reducer.representatives())
                r.reps.push_back(element_at(t, a, c));
        r.reps_complete = true;
    }
}

TwistedClassifier::Fiber TwistedClassifier::build_fiber(const IntVector& a) const
{
    const auto& t = action_.target;
    const LatticeElement base = element_at(t, a, zero_vector(t.rank(1)));
    std::vector<IntVector> columns;
    columns.reserve(fiber_words_.size());
    for (const auto& w : fiber_words_) {
        LatticeElement moved = apply_word(action_, w, Integer{1}, base);
        if (moved.levels[0] != a)
            throw std::logic_error("stabilizing word moved level 1");
        columns.push_back(std::move(moved.levels[1]));
    }
    IntMatrix gens = IntMatrix::from_columns(t.rank(1), columns);
    CosetReducer reducer(gens);
    return Fiber{std::move(gens), std::move(reducer)};
}

const TwistedClassifier::Fiber& TwistedClassifier::fiber_for(const IntVector& level1_rep) const
{
    if (uniform_fiber_)
        return *uniform_fiber_;
    auto it = fibers_.find(level1_rep);
    if (it == fibers_.end())
        throw std::logic_error("no fiber for level-1 representative " + to_string(level1_rep));
    return it->second;
}

void TwistedClassifier::require_finite() const
{
    if (result_.count.is_infinite())
        throw InfiniteClasses("R is infinite (level " +
                              std::to_string(result_.infinite_level.value_or(0)) +
                              "); classes have no finite labelling");
}

std::size_t TwistedClassifier::fiber_translation_rank() const
{
    const auto& t = action_.target;
    if (!has_central_rank(t))
        return 0;
    if (uniform_fiber_)
        return uniform_fiber_->reducer.hermite().rank();
    if (!fibers_.empty())
        return fibers_.at(zero_vector(t.rank(0))).reducer.hermite().rank();
    // level 1 infinite: fibers were never built
    return build_fiber(zero_vector(t.rank(0))).reducer.hermite().rank();
}

ClassLabel TwistedClassifier::label(const LatticeElement& u) const
{
    const auto& t = action_.target;
    check_shape(t, u);
    require_finite();

    ClassLabel out;
    CanonicalRep c1 = level1_.reduce(u.levels[0]);
    for (std::size_t j = 0; j < c1.witness.size(); ++j)
        if (c1.witness[j] != 0)
            out.witness.push_back({{{j, Integer{1}}}, -c1.witness[j]});
    LatticeElement cur = replay_witness(action_, out.witness, u);

    if (!has_central_rank(t)) {
        out.label = std::move(cur);
        return out;
    }
    const Fiber& fiber = fiber_for(c1.rep);
    CanonicalRep c2 = fiber.reducer.reduce(cur.levels[1]);
    for (std::size_t g = 0; g < c2.witness.size(); ++g)
        if (c2.witness[g] != 0)
            out.witness.push_back({fiber_words_[g], -c2.witness[g]});
    out.label = element_at(t, c1.rep, c2.rep);
    return out;
}

LatticeElement TwistedClassifier::label_only(const LatticeElement& u) const
{
    const auto& t = action_.target;
    check_shape(t, u);
    require_finite();
    CanonicalRep c1 = level1_.reduce(u.levels[0]);
    if (!has_central_rank(t))
        return element_at(t, c1.rep, {});
    LatticeElement cur = u;
    for (std::size_t j = 0; j < c1.witness.size(); ++j)
        if (c1.witness[j] != 0)
            cur = apply_move(action_, j, -c1.witness[j], cur);
    return element_at(t, c1.rep, fiber_for(c1.rep).reducer.reduce_rep(cur.levels[1]));
}

std::vector<LatticeElement> TwistedClassifier::label_all(std::span<const LatticeElement> elements) const
{
    require_finite();
    std::vector<LatticeElement> out(elements.size());
    const auto n = static_cast<std::int64_t>(elements.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        out[i] = label_only(elements[i]);
    return out;
}

std::vector<LatticeElement> TwistedClassifier::label_all_serial(std::span<const LatticeElement> elements) const
{
    std::vector<LatticeElement> out;
    out.reserve(elements.size());
    for (const auto& e : elements)
        out.push_back(label_only(e));
    return out;
}

IntMatrix difference_map(const IntMatrix& f, const IntMatrix& g)
{
    if (f.rows() != g.rows() || f.cols() != g.cols())
        throw DimensionError("difference of a " + std::to_string(g.rows()) + "x" +
                             std::to_string(g.cols()) + " and a " + std::to_string(f.rows()) + "x" +
                             std::to_string(f.cols()) + " matrix");
    return g - f;
}

CoincidenceReport make_report(ReidemeisterResult r, SourceKind source)
{
    CoincidenceReport rep;
    rep.source = source;
    const bool finite = r.is_finite();
    if (!finite) {
        rep.nielsen = Integer{0};
        rep.deformable = Deformable::yes;
        rep.rationale = source == SourceKind::lattice ? Rationale::eq_thm : Rationale::infty_thm;
    } else {
        switch (source) {
        case SourceKind::lattice:
            rep.nielsen = r.count.value();
            rep.deformable = Deformable::no;
            rep.rationale = Rationale::eq_thm;
            break;
        case SourceKind::infra:
            rep.nielsen = r.count.value();
            rep.deformable = Deformable::no;
            rep.rationale = Rationale::infra_cor;
            break;
        case SourceKind::general:
            rep.nielsen = std::nullopt;
            rep.deformable = Deformable::unknown;
            rep.rationale = Rationale::remark_gap;
            break;
        }
    }
    rep.reidemeister = std::move(r);
    return rep;
}

namespace {

void check_pair(const LatticeHomomorphism& phi, const LatticeHomomorphism& psi)
{
    if (!(phi.source == psi.source))
        throw ValidationError("map pair has different source lattices");
    if (!(phi.target == psi.target))
        throw ValidationError("map pair has different target lattices");
    require_valid(phi);
    require_valid(psi);
}

// Level matrices only: exact when level 1 is already infinite or when every
// level is square (equal-dimension towers).
ReidemeisterResult matrix_tier(const LatticeHomomorphism& phi,
                               const std::vector<Count>& cokernels)
{
    ReidemeisterResult r;
    r.difference_cokernels = cokernels;
    bool all_square = true;
    for (const auto& m : phi.levels)
        all_square = all_square && m.is_square();
    if (!all_square && cokernels[0].is_finite())
        throw UnsupportedClass("rectangular level maps into a class " +
                               std::to_string(phi.target.nilpotency_class()) +
                               " target need element arithmetic beyond class 2");
    Integer product{1};
    for (std::size_t l = 0; l < cokernels.size(); ++l) {
        r.level_counts.push_back(cokernels[l]);
        if (cokernels[l].is_infinite()) {
            r.count = Count::infinite();
            r.infinite_level = l + 1;
            return r;
        }
        product *= cokernels[l].value();
    }
    r.count = Count(product);
    return r;
}

} // namespace

CoincidenceReport coincidence_invariants(const LatticeHomomorphism& phi, const LatticeHomomorphism& psi,
                                         ClassifierLimits limits)
{
    check_pair(phi, psi);
    std::vector<Count> cokernels;
    for (std::size_t l = 0; l < phi.levels.size(); ++l)
        cokernels.push_back(cokernel(difference_map(phi.levels[l], psi.levels[l])).order);

    if (!phi.target.has_element_arithmetic())
        return make_report(matrix_tier(phi, cokernels), SourceKind::lattice);

    TwistedClassifier classifier(TwistedAction::from_homs(phi, psi), limits);
    ReidemeisterResult r = classifier.result();
    r.difference_cokernels = std::move(cokernels);
    return make_report(std::move(r), SourceKind::lattice);
}

CoincidenceReport coincidence_invariants_from_pairs(const GeneratorPairSystem& system,
                                                    ClassifierLimits limits)
{
    if (!system.target.has_element_arithmetic())
        throw UnsupportedClass("generator-pair input needs a class <= 2 target, got " +
                               system.target.describe());
    TwistedClassifier classifier(TwistedAction::from_pairs(system), limits);
    return make_report(classifier.result(), SourceKind::general);
}

ClassLabel label_class(const LatticeElement& u, const TwistedAction& action)
{
    return TwistedClassifier(action).label(u);
}

std::size_t fiber_deviation_rank(const LatticeHomomorphism& phi, const LatticeHomomorphism& psi,
                                 std::size_t level)
{
    check_pair(phi, psi);
    if (level == 0 || level > phi.levels.size())
        throw SchemaError("level " + std::to_string(level) + " outside 1.." +
                          std::to_string(phi.levels.size()));
    return rank(difference_map(phi.levels[level - 1], psi.levels[level - 1]));
}

std::size_t fiber_deviation_rank(const GeneratorPairSystem& system, std::size_t level)
{
    const auto& t = system.target;
    if (level == 0 || level > t.nilpotency_class())
        throw SchemaError("level " + std::to_string(level) + " outside 1.." +
                          std::to_string(t.nilpotency_class()));
    TwistedAction action = TwistedAction::from_pairs(system);
    if (level == 1)
        return rank(level1_differences(action));
    // level 2: translations over the identity class, built without the
    // finiteness short-circuit of the classifier
    const std::size_t n = action.movers.size();
    std::vector<Word> words;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            words.push_back({{i, 1}, {j, 1}, {i, -1}, {j, -1}});
    IntMatrix k = kernel_basis(level1_differences(action));
    for (std::size_t col = 0; col < k.cols(); ++col) {
        Word w;
        for (std::size_t j = 0; j < n; ++j)
            if (k(j, col) != 0)
                w.push_back({j, k(j, col)});
        words.push_back(std::move(w));
    }
    std::vector<IntVector> columns;
    const LatticeElement e = identity_element(t);
    for (const auto& w : words)
        columns.push_back(apply_word(action, w, Integer{1}, e).levels[1]);
    return rank(IntMatrix::from_columns(t.rank(1), columns));
}

WeckenDecision decide_wecken(const CoincidenceReport& report)
{
    const auto& r = report.reidemeister;
    if (!r.is_finite()) {
        if (report.source == SourceKind::lattice)
            return {Deformable::yes, Rationale::eq_thm,
                    "R is infinite, so N = 0 and the maps deform to be coincidence free"};
        return {Deformable::yes, Rationale::infty_thm,
                "R is infinite; the pair factors through a nilmanifold pair with infinite R and deforms "
                "to be coincidence free"};
    }
    switch (report.source) {
    case SourceKind::lattice:
        return {Deformable::no, Rationale::eq_thm,
                "R = " + r.count.to_string() + " is finite, so N = R > 0 and coincidences persist"};
    case SourceKind::infra:
        return {Deformable::no, Rationale::infra_cor,
                "finite R on an infra-nilmanifold domain gives N = R > 0"};
    case SourceKind::general:
        break;
    }
    return {Deformable::unknown, Rationale::remark_gap,
            "finite R does not decide deformability for a general source"};
}

} // namespace nilco
