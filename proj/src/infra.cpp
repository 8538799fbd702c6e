#include "nilco/infra.hpp"

#include <map>

#include "nilco/errors.hpp"
#include "nilco/linalg.hpp"
#include "nilco/union_find.hpp"

namespace nilco {

namespace {

std::string dims(const IntMatrix& m)
{
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

bool shape_ok(const NilpotentLattice& g, const LatticeElement& u)
{
    try {
        check_shape(g, u);
        return true;
    } catch (const SchemaError&) {
        return false;
    }
}

} // namespace

std::vector<InfraViolation> validate_infra(const InfraStructure& infra)
{
    std::vector<InfraViolation> out;
    const auto& cover = infra.cover;
    if (infra.holonomy_order == 0)
        out.push_back({"holonomy order must be positive"});
    else if (infra.coset_actions.size() != infra.holonomy_order - 1)
        out.push_back({"expected " + std::to_string(infra.holonomy_order - 1) +
                       " coset actions for holonomy order " + std::to_string(infra.holonomy_order) +
                       ", got " + std::to_string(infra.coset_actions.size())});
    if (infra.map_images.size() != infra.coset_actions.size())
        out.push_back({"expected one map image pair per coset action, got " +
                       std::to_string(infra.map_images.size()) + " for " +
                       std::to_string(infra.coset_actions.size())});

    for (std::size_t x = 0; x < infra.coset_actions.size(); ++x) {
        const auto& act = infra.coset_actions[x];
        const std::string where = "coset action " + std::to_string(x + 1);
        if (act.a.size() != cover.nilpotency_class()) {
            out.push_back({where + ": expected " + std::to_string(cover.nilpotency_class()) +
                           " level matrices, got " + std::to_string(act.a.size())});
            continue;
        }
        bool shapes = true;
        for (std::size_t l = 0; l < act.a.size(); ++l) {
            const auto& m = act.a[l];
            const std::size_t r = cover.rank(l);
            if (m.rows() != r || m.cols() != r) {
                out.push_back({where + ", level " + std::to_string(l + 1) + ": expected " +
                               std::to_string(r) + "x" + std::to_string(r) + ", got " + dims(m)});
                shapes = false;
                continue;
            }
            Integer d = determinant(m);
            if (d != 1 && d != -1)
                out.push_back({where + ", level " + std::to_string(l + 1) + ": determinant " +
                               d.get_str() + " is not a unit"});
        }
        if (!shape_ok(cover, act.t)) {
            out.push_back({where + ": translation does not match the cover ranks"});
            continue;
        }
        if (shapes && act.a[0] * act.t.levels[0] != act.t.levels[0])
            out.push_back({where + ": level-1 action does not fix the translation " + act.t.to_string()});
    }
    return out;
}

std::vector<InfraViolation> validate_infra(const InfraStructure& infra, const LatticeHomomorphism& phi,
                                           const LatticeHomomorphism& psi)
{
    auto out = validate_infra(infra);
    if (!(phi.source == infra.cover) || !(psi.source == infra.cover))
        out.push_back({"cover maps must be defined on the cover lattice " + infra.cover.describe()});
    if (!(phi.target == psi.target)) {
        out.push_back({"cover maps have different targets"});
        return out;
    }
    for (const auto* h : {&phi, &psi})
        if (auto v = validate_hom(*h))
            out.push_back({(h == &phi ? "first cover map: " : "second cover map: ") + v->message});

    for (std::size_t x = 0; x < infra.map_images.size(); ++x) {
        const auto& img = infra.map_images[x];
        if (!shape_ok(phi.target, img.phi) || !shape_ok(phi.target, img.psi))
            out.push_back({"map image " + std::to_string(x + 1) + " does not match the target ranks"});
    }
    // f(x c x^-1) and f(c) agree in the abelianized target
    for (std::size_t x = 0; x < infra.coset_actions.size(); ++x) {
        const auto& a = infra.coset_actions[x].a;
        if (a.empty() || a[0].rows() != infra.cover.rank(0) || a[0].cols() != infra.cover.rank(0))
            continue;
        for (const auto* h : {&phi, &psi}) {
            if (h->levels.empty() || h->levels[0].cols() != a[0].rows())
                continue;
            if (h->levels[0] * a[0] != h->levels[0])
                out.push_back({std::string(h == &phi ? "first" : "second") +
                               " cover map is not invariant under coset action " + std::to_string(x + 1) +
                               " at level 1"});
        }
    }
    return out;
}

CoincidenceReport lift_pair(const InfraStructure& infra, const LatticeHomomorphism& phi,
                            const LatticeHomomorphism& psi, ClassifierLimits limits)
{
    if (!(phi.source == infra.cover) || !(psi.source == infra.cover))
        throw ValidationError("cover maps must be defined on the cover lattice " + infra.cover.describe());
    return coincidence_invariants(phi, psi, limits);
}

InfraReport decide_infra(const InfraStructure& infra, const LatticeHomomorphism& phi,
                         const LatticeHomomorphism& psi, InfraLimits limits)
{
    if (auto v = validate_infra(infra, phi, psi); !v.empty())
        throw ValidationError(v.front().message);

    InfraReport out;
    const auto& target = phi.target;
    if (!target.has_element_arithmetic()) {
        out.cover = lift_pair(infra, phi, psi, limits.classifier);
        const auto& r = out.cover.reidemeister;
        if (r.is_finite()) {
            // Each merged class holds between 1 and |F| cover classes.
            const Integer upper = r.count.value();
            Integer lower = upper + Integer(static_cast<unsigned long>(infra.holonomy_order)) - 1;
            lower /= static_cast<unsigned long>(infra.holonomy_order);
            out.exact = false;
            out.bounds = std::make_pair(lower, upper);
            ReidemeisterResult merged;
            merged.count = Count(upper);
            out.merged = make_report(std::move(merged), SourceKind::infra);
            out.merged.nielsen = std::nullopt;
        } else {
            out.merged = make_report(r, SourceKind::infra);
            out.merged.reidemeister.reps.clear();
        }
        return out;
    }

    ClassifierLimits cover_limits = limits.classifier;
    cover_limits.rep_limit = std::max(cover_limits.rep_limit, limits.max_cover_classes);
    TwistedClassifier classifier(TwistedAction::from_homs(phi, psi), cover_limits);
    {
        ReidemeisterResult r = classifier.result();
        for (std::size_t l = 0; l < phi.levels.size(); ++l)
            r.difference_cokernels.push_back(cokernel(difference_map(phi.levels[l], psi.levels[l])).order);
        if (r.reps.size() > limits.classifier.rep_limit) {
            r.reps.clear();
            r.reps_complete = false;
        }
        out.cover = make_report(std::move(r), SourceKind::lattice);
    }

    const auto& cr = classifier.result();
    if (!cr.is_finite()) {
        ReidemeisterResult merged;
        merged.count = Count::infinite();
        merged.infinite_level = cr.infinite_level;
        out.merged = make_report(std::move(merged), SourceKind::infra);
        return out;
    }
    if (!cr.reps_complete)
        throw BoundExceeded("R = " + cr.count.to_string() + " cover classes exceed the merge limit " +
                            std::to_string(limits.max_cover_classes));

    const auto& reps = cr.reps;
    std::map<LatticeElement, std::uint32_t> index;
    for (std::size_t i = 0; i < reps.size(); ++i)
        index.emplace(reps[i], static_cast<std::uint32_t>(i));

    const TwistedAction coset_moves{target, infra.map_images, SourceKind::infra};
    const auto n = static_cast<std::int64_t>(reps.size());
    std::vector<std::vector<std::uint32_t>> image(infra.map_images.size(), std::vector<std::uint32_t>(reps.size()));
    for (std::size_t x = 0; x < infra.map_images.size(); ++x) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            LatticeElement moved = apply_move(coset_moves, x, Integer{1}, reps[i]);
            image[x][i] = index.at(classifier.label_only(moved));
        }
    }

    UnionFind uf(reps.size());
    for (const auto& img : image)
        for (std::int64_t i = 0; i < n; ++i)
            uf.unite(static_cast<std::uint32_t>(i), img[i]);

    ReidemeisterResult merged;
    std::map<std::uint32_t, std::size_t> block_of_root;
    for (std::int64_t i = 0; i < n; ++i) {
        const std::uint32_t root = uf.find(static_cast<std::uint32_t>(i));
        auto [it, fresh] = block_of_root.emplace(root, out.block_sizes.size());
        if (fresh) {
            out.block_sizes.push_back(0);
            merged.reps.push_back(reps[root]);
        }
        ++out.block_sizes[it->second];
    }
    merged.count = Count(Integer(static_cast<unsigned long>(out.block_sizes.size())));
    merged.reps_complete = true;
    if (merged.reps.size() > limits.classifier.rep_limit) {
        merged.reps.clear();
        merged.reps_complete = false;
    }
    out.merged = make_report(std::move(merged), SourceKind::infra);
    return out;
}

} // namespace nilco
