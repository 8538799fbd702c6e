#include "nilco/twisted.hpp"

#include "nilco/errors.hpp"

namespace nilco {

TwistedAction TwistedAction::from_pairs(const GeneratorPairSystem& system)
{
    for (const auto& p : system.pairs) {
        check_shape(system.target, p.phi);
        check_shape(system.target, p.psi);
    }
    return TwistedAction{system.target, system.pairs, SourceKind::general};
}

TwistedAction TwistedAction::from_homs(const LatticeHomomorphism& phi, const LatticeHomomorphism& psi)
{
    if (!(phi.source == psi.source) || !(phi.target == psi.target))
        throw ValidationError("map pair must share source and target lattices");
    auto f = generator_images(phi);
    auto g = generator_images(psi);
    TwistedAction action{phi.target, {}, SourceKind::lattice};
    for (std::size_t i = 0; i < f.size(); ++i)
        action.movers.push_back({std::move(f[i]), std::move(g[i])});
    return action;
}

LatticeElement apply_move(const TwistedAction& action, std::size_t mover, const Integer& exponent,
                          const LatticeElement& u)
{
    if (mover >= action.movers.size())
        throw DimensionError("mover index out of range");
    const auto& t = action.target;
    const auto& m = action.movers[mover];
    LatticeElement left = power(m.psi, exponent, t);
    LatticeElement right = power(m.phi, -exponent, t);
    return multiply(multiply(left, u, t), right, t);
}

} // namespace nilco
