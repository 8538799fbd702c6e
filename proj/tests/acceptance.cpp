// Acceptance gate: one PASS/FAIL line per criterion. Every check is exact;
// the only numeric limits are the wall-clock budgets pinned below.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "generators.hpp"
#include "nilco/errors.hpp"
#include "nilco/finite_group.hpp"
#include "nilco/linalg.hpp"
#include "nilco/oracle.hpp"
#include "nilco/problem.hpp"
#include "nilco/union_find.hpp"

using namespace nilco;
using namespace nilco::testing;
namespace fs = std::filesystem;

namespace {

// Wall-clock budgets in seconds.
constexpr double budget_surface = 1.0;
constexpr double budget_equivalence = 60.0;
constexpr double budget_cokernel = 120.0;
constexpr double budget_heisenberg = 30.0;
constexpr double budget_infra = 30.0;
constexpr double budget_redundancy = 30.0;
constexpr double budget_invariants = 120.0;

// Sample sizes.
constexpr int equivalence_problems = 500;
constexpr int cokernel_matrices = 200;
constexpr int heisenberg_samples = 200;
constexpr int infra_problems = 100;
constexpr int redundancy_problems = 100;

// Largest finite quotient the oracles enumerate here.
constexpr std::uint64_t oracle_cap = 10'000'000;

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Collects failures with the first few messages kept for the report.
struct Checker {
    int checks = 0;
    int failures = 0;
    std::string first;

    void expect(bool cond, const std::string& what)
    {
        ++checks;
        if (!cond) {
            if (failures == 0)
                first = what;
            ++failures;
        }
    }
    Outcome outcome(const std::string& summary) const
    {
        if (failures == 0)
            return {true, summary};
        return {false, std::to_string(failures) + "/" + std::to_string(checks) + " checks failed; first: " + first};
    }
};

std::string str(const Count& c) { return c.to_string(); }

std::uint64_t pow_bounded(std::int64_t m, std::size_t dim)
{
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        if (order > oracle_cap / static_cast<std::uint64_t>(m))
            return oracle_cap + 1;
        order *= static_cast<std::uint64_t>(m);
    }
    return order;
}

// Modulus at which the quotient count equals R (class <= 2).
std::int64_t safe_modulus(const ReidemeisterResult& r)
{
    Integer m = r.level_counts[0].value();
    if (r.level_counts.size() > 1) {
        Integer l{1};
        if (r.fiber_counts.empty())
            l = r.level_counts[1].value();
        for (const auto& f : r.fiber_counts)
            l = lcm(l, f.value());
        m *= 2 * l;
    }
    if (m < 2)
        m = 2;
    return fits_int64(m) ? to_int64(m) : 0;
}

Outcome surface_times_sphere(const fs::path& dir)
{
    const Problem p = parse_problem(dir / "surface-times-sphere.json");
    Checker c;
    c.expect(p.kind == ProblemKind::pairs && p.target.rank(0) == 4, "fixture is a rank-4 pairs problem");
    const RunOutput out = run(p);
    c.expect(out.report.reidemeister.count == Count(Integer(1)), "R = " + str(out.report.reidemeister.count));
    c.expect(out.decision.decision == Deformable::unknown, "deformable = " + to_string(out.decision.decision));
    c.expect(out.decision.rationale == Rationale::remark_gap, "rationale");
    return c.outcome("R=1, deformable=UNKNOWN");
}

Outcome equivalence()
{
    Rng rng(2024);
    Checker c;
    int infinite = 0;
    int square = 0;
    int oracle_checked = 0;
    const std::vector<LatticeFamily> families{LatticeFamily::torus_square, LatticeFamily::torus_rect,
                                              LatticeFamily::heisenberg, LatticeFamily::free3,
                                              LatticeFamily::heisenberg_product};
    for (int i = 0; i < equivalence_problems; ++i) {
        const auto family = families[static_cast<std::size_t>(i) % families.size()];
        auto [phi, psi] = random_map_pair(rng, family, -5, 5);
        const auto rep = coincidence_invariants(phi, psi);
        const auto& r = rep.reidemeister;
        const auto d = decide_wecken(rep);
        const std::string tag = "problem " + std::to_string(i);
        c.expect(rep.nielsen.has_value(), tag + ": N missing");
        if (!rep.nielsen)
            continue;
        const bool n_zero = *rep.nielsen == 0;
        c.expect(n_zero == r.count.is_infinite(), tag + ": N=0 <=> R infinite");
        if (!n_zero)
            c.expect(*rep.nielsen == r.count.value(), tag + ": N = R");
        c.expect((d.decision == Deformable::yes) == r.count.is_infinite(), tag + ": deformable <=> R infinite");
        infinite += r.count.is_infinite() ? 1 : 0;

        bool all_square = true;
        for (const auto& m : phi.levels)
            all_square = all_square && m.is_square();
        if (all_square) {
            ++square;
            Integer det_product{1};
            Integer snf_product{1};
            bool snf_infinite = false;
            for (std::size_t l = 0; l < phi.levels.size(); ++l) {
                det_product *= abs(determinant(psi.levels[l] - phi.levels[l]));
                const auto co = cokernel(psi.levels[l] - phi.levels[l]).order;
                if (co.is_infinite())
                    snf_infinite = true;
                else
                    snf_product *= co.value();
            }
            c.expect(snf_infinite == (det_product == 0), tag + ": SNF and determinant disagree on singularity");
            if (det_product != 0) {
                c.expect(r.count.is_finite() && r.count.value() == det_product,
                         tag + ": R = " + str(r.count) + " but determinant product " + det_product.get_str());
                c.expect(snf_product == det_product, tag + ": SNF cokernel product");
            } else {
                c.expect(r.count.is_infinite(), tag + ": singular level but R finite");
            }
        }
        // independent brute force where the quotient is small enough
        if (r.is_finite()) {
            const auto m = safe_modulus(r);
            if (m > 0 && pow_bounded(m, phi.target.dimension()) <= 200'000) {
                const auto orbits = oracle::quotient_orbits(TwistedAction::from_homs(phi, psi), m, oracle_cap);
                c.expect(Integer(static_cast<unsigned long>(orbits.count)) == r.count.value(),
                         tag + ": oracle " + std::to_string(orbits.count) + " vs R " + str(r.count));
                ++oracle_checked;
            }
        }
    }
    std::ostringstream s;
    s << equivalence_problems << " problems (" << infinite << " infinite, " << square << " square-level, "
      << oracle_checked << " oracle-checked)";
    return c.outcome(s.str());
}

Outcome cokernel_equivalence()
{
    Rng rng(7);
    Checker c;
    int done = 0;
    Integer largest{0};
    std::array<int, 4> per_n{};
    while (done < cokernel_matrices) {
        const auto n = static_cast<std::size_t>(1 + done % 3);
        // keep m^n within the enumeration cap
        const long det_cap = n == 1 ? 10'000 : (n == 2 ? 3'000 : 200);
        const long spread = n == 1 ? 10'000 : (n == 2 ? 50 : 6);
        IntMatrix a = random_matrix(rng, n, n, -spread, spread);
        const Integer d = abs(determinant(a));
        if (d == 0 || d > det_cap)
            continue;
        const auto snf = cokernel(a).order;
        const auto orbits = oracle::cokernel_oracle(a, 10'000, oracle_cap);
        c.expect(snf.is_finite() && snf.value() == orbits,
                 "A = " + a.to_string() + ": SNF " + str(snf) + " vs orbits " + orbits.get_str());
        largest = std::max(largest, d);
        ++per_n[n];
        ++done;
    }
    std::ostringstream s;
    s << done << " matrices (n=1: " << per_n[1] << ", n=2: " << per_n[2] << ", n=3: " << per_n[3]
      << "), largest |det| " << largest.get_str();
    return c.outcome(s.str());
}

Outcome heisenberg(const fs::path& dir)
{
    const Problem p = parse_problem(dir / "heisenberg-16.json");
    Checker c;
    const RunOutput out = run(p);
    const auto& r = out.report.reidemeister;
    c.expect(r.count == Count(Integer(16)), "R = " + str(r.count));
    c.expect(out.report.nielsen == Integer(16), "N");
    c.expect(out.decision.decision == Deformable::no, "deformable");

    TwistedClassifier cls(problem_action(p));
    const auto& act = cls.action();
    Rng rng(16);
    for (int i = 0; i < heisenberg_samples; ++i) {
        const auto u = random_element(rng, p.target, -1000, 1000);
        const auto lab = cls.label(u);
        c.expect(replay_witness(act, lab.witness, u) == lab.label, "witness replay for " + u.to_string());
        for (std::size_t j = 0; j < act.movers.size(); ++j)
            for (int e : {1, -1})
                c.expect(cls.label(apply_move(act, j, Integer(e), u)).label == lab.label,
                         "label not invariant under mover " + std::to_string(j));
    }
    std::set<LatticeElement> labels;
    for (long x = 0; x < 2; ++x)
        for (long y = 0; y < 2; ++y)
            for (long z = 0; z < 4; ++z)
                labels.insert(cls.label(make_element(p.target, {Integer(x), Integer(y)}, {Integer(z)})).label);
    c.expect(labels.size() == 16, "box labels: " + std::to_string(labels.size()));
    const auto orbits = oracle::quotient_orbits(act, 4);
    c.expect(orbits.count == 16, "orbits mod 4: " + std::to_string(orbits.count));
    return c.outcome("R=N=16, 200 sound labels, 16 box labels, 16 orbits mod 4");
}

// Orbits of the full Klein bottle relation on a window of Z; the window is
// wide enough that every class meeting [0, 8) closes up inside it.
std::size_t klein_enumeration(const Problem& p)
{
    const long lo = -200;
    const long hi = 200;
    std::vector<long> steps;
    const auto f = p.phi().levels[0];
    const auto g = p.psi().levels[0];
    // cover generators (a and b^2), then the coset representative b
    for (std::size_t j = 0; j < f.cols(); ++j)
        steps.push_back(to_int64(g(0, j) - f(0, j)));
    for (const auto& m : p.infra->map_images)
        steps.push_back(to_int64(m.psi.levels[0][0] - m.phi.levels[0][0]));
    UnionFind uf(static_cast<std::size_t>(hi - lo + 1));
    for (long u = lo; u <= hi; ++u)
        for (long s : steps)
            if (u + s >= lo && u + s <= hi)
                uf.unite(static_cast<std::uint32_t>(u - lo), static_cast<std::uint32_t>(u + s - lo));
    std::set<std::uint32_t> roots;
    for (long u = 0; u < 8; ++u)
        roots.insert(uf.find(static_cast<std::uint32_t>(u - lo)));
    return roots.size();
}

Outcome infra(const fs::path& dir)
{
    Checker c;
    const Problem p = parse_problem(dir / "klein-bottle-circle.json");
    const RunOutput out = run(p);
    c.expect(out.infra.has_value(), "infra report");
    if (!out.infra)
        return c.outcome("");
    c.expect(out.infra->cover.reidemeister.count == Count(Integer(4)),
             "cover R = " + str(out.infra->cover.reidemeister.count));
    c.expect(out.report.reidemeister.count == Count(Integer(2)), "R = " + str(out.report.reidemeister.count));
    c.expect(out.report.nielsen == Integer(2), "N");
    c.expect(out.decision.decision == Deformable::no, "deformable");
    const auto enumerated = klein_enumeration(p);
    c.expect(enumerated == 2, "enumeration on Z found " + std::to_string(enumerated) + " classes");

    Rng rng(27);
    int infinite = 0;
    int oracle_checked = 0;
    for (int i = 0; i < infra_problems; ++i) {
        const auto ip = random_infra(rng, i % 4 == 0 ? 2 : 1);
        const auto rep = decide_infra(ip.infra, ip.phi, ip.psi);
        const auto& rc = rep.cover.reidemeister.count;
        const auto& rm = rep.merged.reidemeister.count;
        const std::string tag = "infra problem " + std::to_string(i);
        c.expect(rc.is_infinite() == rm.is_infinite(), tag + ": cover and result disagree on finiteness");
        // independent finiteness: rank of all translations of the full relation
        std::vector<IntVector> cols;
        const auto diff = ip.psi.levels[0] - ip.phi.levels[0];
        for (std::size_t j = 0; j < diff.cols(); ++j)
            cols.push_back(diff.column(j));
        for (const auto& m : ip.infra.map_images)
            cols.push_back(sub(m.psi.levels[0], m.phi.levels[0]));
        const auto full = IntMatrix::from_columns(ip.phi.target.rank(0), cols);
        c.expect((rank(full) < full.rows()) == rm.is_infinite(), tag + ": full relation rank");
        if (rm.is_infinite()) {
            ++infinite;
            c.expect(rep.merged.deformable == Deformable::yes, tag + ": infinite but not deformable");
            continue;
        }
        c.expect(rm.value() <= rc.value() &&
                     rc.value() <= rm.value() * static_cast<unsigned long>(ip.infra.holonomy_order),
                 tag + ": merge bounds");
        Integer m{1};
        for (const auto& l : rep.cover.reidemeister.level_counts)
            m *= l.value();
        const std::int64_t mod = std::max<std::int64_t>(2, to_int64(m));
        if (pow_bounded(mod, ip.phi.target.dimension()) <= 1'000'000) {
            auto act = TwistedAction::from_homs(ip.phi, ip.psi);
            for (const auto& mi : ip.infra.map_images)
                act.movers.push_back(mi);
            const auto orbits = oracle::quotient_orbits(act, mod, oracle_cap);
            c.expect(Integer(static_cast<unsigned long>(orbits.count)) == rm.value(), tag + ": oracle count");
            ++oracle_checked;
        }
    }
    std::ostringstream s;
    s << "Klein R~=4, R=N=2, NO; " << infra_problems << " random infra problems (" << infinite << " infinite, "
      << oracle_checked << " oracle-checked)";
    return c.outcome(s.str());
}

Outcome redundancy()
{
    Rng rng(99);
    Checker c;
    int finite = 0;
    const std::vector<NilpotentLattice> targets{NilpotentLattice::torus(2), NilpotentLattice::torus(3),
                                                NilpotentLattice::heisenberg(), NilpotentLattice::free_two_step(3)};
    for (int i = 0; i < redundancy_problems; ++i) {
        const auto& target = targets[static_cast<std::size_t>(i) % targets.size()];
        const auto sys = random_pair_system(rng, target, static_cast<std::size_t>(uniform(rng, 1, 4)), -3, 3);
        const auto before = coincidence_invariants_from_pairs(sys);
        auto extended = sys;
        const int extra = static_cast<int>(uniform(rng, 1, 3));
        for (int k = 0; k < extra; ++k)
            extended.pairs.push_back(random_word_image(rng, sys, static_cast<std::size_t>(uniform(rng, 1, 6))));
        const auto after = coincidence_invariants_from_pairs(extended);
        const std::string tag = "pairs problem " + std::to_string(i);
        c.expect(before.reidemeister.count == after.reidemeister.count,
                 tag + ": R " + str(before.reidemeister.count) + " -> " + str(after.reidemeister.count));
        c.expect(before.nielsen == after.nielsen, tag + ": N changed");
        c.expect(before.deformable == after.deformable, tag + ": deformable changed");
        finite += before.reidemeister.is_finite() ? 1 : 0;
    }
    return c.outcome(std::to_string(redundancy_problems) + " problems (" + std::to_string(finite) + " finite)");
}

// The property suite; returns a digest of every computed value so two runs
// can be compared for determinism.
std::string invariant_suite(Checker& c, const fs::path& dir)
{
    std::ostringstream digest;
    Rng rng(4242);

    // Smith and Hermite contracts
    for (int i = 0; i < 150; ++i) {
        const auto rows = static_cast<std::size_t>(uniform(rng, 1, 4));
        const auto cols = static_cast<std::size_t>(uniform(rng, 1, 4));
        const auto a = random_matrix(rng, rows, cols, -8, 8);
        const auto s = smith_normal_form(a);
        c.expect(s.u * a * s.v == s.d, "SNF U A V = D");
        c.expect(abs(determinant(s.u)) == 1 && abs(determinant(s.v)) == 1, "SNF unimodular");
        for (std::size_t k = 0; k + 1 < s.invariant_factors.size(); ++k)
            c.expect(mpz_divisible_p(s.invariant_factors[k + 1].get_mpz_t(), s.invariant_factors[k].get_mpz_t()) != 0,
                     "SNF divisibility");
        const auto h = hermite_normal_form(a);
        c.expect(a * h.v == h.h && abs(determinant(h.v)) == 1, "HNF A V = H");
        const auto red = CosetReducer(a);
        const auto u = random_vector(rng, rows, -40, 40);
        const auto z = random_vector(rng, cols, -5, 5);
        const auto cr = red.reduce(u);
        c.expect(cr.rep == red.reduce_rep(add(u, a * z)), "coset invariance");
        c.expect(sub(u, cr.rep) == a * cr.witness, "coset witness");
        digest << to_string(s.invariant_factors) << to_string(cr.rep);
    }

    // homomorphy and associativity
    for (auto family : {LatticeFamily::heisenberg, LatticeFamily::free3, LatticeFamily::heisenberg_product}) {
        for (int i = 0; i < 30; ++i) {
            const auto [phi, psi] = random_map_pair(rng, family);
            c.expect(!validate_hom(phi) && !validate_hom(psi), "generated maps validate");
            const auto& s = phi.source;
            const auto x = random_element(rng, s, -9, 9);
            const auto y = random_element(rng, s, -9, 9);
            const auto w = random_element(rng, s, -9, 9);
            c.expect(apply_hom(phi, multiply(x, y, s)) == multiply(apply_hom(phi, x), apply_hom(phi, y), phi.target),
                     "apply_hom is multiplicative");
            c.expect(multiply(multiply(x, y, s), w, s) == multiply(x, multiply(y, w, s), s), "lattice associativity");
        }
    }
    {
        const auto h = NilpotentLattice::heisenberg();
        LatticeHomomorphism bad{h, h, {IntMatrix{{2, 0}, {0, 2}}, IntMatrix{{3}}}};
        c.expect(validate_hom(bad).has_value(), "bracket violation detected");
    }
    for (const auto& [lat, m] : std::vector<std::pair<NilpotentLattice, std::int64_t>>{
             {NilpotentLattice::heisenberg(), 4}, {NilpotentLattice::torus(3), 4}}) {
        const auto g = reduce_mod(lat, m);
        c.expect(g.is_associative_exhaustive(), "finite quotient associativity (exhaustive)");
    }
    {
        const auto g = reduce_mod(NilpotentLattice::heisenberg(), 16);
        c.expect(g.is_associative_on(g.generators()), "finite quotient associativity (Light)");
    }

    // labels, witnesses, serial/parallel agreement and the quotient oracle
    int compared = 0;
    const std::vector<NilpotentLattice> label_targets{NilpotentLattice::heisenberg(), NilpotentLattice::torus(2),
                                                      NilpotentLattice::free_two_step(3)};
    for (int i = 0; i < 90; ++i) {
        const auto& target = label_targets[static_cast<std::size_t>(i) % label_targets.size()];
        const auto sys = random_pair_system(rng, target, static_cast<std::size_t>(uniform(rng, 1, 3)), -3, 3);
        const TwistedClassifier cls(TwistedAction::from_pairs(sys));
        const auto& r = cls.result();
        digest << r.count.to_string() << ";";
        if (!r.is_finite())
            continue;
        std::vector<LatticeElement> xs;
        for (int k = 0; k < 20; ++k)
            xs.push_back(random_element(rng, target, -50, 50));
        c.expect(cls.label_all(xs) == cls.label_all_serial(xs), "parallel labels");
        for (const auto& x : xs) {
            const auto lab = cls.label(x);
            c.expect(replay_witness(cls.action(), lab.witness, x) == lab.label, "witness replay");
            for (std::size_t j = 0; j < sys.pairs.size(); ++j)
                c.expect(cls.label_only(apply_move(cls.action(), j, Integer(1), x)) == lab.label, "label soundness");
            digest << lab.label.to_string();
        }
        const auto m = safe_modulus(r);
        if (m > 0 && pow_bounded(m, target.dimension()) <= 2'000'000) {
            const auto g = reduce_mod(target, m, oracle_cap);
            std::vector<oracle::FiniteMover> movers;
            for (const auto& pr : sys.pairs)
                movers.emplace_back(g.project(pr.phi), g.project(pr.psi));
            const auto par = oracle::twisted_orbits_finite(g, movers);
            const auto ser = oracle::twisted_orbits_serial(g, movers);
            c.expect(par.block == ser.block, "parallel orbit partition");
            c.expect(Integer(static_cast<unsigned long>(par.count)) == r.count.value(), "oracle agreement");
            ++compared;
        }
    }
    c.expect(compared >= 20, "only " + std::to_string(compared) + " oracle comparisons");

    // merge bounds and order independence
    for (int i = 0; i < 40; ++i) {
        const auto ip = random_infra(rng, 2);
        const auto a = decide_infra(ip.infra, ip.phi, ip.psi);
        auto rev = ip;
        std::reverse(rev.infra.coset_actions.begin(), rev.infra.coset_actions.end());
        std::reverse(rev.infra.map_images.begin(), rev.infra.map_images.end());
        const auto b = decide_infra(rev.infra, rev.phi, rev.psi);
        c.expect(a.merged.reidemeister.count == b.merged.reidemeister.count, "merge order independence");
        if (a.merged.reidemeister.is_finite()) {
            const auto& rm = a.merged.reidemeister.count.value();
            const auto& rc = a.cover.reidemeister.count.value();
            c.expect(rm <= rc && rc <= rm * 4, "merge bounds");
        }
        digest << a.merged.reidemeister.count.to_string();
    }

    // fixtures: expected blocks and canonical round trip
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() != ".json")
            continue;
        const Problem p = parse_problem(e.path());
        const auto out = run(p);
        c.expect(check_expected(p, out).empty(), e.path().filename().string() + ": expected block");
        const auto canon = problem_to_json(p).dump();
        c.expect(problem_to_json(problem_from_json(Json::parse(canon))).dump() == canon, "round trip");
    }
    return digest.str();
}

Outcome invariants(const fs::path& dir)
{
    Checker c;
    const auto first = invariant_suite(c, dir);
    const auto second = invariant_suite(c, dir);
    c.expect(first == second, "second run produced different values");
    return c.outcome(std::to_string(c.checks) + " invariant checks over two identical runs");
}

} // namespace

int main(int argc, char** argv)
{
    const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path("fixtures");
    struct Criterion {
        int id;
        std::string name;
        double budget;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "surface times sphere fixture", budget_surface, [&] { return surface_times_sphere(dir); }},
        {2, "N=0 <=> R=infinite suite", budget_equivalence, equivalence},
        {3, "cokernel oracle equivalence", budget_cokernel, cokernel_equivalence},
        {4, "Heisenberg fixture", budget_heisenberg, [&] { return heisenberg(dir); }},
        {5, "Klein bottle and random infra", budget_infra, [&] { return infra(dir); }},
        {6, "generator redundancy", budget_redundancy, redundancy},
        {7, "invariant suite", budget_invariants, [&] { return invariants(dir); }},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = cr.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.ok && secs > cr.budget) {
            o.ok = false;
            o.detail += " (over the " + std::to_string(static_cast<int>(cr.budget)) + " s budget)";
        }
        failed += o.ok ? 0 : 1;
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.name << " [" << std::fixed
                  << std::setprecision(2) << secs << " s] " << o.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
