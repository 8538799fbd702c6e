// Serial reference kernels against their OpenMP versions.
// Usage: bench_kernels [repeats]

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>

#include <omp.h>

#include "nilco/finite_group.hpp"
#include "nilco/oracle.hpp"
#include "nilco/reidemeister.hpp"

using namespace nilco;

namespace {

template <class F>
double best_of(int repeats, F&& f)
{
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto start = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    return best;
}

void row(const std::string& kernel, const std::string& size, double serial, double parallel, bool agree)
{
    std::cout << std::left << std::setw(14) << kernel << std::setw(22) << size << std::right << std::fixed
              << std::setprecision(4) << std::setw(10) << serial << std::setw(10) << parallel << std::setw(9)
              << std::setprecision(2) << serial / parallel << "x" << (agree ? "" : "  MISMATCH") << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
    std::cout << "threads: " << omp_get_max_threads() << ", best of " << repeats << "\n\n";
    std::cout << std::left << std::setw(14) << "kernel" << std::setw(22) << "size" << std::right << std::setw(10)
              << "serial s" << std::setw(10) << "omp s" << std::setw(10) << "speedup" << '\n';
    bool all_agree = true;

    // orbit enumeration on Heisenberg quotients
    const auto h = NilpotentLattice::heisenberg();
    LatticeHomomorphism f{h, h, {IntMatrix{{2, 1}, {0, 3}}, IntMatrix{{6}}}};
    const auto g = LatticeHomomorphism::trivial(h, h);
    const auto action = TwistedAction::from_homs(f, g);
    for (std::int64_t m : {24, 48, 72}) {
        const auto q = reduce_mod(h, m, 10'000'000);
        std::vector<oracle::FiniteMover> movers;
        for (const auto& mv : action.movers)
            movers.emplace_back(q.project(mv.phi), q.project(mv.psi));
        oracle::OrbitPartition s;
        oracle::OrbitPartition p;
        const double ts = best_of(repeats, [&] { s = oracle::twisted_orbits_serial(q, movers); });
        const double tp = best_of(repeats, [&] { p = oracle::twisted_orbits_finite(q, movers); });
        const bool agree = s.block == p.block;
        all_agree = all_agree && agree;
        row("orbits", "H mod " + std::to_string(m) + " (" + std::to_string(q.order()) + ")", ts, tp, agree);
    }

    // batch labelling on the free two-step lattice of rank 3
    const auto n3 = NilpotentLattice::free_two_step(3);
    LatticeHomomorphism f3{n3, n3, {IntMatrix{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}, IntMatrix{{6, 0, 0}, {0, 10, 0}, {0, 0, 15}}}};
    const auto action3 = TwistedAction::from_homs(f3, LatticeHomomorphism::trivial(n3, n3));
    const TwistedClassifier cls(action3);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> coord(-1000, 1000);
    for (std::size_t n : {1'000u, 10'000u, 50'000u}) {
        std::vector<LatticeElement> xs;
        xs.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            xs.push_back(make_element(n3, {Integer(coord(rng)), Integer(coord(rng)), Integer(coord(rng))},
                                      {Integer(coord(rng)), Integer(coord(rng)), Integer(coord(rng))}));
        std::vector<LatticeElement> s;
        std::vector<LatticeElement> p;
        const double ts = best_of(repeats, [&] { s = cls.label_all_serial(xs); });
        const double tp = best_of(repeats, [&] { p = cls.label_all(xs); });
        const bool agree = s == p;
        all_agree = all_agree && agree;
        row("labels", std::to_string(n) + " elements", ts, tp, agree);
    }
    return all_agree ? 0 : 1;
}
