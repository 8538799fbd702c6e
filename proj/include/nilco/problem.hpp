#ifndef NILCO_PROBLEM_HPP
#define NILCO_PROBLEM_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilco/infra.hpp"
#include "nilco/lattice.hpp"
#include "nilco/oracle.hpp"
#include "nilco/reidemeister.hpp"

namespace nilco {

using Json = nlohmann::ordered_json;

enum class ProblemKind { torus, nilmanifold, pairs, infra };

std::string to_string(ProblemKind k);

struct Expected {
    std::optional<Count> r;
    // Decimal text, or "unknown".
    std::optional<std::string> n;
    std::optional<Deformable> deformable;
};

// One problem file. For torus and nilmanifold problems the source lattice
// defaults to the target; for infra problems `source` is the cover lattice.
struct Problem {
    std::string name;
    std::string description;
    ProblemKind kind = ProblemKind::torus;
    NilpotentLattice target;
    std::optional<NilpotentLattice> source;
    std::vector<IntMatrix> f;
    std::vector<IntMatrix> g;
    std::vector<MoverPair> pairs;
    std::optional<InfraStructure> infra;
    std::optional<Expected> expected;

    const NilpotentLattice& domain() const { return source ? *source : target; }
    // The two lattice maps of a torus, nilmanifold or infra problem.
    LatticeHomomorphism phi() const;
    LatticeHomomorphism psi() const;
};

// Shape errors throw DimensionError, other schema problems SchemaError, both
// naming the offending field as a JSON path.
Problem problem_from_json(const Json& j);
// Throws ParseError with line and column on malformed JSON.
Problem parse_problem_text(const std::string& text);
Problem parse_problem(const std::filesystem::path& path);

// Canonical form: fixed key order, lowercase kind, integers as numbers when
// they fit in 64 bits and as decimal strings otherwise.
Json problem_to_json(const Problem& p);

// Semantic validation beyond the schema (homomorphism and infra checks).
// Returns human readable violations; empty means valid.
std::vector<std::string> validate_problem(const Problem& p);

struct RunLimits {
    ClassifierLimits classifier;
    std::uint64_t max_cover_classes = 1'000'000;
};

struct RunOutput {
    CoincidenceReport report;
    std::optional<InfraReport> infra;
    WeckenDecision decision;
};

RunOutput run(const Problem& p, RunLimits limits = {});

// Machine readable report; deterministic for a given problem.
Json report_to_json(const Problem& p, const RunOutput& out);
std::string render_human(const Problem& p, const RunOutput& out);

// Mismatches between the expected block and a run; empty when it matches or
// when there is no expected block.
std::vector<std::string> check_expected(const Problem& p, const RunOutput& out);

// Twisted action of the full relation: the problem's movers, plus the coset
// moves for infra problems. Class <= 2 targets only.
TwistedAction problem_action(const Problem& p);

// Default oracle modulus: product of the finite level counts (at least 2).
std::int64_t default_modulus(const RunOutput& out);

std::string json_integer_text(const Json& j);
Json integer_to_json(const Integer& x);
Json count_to_json(const Count& c);

} // namespace nilco

#endif
