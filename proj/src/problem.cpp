#include "nilco/problem.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "nilco/errors.hpp"

namespace nilco {

std::string to_string(ProblemKind k)
{
    switch (k) {
    case ProblemKind::torus:
        return "torus";
    case ProblemKind::nilmanifold:
        return "nilmanifold";
    case ProblemKind::pairs:
        return "pairs";
    case ProblemKind::infra:
        return "infra";
    }
    return "torus";
}

namespace {

std::string lower(std::string s)
{
    for (auto& c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string idx(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

std::string field(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

const Json& require(const Json& obj, const std::string& path, const std::string& key)
{
    auto it = obj.find(key);
    if (it == obj.end())
        throw SchemaError(field(path, key) + ": missing required field");
    return *it;
}

void require_object(const Json& j, const std::string& path)
{
    if (!j.is_object())
        throw SchemaError((path.empty() ? "top level" : path) + ": expected an object");
}

void require_array(const Json& j, const std::string& path)
{
    if (!j.is_array())
        throw SchemaError(path + ": expected an array");
}

void allow_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> keys)
{
    for (const auto& [k, v] : obj.items()) {
        (void)v;
        if (std::none_of(keys.begin(), keys.end(), [&](const char* a) { return k == a; }))
            throw SchemaError(field(path, k) + ": unknown field");
    }
}

Integer parse_int(const Json& j, const std::string& path)
{
    if (j.is_number_unsigned())
        return Integer(std::to_string(j.get<std::uint64_t>()));
    if (j.is_number_integer())
        return Integer(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) {
        if (auto v = parse_integer(j.get<std::string>()))
            return *v;
        throw SchemaError(path + ": string is not a decimal integer");
    }
    if (j.is_number_float())
        throw SchemaError(path + ": expected an integer, got a non-integral number (write large values as decimal strings)");
    throw SchemaError(path + ": expected an integer");
}

std::size_t parse_size(const Json& j, const std::string& path)
{
    Integer v = parse_int(j, path);
    if (v < 0 || !fits_int64(v))
        throw SchemaError(path + ": expected a nonnegative size");
    return static_cast<std::size_t>(to_int64(v));
}

IntVector parse_vector(const Json& j, const std::string& path, std::size_t len)
{
    require_array(j, path);
    if (j.size() != len)
        throw DimensionError(path + ": expected " + std::to_string(len) + " entries, got " +
                             std::to_string(j.size()));
    IntVector v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(parse_int(j[i], idx(path, i)));
    return v;
}

IntMatrix parse_matrix(const Json& j, const std::string& path, std::size_t rows, std::size_t cols)
{
    require_array(j, path);
    std::size_t got_cols = cols;
    for (std::size_t r = 0; r < j.size(); ++r) {
        require_array(j[r], idx(path, r));
        if (r == 0)
            got_cols = j[r].size();
        else if (j[r].size() != got_cols)
            throw DimensionError(idx(path, r) + ": ragged matrix rows");
    }
    if (j.size() != rows || got_cols != cols)
        throw DimensionError(path + ": expected a " + std::to_string(rows) + "x" + std::to_string(cols) +
                             " matrix, got " + std::to_string(j.size()) + "x" + std::to_string(got_cols));
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = parse_int(j[r][c], idx(idx(path, r), c));
    return m;
}

NilpotentLattice parse_lattice(const Json& j, const std::string& path)
{
    require_object(j, path);
    allow_keys(j, path, {"class", "ranks", "brackets"});
    const std::size_t cls = parse_size(require(j, path, "class"), field(path, "class"));
    const Json& rj = require(j, path, "ranks");
    require_array(rj, field(path, "ranks"));
    std::vector<std::size_t> ranks;
    for (std::size_t i = 0; i < rj.size(); ++i)
        ranks.push_back(parse_size(rj[i], idx(field(path, "ranks"), i)));
    if (cls == 0 || ranks.size() != cls)
        throw DimensionError(field(path, "ranks") + ": class " + std::to_string(cls) + " needs " +
                             std::to_string(cls) + " ranks, got " + std::to_string(ranks.size()));
    std::vector<IntMatrix> brackets;
    if (auto it = j.find("brackets"); it != j.end()) {
        const std::string bp = field(path, "brackets");
        if (cls != 2)
            throw SchemaError(bp + ": brackets are only accepted for class 2");
        require_array(*it, bp);
        if (it->size() != ranks[1])
            throw DimensionError(bp + ": expected " + std::to_string(ranks[1]) + " bracket matrices, got " +
                                 std::to_string(it->size()));
        for (std::size_t k = 0; k < it->size(); ++k)
            brackets.push_back(parse_matrix((*it)[k], idx(bp, k), ranks[0], ranks[0]));
    } else if (cls == 2 && ranks[1] > 0) {
        throw SchemaError(field(path, "brackets") + ": missing required field for class 2");
    }
    try {
        return NilpotentLattice(std::move(ranks), std::move(brackets));
    } catch (const SchemaError& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

LatticeElement parse_element(const Json& j, const std::string& path, const NilpotentLattice& g)
{
    require_array(j, path);
    if (j.size() != g.nilpotency_class())
        throw DimensionError(path + ": expected " + std::to_string(g.nilpotency_class()) +
                             " levels, got " + std::to_string(j.size()));
    LatticeElement e;
    for (std::size_t l = 0; l < j.size(); ++l)
        e.levels.push_back(parse_vector(j[l], idx(path, l), g.rank(l)));
    return e;
}

std::vector<IntMatrix> parse_levels(const Json& j, const std::string& path, const NilpotentLattice& src,
                                    const NilpotentLattice& tgt)
{
    require_array(j, path);
    const std::size_t levels = std::max(src.nilpotency_class(), tgt.nilpotency_class());
    if (j.size() != levels)
        throw DimensionError(path + ": expected " + std::to_string(levels) + " level matrices, got " +
                             std::to_string(j.size()));
    std::vector<IntMatrix> out;
    for (std::size_t l = 0; l < levels; ++l)
        out.push_back(parse_matrix(j[l], idx(path, l), tgt.rank(l), src.rank(l)));
    return out;
}

MoverPair parse_pair(const Json& j, const std::string& path, const NilpotentLattice& g)
{
    require_array(j, path);
    if (j.size() != 2)
        throw DimensionError(path + ": expected a pair [phi, psi]");
    return {parse_element(j[0], idx(path, 0), g), parse_element(j[1], idx(path, 1), g)};
}

Count parse_count(const Json& j, const std::string& path)
{
    if (j.is_string() && lower(j.get<std::string>()) == "infinite")
        return Count::infinite();
    Integer v = parse_int(j, path);
    if (v < 0)
        throw SchemaError(path + ": counts are nonnegative");
    return Count(v);
}

Expected parse_expected(const Json& j, const std::string& path)
{
    require_object(j, path);
    allow_keys(j, path, {"R", "N", "deformable"});
    Expected e;
    if (auto it = j.find("R"); it != j.end())
        e.r = parse_count(*it, field(path, "R"));
    if (auto it = j.find("N"); it != j.end()) {
        if (it->is_string() && lower(it->get<std::string>()) == "unknown")
            e.n = "unknown";
        else
            e.n = parse_int(*it, field(path, "N")).get_str();
    }
    if (auto it = j.find("deformable"); it != j.end()) {
        if (!it->is_string())
            throw SchemaError(field(path, "deformable") + ": expected YES, NO or UNKNOWN");
        e.deformable = parse_deformable(it->get<std::string>());
        if (!e.deformable)
            throw SchemaError(field(path, "deformable") + ": expected YES, NO or UNKNOWN");
    }
    return e;
}

InfraStructure parse_infra(const Json& j, const std::string& path, const NilpotentLattice& cover,
                           const NilpotentLattice& target)
{
    require_object(j, path);
    allow_keys(j, path, {"holonomy_order", "coset_actions", "map_images"});
    InfraStructure s;
    s.cover = cover;
    s.holonomy_order = parse_size(require(j, path, "holonomy_order"), field(path, "holonomy_order"));
    const std::string ap = field(path, "coset_actions");
    const Json& acts = require(j, path, "coset_actions");
    require_array(acts, ap);
    for (std::size_t x = 0; x < acts.size(); ++x) {
        const std::string p = idx(ap, x);
        require_object(acts[x], p);
        allow_keys(acts[x], p, {"A", "t"});
        CosetAction act;
        act.a = parse_levels(require(acts[x], p, "A"), field(p, "A"), cover, cover);
        act.t = parse_element(require(acts[x], p, "t"), field(p, "t"), cover);
        s.coset_actions.push_back(std::move(act));
    }
    const std::string mp = field(path, "map_images");
    const Json& imgs = require(j, path, "map_images");
    require_array(imgs, mp);
    for (std::size_t x = 0; x < imgs.size(); ++x)
        s.map_images.push_back(parse_pair(imgs[x], idx(mp, x), target));
    return s;
}

} // namespace

LatticeHomomorphism Problem::phi() const { return LatticeHomomorphism{domain(), target, f}; }
LatticeHomomorphism Problem::psi() const { return LatticeHomomorphism{domain(), target, g}; }

Problem problem_from_json(const Json& j)
{
    require_object(j, "");
    allow_keys(j, "", {"name", "description", "kind", "target", "source", "F", "G", "pairs", "infra", "expected"});
    Problem p;
    if (auto it = j.find("name"); it != j.end()) {
        if (!it->is_string())
            throw SchemaError("name: expected a string");
        p.name = it->get<std::string>();
    }
    if (auto it = j.find("description"); it != j.end()) {
        if (!it->is_string())
            throw SchemaError("description: expected a string");
        p.description = it->get<std::string>();
    }
    const Json& kj = require(j, "", "kind");
    if (!kj.is_string())
        throw SchemaError("kind: expected a string");
    const std::string kind = lower(kj.get<std::string>());
    if (kind == "torus")
        p.kind = ProblemKind::torus;
    else if (kind == "nilmanifold")
        p.kind = ProblemKind::nilmanifold;
    else if (kind == "pairs")
        p.kind = ProblemKind::pairs;
    else if (kind == "infra")
        p.kind = ProblemKind::infra;
    else
        throw SchemaError("kind: expected torus, nilmanifold, pairs or infra, got '" + kj.get<std::string>() + "'");

    p.target = parse_lattice(require(j, "", "target"), "target");
    if (auto it = j.find("source"); it != j.end()) {
        if (p.kind == ProblemKind::pairs)
            throw SchemaError("source: not used by pairs problems");
        p.source = parse_lattice(*it, "source");
    } else if (p.kind == ProblemKind::infra) {
        throw SchemaError("source: missing required field (the cover lattice)");
    }
    if (p.kind == ProblemKind::torus &&
        (p.target.nilpotency_class() != 1 || p.domain().nilpotency_class() != 1))
        throw SchemaError("target: torus problems need class 1 lattices");

    const bool maps = p.kind != ProblemKind::pairs;
    for (const char* key : {"F", "G"}) {
        auto it = j.find(key);
        if (!maps) {
            if (it != j.end())
                throw SchemaError(std::string(key) + ": not used by pairs problems");
            continue;
        }
        if (it == j.end())
            throw SchemaError(std::string(key) + ": missing required field");
        (key[0] == 'F' ? p.f : p.g) = parse_levels(*it, key, p.domain(), p.target);
    }

    if (p.kind == ProblemKind::pairs) {
        const Json& pj = require(j, "", "pairs");
        require_array(pj, "pairs");
        for (std::size_t i = 0; i < pj.size(); ++i)
            p.pairs.push_back(parse_pair(pj[i], idx("pairs", i), p.target));
    } else if (j.contains("pairs")) {
        throw SchemaError("pairs: only used by pairs problems");
    }

    if (p.kind == ProblemKind::infra)
        p.infra = parse_infra(require(j, "", "infra"), "infra", p.domain(), p.target);
    else if (j.contains("infra"))
        throw SchemaError("infra: only used by infra problems");

    if (auto it = j.find("expected"); it != j.end())
        p.expected = parse_expected(*it, "expected");
    return p;
}

Problem parse_problem_text(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // locate the byte offset as line:column
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        if (auto pos = msg.find("syntax error"); pos != std::string::npos)
            msg = msg.substr(pos);
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
    }
    return problem_from_json(j);
}

Problem parse_problem(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_problem_text(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const DimensionError& e) {
        throw DimensionError(path.string() + ": " + e.what());
    } catch (const SchemaError& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

Json integer_to_json(const Integer& x)
{
    if (fits_int64(x))
        return Json(to_int64(x));
    return Json(x.get_str());
}

Json count_to_json(const Count& c)
{
    return c.is_infinite() ? Json("infinite") : integer_to_json(c.value());
}

std::string json_integer_text(const Json& j)
{
    return j.is_string() ? j.get<std::string>() : j.dump();
}

namespace {

Json vector_json(const IntVector& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(integer_to_json(x));
    return a;
}

Json matrix_json(const IntMatrix& m)
{
    Json a = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        a.push_back(vector_json(m.row(r)));
    return a;
}

Json element_json(const LatticeElement& e)
{
    Json a = Json::array();
    for (const auto& l : e.levels)
        a.push_back(vector_json(l));
    return a;
}

Json levels_json(const std::vector<IntMatrix>& ms)
{
    Json a = Json::array();
    for (const auto& m : ms)
        a.push_back(matrix_json(m));
    return a;
}

Json lattice_json(const NilpotentLattice& g)
{
    Json o;
    o["class"] = g.nilpotency_class();
    o["ranks"] = g.ranks();
    if (g.nilpotency_class() == 2 && g.rank(1) > 0)
        o["brackets"] = levels_json(g.brackets());
    return o;
}

Json pair_json(const MoverPair& p)
{
    return Json::array({element_json(p.phi), element_json(p.psi)});
}

Json counts_json(const std::vector<Count>& cs)
{
    Json a = Json::array();
    for (const auto& c : cs)
        a.push_back(count_to_json(c));
    return a;
}

Json nielsen_json(const std::optional<Integer>& n)
{
    return n ? integer_to_json(*n) : Json("unknown");
}

std::string nielsen_text(const std::optional<Integer>& n)
{
    return n ? n->get_str() : "unknown";
}

} // namespace

Json problem_to_json(const Problem& p)
{
    Json o;
    if (!p.name.empty())
        o["name"] = p.name;
    if (!p.description.empty())
        o["description"] = p.description;
    o["kind"] = to_string(p.kind);
    o["target"] = lattice_json(p.target);
    if (p.source)
        o["source"] = lattice_json(*p.source);
    if (p.kind == ProblemKind::pairs) {
        Json a = Json::array();
        for (const auto& pr : p.pairs)
            a.push_back(pair_json(pr));
        o["pairs"] = a;
    } else {
        o["F"] = levels_json(p.f);
        o["G"] = levels_json(p.g);
    }
    if (p.infra) {
        Json inf;
        inf["holonomy_order"] = p.infra->holonomy_order;
        Json acts = Json::array();
        for (const auto& act : p.infra->coset_actions) {
            Json a;
            a["A"] = levels_json(act.a);
            a["t"] = element_json(act.t);
            acts.push_back(a);
        }
        inf["coset_actions"] = acts;
        Json imgs = Json::array();
        for (const auto& pr : p.infra->map_images)
            imgs.push_back(pair_json(pr));
        inf["map_images"] = imgs;
        o["infra"] = inf;
    }
    if (p.expected) {
        Json e = Json::object();
        if (p.expected->r)
            e["R"] = count_to_json(*p.expected->r);
        if (p.expected->n) {
            if (*p.expected->n == "unknown")
                e["N"] = "unknown";
            else
                e["N"] = integer_to_json(Integer(*p.expected->n));
        }
        if (p.expected->deformable)
            e["deformable"] = to_string(*p.expected->deformable);
        o["expected"] = e;
    }
    return o;
}

std::vector<std::string> validate_problem(const Problem& p)
{
    std::vector<std::string> out;
    switch (p.kind) {
    case ProblemKind::torus:
    case ProblemKind::nilmanifold:
        if (auto v = validate_hom(p.phi()))
            out.push_back("F: " + v->message);
        if (auto v = validate_hom(p.psi()))
            out.push_back("G: " + v->message);
        break;
    case ProblemKind::pairs:
        if (p.pairs.empty())
            out.push_back("pairs: at least one generator pair is needed");
        break;
    case ProblemKind::infra:
        for (const auto& v : validate_infra(*p.infra, p.phi(), p.psi()))
            out.push_back(v.message);
        break;
    }
    return out;
}

RunOutput run(const Problem& p, RunLimits limits)
{
    if (auto v = validate_problem(p); !v.empty())
        throw ValidationError(v.front());
    RunOutput out;
    switch (p.kind) {
    case ProblemKind::torus:
    case ProblemKind::nilmanifold:
        out.report = coincidence_invariants(p.phi(), p.psi(), limits.classifier);
        break;
    case ProblemKind::pairs:
        out.report = coincidence_invariants_from_pairs(GeneratorPairSystem{p.target, p.pairs}, limits.classifier);
        break;
    case ProblemKind::infra: {
        InfraLimits il{limits.classifier, limits.max_cover_classes};
        out.infra = decide_infra(*p.infra, p.phi(), p.psi(), il);
        out.report = out.infra->merged;
        break;
    }
    }
    out.decision = decide_wecken(out.report);
    return out;
}

Json report_to_json(const Problem& p, const RunOutput& out)
{
    const auto& rep = out.report;
    const auto& r = rep.reidemeister;
    Json o;
    if (!p.name.empty())
        o["name"] = p.name;
    o["kind"] = to_string(p.kind);
    const bool inexact = out.infra && !out.infra->exact;
    o["R"] = inexact ? Json("unknown") : count_to_json(r.count);
    o["N"] = nielsen_json(rep.nielsen);
    o["deformable"] = to_string(out.decision.decision);
    o["rationale"] = to_string(out.decision.rationale);
    o["explanation"] = out.decision.explanation;
    if (!r.level_counts.empty())
        o["level_counts"] = counts_json(r.level_counts);
    if (!r.difference_cokernels.empty())
        o["difference_cokernels"] = counts_json(r.difference_cokernels);
    if (r.infinite_level)
        o["infinite_level"] = *r.infinite_level;
    if (!r.level_counts.empty())
        o["uniform_fibers"] = r.uniform_fibers;
    if (!r.fiber_counts.empty())
        o["fiber_counts"] = counts_json(r.fiber_counts);
    if (out.infra) {
        const auto& cr = out.infra->cover.reidemeister;
        Json c;
        c["R"] = count_to_json(cr.count);
        c["level_counts"] = counts_json(cr.level_counts);
        if (!cr.difference_cokernels.empty())
            c["difference_cokernels"] = counts_json(cr.difference_cokernels);
        o["cover"] = c;
        o["exact"] = out.infra->exact;
        if (out.infra->bounds)
            o["bounds"] = Json::array({integer_to_json(out.infra->bounds->first),
                                       integer_to_json(out.infra->bounds->second)});
        if (!out.infra->exact)
            o["flags"] = Json::array({"UNSUPPORTED-EXACT"});
        if (!out.infra->block_sizes.empty())
            o["block_sizes"] = out.infra->block_sizes;
    }
    if (r.reps_complete && !inexact) {
        Json reps = Json::array();
        for (const auto& e : r.reps)
            reps.push_back(element_json(e));
        o["representatives"] = reps;
    }
    return o;
}

std::string render_human(const Problem& p, const RunOutput& out)
{
    const auto& rep = out.report;
    const auto& r = rep.reidemeister;
    std::ostringstream s;
    s << "problem: " << (p.name.empty() ? "(unnamed)" : p.name) << " [" << to_string(p.kind) << "]\n";
    s << "target: " << p.target.describe() << "\n";
    const bool inexact = out.infra && !out.infra->exact;
    if (inexact)
        s << "R: between " << out.infra->bounds->first.get_str() << " and "
          << out.infra->bounds->second.get_str() << " (UNSUPPORTED-EXACT)\n";
    else
        s << "R: " << r.count.to_string() << "\n";
    s << "N: " << nielsen_text(rep.nielsen) << "\n";
    s << "deformable: " << to_string(out.decision.decision) << " (" << to_string(out.decision.rationale) << ")\n";
    s << "  " << out.decision.explanation << "\n";
    auto list = [](const std::vector<Count>& cs) {
        std::string t;
        for (std::size_t i = 0; i < cs.size(); ++i)
            t += (i ? ", " : "") + cs[i].to_string();
        return t;
    };
    if (!r.level_counts.empty())
        s << "level counts: " << list(r.level_counts) << (r.uniform_fibers ? "" : " (largest fiber)") << "\n";
    if (!r.difference_cokernels.empty())
        s << "difference cokernels: " << list(r.difference_cokernels) << "\n";
    if (!r.fiber_counts.empty())
        s << "fiber counts: " << list(r.fiber_counts) << "\n";
    if (out.infra) {
        const auto& cr = out.infra->cover.reidemeister;
        s << "cover R: " << cr.count.to_string();
        if (!cr.level_counts.empty())
            s << " (levels " << list(cr.level_counts) << ")";
        s << "\n";
    }
    if (r.reps_complete && !inexact) {
        constexpr std::size_t shown = 32;
        s << "classes:";
        for (std::size_t i = 0; i < r.reps.size() && i < shown; ++i)
            s << " " << r.reps[i].to_string();
        if (r.reps.size() > shown)
            s << " ... (" << r.reps.size() - shown << " more)";
        s << "\n";
    }
    return s.str();
}

std::vector<std::string> check_expected(const Problem& p, const RunOutput& out)
{
    std::vector<std::string> bad;
    if (!p.expected)
        return bad;
    const auto& e = *p.expected;
    const auto& rep = out.report;
    const bool inexact = out.infra && !out.infra->exact;
    if (e.r) {
        if (inexact)
            bad.push_back("R: expected " + e.r->to_string() + ", only bounds are available");
        else if (!(*e.r == rep.reidemeister.count))
            bad.push_back("R: expected " + e.r->to_string() + ", got " + rep.reidemeister.count.to_string());
    }
    if (e.n && *e.n != nielsen_text(rep.nielsen))
        bad.push_back("N: expected " + *e.n + ", got " + nielsen_text(rep.nielsen));
    if (e.deformable && *e.deformable != out.decision.decision)
        bad.push_back("deformable: expected " + to_string(*e.deformable) + ", got " +
                      to_string(out.decision.decision));
    return bad;
}

TwistedAction problem_action(const Problem& p)
{
    switch (p.kind) {
    case ProblemKind::pairs:
        return TwistedAction::from_pairs(GeneratorPairSystem{p.target, p.pairs});
    case ProblemKind::infra: {
        TwistedAction a = TwistedAction::from_homs(p.phi(), p.psi());
        for (const auto& m : p.infra->map_images)
            a.movers.push_back(m);
        a.source_kind = SourceKind::infra;
        return a;
    }
    default:
        return TwistedAction::from_homs(p.phi(), p.psi());
    }
}

std::int64_t default_modulus(const RunOutput& out)
{
    const auto& levels =
        out.infra ? out.infra->cover.reidemeister.level_counts : out.report.reidemeister.level_counts;
    Integer m{1};
    for (const auto& c : levels) {
        if (c.is_infinite())
            throw SchemaError("no default modulus for an infinite level count; pass --modulus");
        m *= c.value();
    }
    if (m < 2)
        m = 2;
    if (!fits_int64(m))
        throw BoundExceeded("default modulus " + m.get_str() + " is too large");
    return to_int64(m);
}

} // namespace nilco
