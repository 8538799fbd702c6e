// nilco: coincidence Reidemeister and Nielsen numbers for maps into nilmanifolds.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nilco/errors.hpp"
#include "nilco/oracle.hpp"
#include "nilco/problem.hpp"

namespace fs = std::filesystem;
using namespace nilco;

namespace {

struct Options {
    std::string output = "human";
    std::optional<std::uint64_t> max_order;
};

std::uint64_t oracle_cap(const Options& opt)
{
    if (opt.max_order)
        return *opt.max_order;
    if (const char* env = std::getenv("NILCO_MAX_ORDER")) {
        auto v = parse_integer(env);
        if (!v || *v <= 0 || !fits_int64(*v))
            throw Error(ExitCode::usage, std::string("NILCO_MAX_ORDER is not a positive integer: ") + env);
        return static_cast<std::uint64_t>(to_int64(*v));
    }
    return default_max_order;
}

void print(const Json& j, const std::string& human, const Options& opt)
{
    if (opt.output == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << human;
}

int cmd_compute(const std::string& file, const Options& opt)
{
    const Problem p = parse_problem(file);
    const RunOutput out = run(p);
    print(report_to_json(p, out), render_human(p, out), opt);
    if (out.infra && !out.infra->exact)
        return static_cast<int>(ExitCode::unsupported);
    return 0;
}

int cmd_validate(const std::string& file, const Options& opt)
{
    const Problem p = parse_problem(file);
    const auto violations = validate_problem(p);
    Json j;
    j["valid"] = violations.empty();
    j["violations"] = violations;
    std::string human = violations.empty() ? "ok\n" : "";
    for (const auto& v : violations)
        human += "violation: " + v + "\n";
    print(j, human, opt);
    return violations.empty() ? 0 : static_cast<int>(ExitCode::schema);
}

int cmd_oracle(const std::string& file, std::optional<std::int64_t> modulus, const Options& opt)
{
    const Problem p = parse_problem(file);
    if (auto v = validate_problem(p); !v.empty())
        throw ValidationError(v.front());
    const TwistedAction action = problem_action(p);
    std::optional<RunOutput> computed;
    try {
        computed = run(p);
    } catch (const UnsupportedClass&) {
    }
    std::int64_t m = 0;
    if (modulus)
        m = *modulus;
    else if (computed)
        m = default_modulus(*computed);
    else
        throw Error(ExitCode::usage, "pass --modulus; no default is available for this problem");

    const auto part = oracle::quotient_orbits(action, m, oracle_cap(opt));
    Json j;
    j["modulus"] = m;
    j["order"] = part.block.size();
    j["orbits"] = part.count;
    std::string human = "modulus " + std::to_string(m) + ": " + std::to_string(part.count) + " orbits on " +
                        std::to_string(part.block.size()) + " elements\n";
    if (computed && !(computed->infra && !computed->infra->exact)) {
        const auto& r = computed->report.reidemeister.count;
        j["R"] = count_to_json(r);
        const bool agree = r.is_finite() && r.value() == static_cast<unsigned long>(part.count);
        j["agrees"] = agree;
        human += "computed R: " + r.to_string() + (agree ? " (agrees)\n" : " (differs)\n");
    }
    print(j, human, opt);
    return 0;
}

int cmd_fixtures(const std::string& dir, bool check, const Options& opt)
{
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty())
        throw Error(ExitCode::usage, "no fixture files in " + dir);

    int failures = 0;
    Json results = Json::array();
    std::string human;
    for (const auto& f : files) {
        Json entry;
        entry["file"] = f.filename().string();
        std::vector<std::string> problems;
        try {
            const Problem p = parse_problem(f);
            const RunOutput out = run(p);
            if (check)
                problems = check_expected(p, out);
            entry["R"] = count_to_json(out.report.reidemeister.count);
        } catch (const std::exception& e) {
            problems.push_back(e.what());
        }
        const bool ok = problems.empty();
        failures += ok ? 0 : 1;
        entry["status"] = ok ? "PASS" : "FAIL";
        entry["problems"] = problems;
        results.push_back(entry);
        human += (ok ? "PASS " : "FAIL ") + f.filename().string() + "\n";
        for (const auto& m : problems)
            human += "  " + m + "\n";
    }
    human += std::to_string(files.size() - failures) + "/" + std::to_string(files.size()) + " fixtures passed\n";
    print(results, human, opt);
    return failures == 0 ? 0 : static_cast<int>(ExitCode::fixture_mismatch);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Coincidence Reidemeister and Nielsen numbers for maps into nilmanifolds"};
    app.require_subcommand(1);
    Options opt;
    std::uint64_t max_order = 0;
    app.add_option("--output", opt.output, "Report format")
        ->check(CLI::IsMember({"human", "json"}))
        ->capture_default_str();
    auto* max_opt = app.add_option("--max-order", max_order, "Largest finite group the oracle enumerates")
                        ->check(CLI::PositiveNumber);

    std::string file;
    auto* compute = app.add_subcommand("compute", "Compute R, N and the deformability decision");
    compute->add_option("file", file, "Problem file")->required();

    auto* validate = app.add_subcommand("validate", "Check a problem file without computing");
    validate->add_option("file", file, "Problem file")->required();

    std::int64_t modulus = 0;
    auto* oracle = app.add_subcommand("oracle", "Count twisted orbits on a finite quotient");
    oracle->add_option("file", file, "Problem file")->required();
    auto* mod_opt = oracle->add_option("--modulus,-m", modulus, "Quotient modulus (default: product of level counts)")
                        ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 31));

    std::string dir = "fixtures";
    bool check = false;
    auto* fixtures = app.add_subcommand("fixtures", "Run every fixture in a directory");
    fixtures->add_flag("--check", check, "Compare against each fixture's expected block");
    fixtures->add_option("--dir", dir, "Fixture directory")->capture_default_str();

    // global flags are accepted after the subcommand too
    for (auto* sub : {compute, validate, oracle, fixtures})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : static_cast<int>(ExitCode::usage);
    }
    if (*max_opt)
        opt.max_order = max_order;

    try {
        if (*compute)
            return cmd_compute(file, opt);
        if (*validate)
            return cmd_validate(file, opt);
        if (*oracle)
            return cmd_oracle(file, *mod_opt ? std::optional<std::int64_t>(modulus) : std::nullopt, opt);
        return cmd_fixtures(dir, check, opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::usage);
    }
}
