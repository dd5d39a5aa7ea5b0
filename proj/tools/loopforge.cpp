// loopforge: trajectories, loop verification, enumeration and counting for
// the 3x+gamma map.  All output is deterministic: JSON keys are sorted, big
// integers print as decimal strings, and parallel sweeps are reassembled in
// a fixed order, so identical invocations are byte-identical.
#include "loopforge/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

namespace {

using namespace loopforge;

int default_jobs() {
    if (const char* env = std::getenv("LOOPFORGE_JOBS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != nullptr && *end == '\0' && v >= 1 && v <= 64) return static_cast<int>(v);
    }
    return 1;
}

// ----- traj -----

struct TrajOpts {
    std::string gamma, n;
    long steps = 16;
    bool chars = false;
    std::string format = "text";
};

int run_traj(const TrajOpts& opt) {
    const Gamma gamma(parse_int(opt.gamma));
    const Int n = parse_int(opt.n);
    const std::vector<Int> values = trajectory(gamma, n, opt.steps);
    std::vector<int> bits;
    if (opt.chars) bits = characteristic_trajectory(gamma, n, opt.steps);

    if (opt.format == "json") {
        Json j;
        j["gamma"] = to_dec(gamma.value);
        j["n"] = to_dec(n);
        j["steps"] = opt.steps;
        Json vals = Json::array();
        for (const Int& v : values) vals.push_back(to_dec(v));
        j["values"] = std::move(vals);
        if (opt.chars) j["chars"] = bits;
        std::cout << j.dump() << "\n";
        return 0;
    }
    for (size_t i = 0; i < values.size(); ++i)
        std::cout << (i ? " " : "") << to_dec(values[i]);
    std::cout << "\n";
    if (opt.chars) {
        for (size_t i = 0; i < bits.size(); ++i) std::cout << (i ? "," : "") << bits[i];
        std::cout << "\n";
    }
    return 0;
}

// ----- analyze -----

struct AnalyzeOpts {
    std::string gamma, n;
};

int run_analyze(const AnalyzeOpts& opt) {
    const VerificationReport rep = analyze(Gamma(parse_int(opt.gamma)), parse_int(opt.n));
    std::cout << rep.to_json().dump(2) << "\n";
    return rep.all_ok() ? 0 : 1;
}

// ----- enumerate -----

struct EnumerateOpts {
    long rho = 0, nu = 0;
    std::string gamma;  // empty: default 2^rho - 3^nu
    bool classes = false;
    std::string format = "json";
    int jobs = 1;
};

int run_enumerate(const EnumerateOpts& opt) {
    std::optional<Int> gamma;
    if (!opt.gamma.empty()) gamma = parse_int(opt.gamma);
    std::vector<IntegralLoop> loops = search_loops(opt.rho, opt.nu, gamma, opt.jobs);
    std::sort(loops.begin(), loops.end(), [](const IntegralLoop& a, const IntegralLoop& b) {
        if (a.start != b.start) return a.start < b.start;
        return a.m < b.m;
    });

    if (opt.format == "csv") {
        std::cout << csv_header() << "\n";
        for (const IntegralLoop& loop : loops) std::cout << to_csv_row(det_row(loop)) << "\n";
        return 0;
    }
    for (const IntegralLoop& loop : loops) std::cout << loop_to_json(loop).dump() << "\n";
    if (opt.classes) {
        const std::vector<std::vector<size_t>> classes = rotation_classes(loops);
        Json j;
        j["classes"] = classes.size();
        Json sizes = Json::array();
        for (const auto& cls : classes) sizes.push_back(cls.size());
        j["sizes"] = std::move(sizes);
        j["loops"] = loops.size();
        std::cout << j.dump() << "\n";
    }
    return 0;
}

// ----- verify -----

struct VerifyOpts {
    std::string suite = "all";
    long max_rho = 14, max_nu = 5;
    int jobs = 1;
    std::string format = "text";
    bool inject_failure = false;
};

int run_verify(const VerifyOpts& opt) {
    std::vector<std::pair<std::string, SuiteResult>> parts;
    if (opt.suite == "all" || opt.suite == "corpus")
        parts.emplace_back("corpus", run_corpus(opt.inject_failure));
    if (opt.suite == "all" || opt.suite == "sweep")
        parts.emplace_back("sweep", run_sweep(opt.max_rho, opt.max_nu, opt.jobs));

    SuiteResult total;
    for (const auto& [name, res] : parts) total.merge(res);

    if (opt.format == "json") {
        Json j;
        j["suite"] = opt.suite;
        j["checks_run"] = total.checks_run;
        j["failures"] = total.failures;
        j["failure_notes"] = total.failure_notes;
        Json rows = Json::array();
        for (const SuiteRow& row : total.rows) {
            Json r;
            r["gamma"] = to_dec(row.gamma);
            r["n"] = to_dec(row.n);
            r["rho"] = row.rho;
            r["nu"] = row.nu;
            r["detM"] = to_dec(row.det_m);
            r["detR"] = to_dec(row.det_r);
            r["verdicts"] = row.verdicts;
            rows.push_back(std::move(r));
        }
        j["rows"] = std::move(rows);
        j["version"] = version_string();
        std::cout << j.dump() << "\n";
    } else if (opt.format == "csv") {
        std::cout << csv_header() << "\n";
        for (const SuiteRow& row : total.rows) std::cout << to_csv_row(row) << "\n";
    } else {
        std::cout << "suite      checks  failures\n";
        for (const auto& [name, res] : parts)
            std::cout << name << std::string(11 - name.size(), ' ') << res.checks_run << "  "
                      << res.failures << "\n";
        std::cout << "total      " << total.checks_run << "  " << total.failures << "\n";
        for (const std::string& note : total.failure_notes) std::cout << "FAIL " << note << "\n";
    }
    return total.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact loop analysis for the 3x+gamma problem"};
    app.require_subcommand(1);
    const int env_jobs = default_jobs();

    TrajOpts traj;
    CLI::App* traj_cmd = app.add_subcommand("traj", "print a trajectory");
    traj_cmd->add_option("--gamma", traj.gamma, "odd positive gamma")->required();
    traj_cmd->add_option("--n", traj.n, "start value")->required();
    traj_cmd->add_option("--steps", traj.steps, "number of values to print")
        ->check(CLI::Range(0L, 1000000L));
    traj_cmd->add_flag("--chars", traj.chars, "also print the parity bits");
    traj_cmd->add_option("--format", traj.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    AnalyzeOpts analyze_opts;
    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "run every check on the loop reached from n");
    analyze_cmd->add_option("--gamma", analyze_opts.gamma, "odd positive gamma")->required();
    analyze_cmd->add_option("--n", analyze_opts.n, "start value")->required();

    EnumerateOpts enumerate;
    enumerate.jobs = env_jobs;
    CLI::App* enum_cmd =
        app.add_subcommand("enumerate", "search all loops for a (rho, nu) family");
    enum_cmd->add_option("--rho", enumerate.rho, "even-step count")
        ->required()
        ->check(CLI::Range(1L, 64L));
    enum_cmd->add_option("--nu", enumerate.nu, "odd-step count")
        ->required()
        ->check(CLI::Range(1L, 64L));
    enum_cmd->add_option("--gamma", enumerate.gamma, "gamma (default: 2^rho - 3^nu)");
    enum_cmd->add_flag("--classes", enumerate.classes, "append a rotation-class summary");
    enum_cmd->add_option("--format", enumerate.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    enum_cmd->add_option("--jobs", enumerate.jobs, "worker count")->check(CLI::Range(1, 64));

    VerifyOpts verify;
    verify.jobs = env_jobs;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the built-in suites");
    verify_cmd->add_option("--suite", verify.suite, "all, corpus or sweep")
        ->transform(CLI::Transformer(std::map<std::string, std::string>{
            {"paper-corpus", "corpus"}}))
        ->check(CLI::IsMember({"all", "corpus", "sweep"}));
    verify_cmd->add_option("--max-rho", verify.max_rho, "sweep bound on rho")
        ->check(CLI::Range(1L, 64L));
    verify_cmd->add_option("--max-nu", verify.max_nu, "sweep bound on nu")
        ->check(CLI::Range(1L, 12L));
    verify_cmd->add_option("--jobs", verify.jobs, "worker count")->check(CLI::Range(1, 64));
    verify_cmd->add_option("--format", verify.format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    verify_cmd->add_flag("--inject-failure", verify.inject_failure,
                         "corrupt one expected value (negative control)");

    long count_n = 1;
    CLI::App* count_cmd =
        app.add_subcommand("count", "count admissible parity patterns of length n");
    count_cmd->add_option("--n", count_n, "pattern length")
        ->required()
        ->check(CLI::Range(1L, 10000L));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (traj_cmd->parsed()) return run_traj(traj);
        if (analyze_cmd->parsed()) return run_analyze(analyze_opts);
        if (enum_cmd->parsed()) return run_enumerate(enumerate);
        if (verify_cmd->parsed()) return run_verify(verify);
        if (count_cmd->parsed()) {
            std::cout << to_dec(count_F(count_n)) << "\n";
            return 0;
        }
    } catch (const invalid_argument_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
