// Verification reports and suites: JSON serialization of loops, matrices and
// verdicts, the per-loop check battery behind `analyze`, the built-in
// worked-example corpus, and the exhaustive property sweep.  All JSON uses
// sorted keys and decimal strings for big integers, so identical inputs
// produce byte-identical output.
#pragma once

#include "loopforge/circulant.hpp"
#include "loopforge/enumeration.hpp"
#include "loopforge/loop_matrices.hpp"

#include <json.hpp>

namespace loopforge {

using Json = nlohmann::json;

inline const char* version_string() { return "1.0.0"; }

enum class CheckVerdict { pass, fail, hypothesis_not_met };
const char* to_string(CheckVerdict v);

struct CheckResult {
    std::string name;
    CheckVerdict verdict = CheckVerdict::fail;
    Json witness;
};

struct VerificationReport {
    Json loop;
    std::vector<CheckResult> checks;
    std::string version = version_string();
    std::string generated;  // intentionally empty: reruns stay byte-identical

    bool all_ok() const;  // no check is "fail"
    Json to_json() const;
};

// ----- serialization -----

Json loop_to_json(const IntegralLoop& loop);
Json matrix_to_json(const IntMatrix& m);  // row-major nested arrays of decimal strings
Json matrix_to_json(const RatMatrix& m);
Json verdict_to_json(const TheoremVerdict& v);

// ----- analysis -----

// Runs every check on the given loop exactly as anchored.
VerificationReport analyze_loop(const IntegralLoop& loop);

// Finds the loop reached from n and anchors it at n when n is one of its odd
// members (determinants are rotation-sensitive); throws not_a_cycle_error
// when the search hits a limit without closing a cycle.
VerificationReport analyze(const Gamma& gamma, const Int& n,
                           const TrajectoryLimits& limits = {});

// ----- suites -----

struct SuiteRow {
    Int gamma;
    Int n;
    long rho = 0, nu = 0;
    Int det_m;
    Int det_r;
    std::string verdicts;  // "all_pass" or comma-joined failed/flagged checks
    bool ok = true;
};

struct SuiteResult {
    long checks_run = 0;
    long failures = 0;
    std::vector<std::string> failure_notes;
    std::vector<SuiteRow> rows;

    void merge(const SuiteResult& other);
};

// Determinant summary for one loop (the CSV row payload).
SuiteRow det_row(const IntegralLoop& loop);

// Every worked example built into the library, evaluated from scratch.
// inject_failure deliberately corrupts one expected value (negative control
// for the gate: the suite must then report a failure).
SuiteResult run_corpus(bool inject_failure = false);

// Property battery over every loop found for nu <= max_nu, rho <= max_rho
// (default gamma = 2^rho - 3^nu per family).
SuiteResult run_sweep(long max_rho, long max_nu, int jobs = 1);

std::string csv_header();
std::string to_csv_row(const SuiteRow& row);

}  // namespace loopforge
