// End-to-end runs of the command-line tool: output formats, exit codes and
// byte-for-byte determinism across reruns and worker counts.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace {

struct CmdResult {
    int status = -1;
    std::string out;
};

CmdResult run_cmd(const std::string& args) {
    const std::string cmd = std::string(LOOPFORGE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int rc = pclose(pipe);
    CmdResult res;
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    res.out = std::move(out);
    return res;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> lines;
    size_t pos = 0;
    while (pos < s.size()) {
        const size_t nl = s.find('\n', pos);
        if (nl == std::string::npos) {
            lines.push_back(s.substr(pos));
            break;
        }
        lines.push_back(s.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

}  // namespace

// ----- traj -----

TEST_CASE("traj prints the orbit as plain text") {
    const CmdResult r = run_cmd("traj --gamma 1 --n 7 --steps 8");
    CHECK(r.status == 0);
    CHECK(r.out == "7 22 11 34 17 52 26 13\n");
    CHECK(run_cmd("traj --gamma 1 --n 1 --steps 3").out == "1 4 2\n");
}

TEST_CASE("traj appends parity bits on request") {
    const CmdResult r = run_cmd("traj --gamma 37 --n 23 --steps 9 --chars");
    CHECK(r.status == 0);
    const std::vector<std::string> lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "23 106 53 196 98 49 184 92 46");
    CHECK(lines[1] == "1,0,1,0,0,1,0,0,0");
}

TEST_CASE("traj json is valid and stable") {
    const CmdResult a = run_cmd("traj --gamma 37 --n 23 --steps 9 --chars --format json");
    const CmdResult b = run_cmd("traj --gamma 37 --n 23 --steps 9 --chars --format json");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    const nlohmann::json j = nlohmann::json::parse(a.out);
    CHECK(j["gamma"] == "37");
    CHECK(j["n"] == "23");
    CHECK(j["values"].size() == 9);
    CHECK(j["values"][0] == "23");
    CHECK(j["chars"].size() == 9);
}

// ----- analyze -----

TEST_CASE("analyze passes on the unit loop") {
    const CmdResult r = run_cmd("analyze --gamma 1 --n 1");
    CHECK(r.status == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["all_ok"] == true);
    CHECK(j["loop"]["gamma"] == "1");
    CHECK(j["loop"]["N"] == 3);
    CHECK(j["generated"] == "");
}

TEST_CASE("analyze reports the singularity criterion verdicts") {
    const CmdResult r = run_cmd("analyze --gamma 485 --n 19");
    CHECK(r.status == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    bool found = false;
    for (const auto& c : j["checks"]) {
        if (c["name"] == "singularity_criterion[p=5]") {
            found = true;
            CHECK(c["verdict"] == "pass");
            CHECK(c["witness"]["kind"] == "nonsingular_mod_p");
        }
    }
    CHECK(found);
}

TEST_CASE("analyze anchors at the requested member") {
    const CmdResult r = run_cmd("analyze --gamma 3367 --n 18611");
    CHECK(r.status == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["loop"]["start"] == "18611");
    bool found = false;
    for (const auto& c : j["checks"]) {
        if (c["name"] == "prime_power_singularity[p=37]") {
            found = true;
            CHECK(c["verdict"] == "pass");
            CHECK(c["witness"]["kind"] == "singular_mod_p");
        }
    }
    CHECK(found);
}

TEST_CASE("analyze reruns are byte-identical") {
    const CmdResult a = run_cmd("analyze --gamma 943 --n 133");
    const CmdResult b = run_cmd("analyze --gamma 943 --n 133");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
}

// ----- enumerate -----

TEST_CASE("enumerate emits one json line per loop plus a class summary") {
    const CmdResult r = run_cmd("enumerate --rho 9 --nu 4 --gamma 431 --classes");
    CHECK(r.status == 0);
    const std::vector<std::string> lines = lines_of(r.out);
    REQUIRE(lines.size() == 57);
    const nlohmann::json first = nlohmann::json::parse(lines[0]);
    CHECK(first["rho"] == 9);
    CHECK(first["nu"] == 4);
    const nlohmann::json summary = nlohmann::json::parse(lines.back());
    CHECK(summary["loops"] == 56);
    CHECK(summary["classes"] == 14);
    for (const auto& s : summary["sizes"]) CHECK(s == 4);
}

TEST_CASE("enumerate output is sorted and stable across worker counts") {
    const CmdResult one = run_cmd("enumerate --rho 9 --nu 4 --gamma 431 --jobs 1");
    const CmdResult three = run_cmd("enumerate --rho 9 --nu 4 --gamma 431 --jobs 3");
    CHECK(one.status == 0);
    CHECK(one.out == three.out);

    std::string prev_start;
    for (const std::string& line : lines_of(one.out)) {
        const nlohmann::json j = nlohmann::json::parse(line);
        const std::string start = j["start"];
        if (!prev_start.empty() && start.size() == prev_start.size())
            CHECK(start >= prev_start);  // equal-width decimal strings sort numerically
        prev_start = start;
    }
}

TEST_CASE("enumerate respects the jobs environment default") {
    const CmdResult env = run_cmd("enumerate --rho 6 --nu 3 --gamma 37");
    const std::string cmd = std::string("LOOPFORGE_JOBS=2 ") + LOOPFORGE_CLI_PATH +
                            " enumerate --rho 6 --nu 3 --gamma 37";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    pclose(pipe);
    CHECK(env.out == out);
    CHECK(lines_of(env.out).size() == 10);
}

TEST_CASE("enumerate exports csv") {
    const CmdResult r = run_cmd("enumerate --rho 6 --nu 3 --gamma 37 --format csv");
    CHECK(r.status == 0);
    const std::vector<std::string> lines = lines_of(r.out);
    REQUIRE(lines.size() == 11);
    CHECK(lines[0] == "gamma,n,rho,nu,detM,detR,verdicts");
    CHECK(lines[1].rfind("37,19,6,3,", 0) == 0);
}

// ----- verify -----

TEST_CASE("the corpus suite passes") {
    const CmdResult r = run_cmd("verify --suite corpus");
    CHECK(r.status == 0);
    CHECK(r.out.find("corpus") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("the corpus suite accepts its legacy alias") {
    const CmdResult a = run_cmd("verify --suite paper-corpus --format json");
    const CmdResult b = run_cmd("verify --suite corpus --format json");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("an injected corruption turns the suite red") {
    const CmdResult r = run_cmd("verify --suite corpus --inject-failure");
    CHECK(r.status == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("a small sweep passes in json") {
    const CmdResult r = run_cmd("verify --suite sweep --max-rho 8 --max-nu 3 --format json");
    CHECK(r.status == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["failures"] == 0);
    CHECK(j["checks_run"].get<long>() > 0);
    CHECK(j["rows"].size() > 0);
}

TEST_CASE("verify csv rows carry both determinants") {
    const CmdResult r = run_cmd("verify --suite sweep --max-rho 6 --max-nu 2 --format csv");
    CHECK(r.status == 0);
    const std::vector<std::string> lines = lines_of(r.out);
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] == "gamma,n,rho,nu,detM,detR,verdicts");
    for (size_t i = 1; i < lines.size(); ++i)
        CHECK(lines[i].find("all_pass") != std::string::npos);
}

TEST_CASE("verify json reruns are byte-identical") {
    const CmdResult a = run_cmd("verify --suite corpus --format json");
    const CmdResult b = run_cmd("verify --suite corpus --format json");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
}

// ----- count -----

TEST_CASE("count prints the closed-form value") {
    CHECK(run_cmd("count --n 1").out == "1\n");
    CHECK(run_cmd("count --n 3").out == "4\n");
    CHECK(run_cmd("count --n 8").out == "810\n");
    CHECK(run_cmd("count --n 10").out == "9252\n");
}

// ----- exit codes -----

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cmd("").status == 2);
    CHECK(run_cmd("frobnicate").status == 2);
    CHECK(run_cmd("traj --gamma 1").status == 2);           // missing --n
    CHECK(run_cmd("traj --gamma 4 --n 7").status == 2);     // even gamma
    CHECK(run_cmd("traj --gamma abc --n 7").status == 2);   // not a number
    CHECK(run_cmd("enumerate --rho 0 --nu 1").status == 2);
    CHECK(run_cmd("verify --suite nonsense").status == 2);
    CHECK(run_cmd("count --n 0").status == 2);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cmd("--help").status == 0);
    CHECK(run_cmd("traj --help").status == 0);
}
