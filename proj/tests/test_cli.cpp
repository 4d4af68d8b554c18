// End-to-end checks of the command-line tool.  The binary path arrives via
// the SINRSCHED_CLI environment variable set by the test harness.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "sinrsched/io.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int status = -1;
    std::string output;
};

std::string cli_path() {
    const char* p = std::getenv("SINRSCHED_CLI");
    REQUIRE_MESSAGE(p != nullptr, "SINRSCHED_CLI must point at the binary");
    return p;
}

CliResult run_cli(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[512];
    while (fgets(buf, sizeof buf, pipe)) res.output += buf;
    const int rc = pclose(pipe);
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return res;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("sinrsched_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("cli: gen emits identical bytes for identical seeds") {
    TempDir dir;
    const std::string a = dir.file("a.txt"), b = dir.file("b.txt"), c = dir.file("c.txt");
    CHECK(run_cli("gen --nodes 40 --links 10 --seed 7 --out " + a).status == 0);
    CHECK(run_cli("gen --nodes 40 --links 10 --seed 7 --out " + b).status == 0);
    CHECK(run_cli("gen --nodes 40 --links 10 --seed 8 --out " + c).status == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) != slurp(c));
    const auto topo = sinrsched::load_topology(a);
    CHECK(topo.links().size() == 10);
}

TEST_CASE("cli: bounds prints the derived constants") {
    const auto res = run_cli("bounds");
    CHECK(res.status == 0);
    CHECK(res.output.find("phi_star = 8.41750841751e-05") != std::string::npos);
    CHECK(res.output.find("m_window(phi=8.41750841751e-05) = [2, 2]") != std::string::npos);
    CHECK(res.output.find("power_ceiling") != std::string::npos);

    // A separation value beyond the target empties the window.
    const auto wide = run_cli("bounds --phi 0.01");
    CHECK(wide.status == 0);
    CHECK(wide.output.find("m_window(phi=0.01) = empty") != std::string::npos);
}

TEST_CASE("cli: schedule then check round trip") {
    TempDir dir;
    const std::string topo = dir.file("topo.txt");
    REQUIRE(run_cli("gen --nodes 40 --links 10 --seed 3 --out " + topo).status == 0);

    std::ofstream wf(dir.file("w.txt"));
    for (int i = 0; i < 10; ++i) wf << i << " " << (i + 1) << "\n";
    wf.close();

    for (const std::string policy : {"adjustable", "fixed", "greedy", "weight"}) {
        const std::string sched = dir.file("sched_" + policy + ".txt");
        const auto s = run_cli("schedule --topology " + topo + " --weights " + dir.file("w.txt") +
                               " --policy " + policy + " --out " + sched);
        CHECK(s.status == 0);
        CHECK(s.output.find("scheduled") != std::string::npos);
        const auto chk = run_cli("check --topology " + topo + " --schedule " + sched);
        CHECK(chk.status == 0);
        CHECK(chk.output.find("feasible") != std::string::npos);
    }
}

TEST_CASE("cli: check rejects a clashing schedule") {
    TempDir dir;
    std::ofstream tf(dir.file("topo.txt"));
    tf << "nodes 3\nlinks 2\nr 1 5\n"
       << "N 0 0 0\nN 1 2 0\nN 2 0 2\n"
       << "L 0 0 1\nL 1 0 2\n";  // both links transmit from node 0
    tf.close();
    std::ofstream sf(dir.file("sched.txt"));
    sf << "0\n1\nP 0 10\nP 1 10\n";
    sf.close();
    const auto res = run_cli("check --topology " + dir.file("topo.txt") + " --schedule " +
                             dir.file("sched.txt"));
    CHECK(res.status == 1);
    CHECK(res.output.find("share a node") != std::string::npos);
    CHECK(res.output.find("infeasible") != std::string::npos);
}

TEST_CASE("cli: run writes a parsable trace of the full horizon") {
    TempDir dir;
    const std::string topo = dir.file("topo.txt");
    REQUIRE(run_cli("gen --nodes 20 --links 5 --seed 5 --out " + topo).status == 0);
    const std::string trace = dir.file("trace.csv");
    const auto res = run_cli("run --topology " + topo +
                             " --policy greedy --lambda 0.02 --horizon 2000 --seed 9 --out " +
                             trace);
    CHECK(res.status == 0);
    CHECK(res.output.find("verdict = ") != std::string::npos);
    CHECK(res.output.find("final_backlog = ") != std::string::npos);

    std::ifstream f(trace);
    const auto parsed = sinrsched::parse_trace_csv(f);
    CHECK(parsed.total_backlog.size() == 2000);

    // Same seed reproduces the same trace bytes.
    const std::string trace2 = dir.file("trace2.csv");
    REQUIRE(run_cli("run --topology " + topo +
                    " --policy greedy --lambda 0.02 --horizon 2000 --seed 9 --out " + trace2)
                .status == 0);
    CHECK(slurp(trace) == slurp(trace2));
}

TEST_CASE("cli: sweep reports per-point verdicts and the boundary") {
    TempDir dir;
    const std::string topo = dir.file("topo.txt");
    REQUIRE(run_cli("gen --nodes 20 --links 5 --seed 5 --out " + topo).status == 0);
    const auto res = run_cli("sweep --topology " + topo +
                             " --policy greedy --lambda-min 0 --lambda-max 0.04 "
                             "--lambda-step 0.04 --horizon 2000 --out " +
                             dir.file("sweep.csv"));
    CHECK(res.status == 0);
    CHECK(res.output.find("lambda=0 ") != std::string::npos);
    CHECK(res.output.find("max_stable_lambda = ") != std::string::npos);
    const std::string csv = slurp(dir.file("sweep.csv"));
    CHECK(csv.rfind("lambda,verdict,slope,final_backlog\n", 0) == 0);
}

TEST_CASE("cli: bad inputs fail with a diagnostic") {
    TempDir dir;
    const auto missing = run_cli("run --topology " + dir.file("nope.txt") + " --lambda 0.1");
    CHECK(missing.status == 1);
    CHECK(missing.output.find("error:") != std::string::npos);

    const auto unknown = run_cli("frobnicate");
    CHECK(unknown.status != 0);

    std::ofstream tf(dir.file("bad.txt"));
    tf << "nodes 1\nlinks 0\nr 1 5\nN 0 zero 0\n";
    tf.close();
    const auto bad = run_cli("check --topology " + dir.file("bad.txt") + " --schedule " +
                             dir.file("bad.txt"));
    CHECK(bad.status == 1);
    CHECK(bad.output.find("line 4") != std::string::npos);
}
