// End-to-end checks driving the installed binary through a shell. The build
// passes the binary location via ENTBUNDLE_CLI_PATH and the bundled instance
// files via ENTBUNDLE_DATA_DIR.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr interleaved
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    std::string cmd = env_prefix + std::string(ENTBUNDLE_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe))
        res.output.append(buf.data(), got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string data_file(const std::string& name) {
    return std::string(ENTBUNDLE_DATA_DIR) + "/" + name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) : path("/tmp/entbundle_cli_" + tag) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("help and bad invocations") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("classify --help").exit_code == 0);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("classify").exit_code == 2);  // --instance is required
    CHECK(run_cli("classify --instance /does/not/exist.json").exit_code == 2);
}

TEST_CASE("classify worked example") {
    TempDir dir("classify_we");
    auto res = run_cli("classify --instance " + data_file("worked_example.json") +
                       " --out " + dir.path.string());
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("bundles (nontrivial): 2") != std::string::npos);
    CHECK(res.output.find("bipartitions: 3") != std::string::npos);
    CHECK(fs::exists(dir.path / "bundles.json"));
    CHECK(slurp(dir.path / "histogram.csv") == "bipartitions,bundles\n1,1\n2,1\n");

    // the polynomial engine has nothing to work on without an embedding
    auto forced = run_cli("classify --instance " + data_file("worked_example.json") +
                          " --engine poly --out " + dir.path.string());
    CHECK(forced.exit_code == 2);
}

TEST_CASE("classify showcase instance with both engines") {
    TempDir dir("classify_k5");
    auto res = run_cli("classify --instance " + data_file("k5_parity.json") +
                       " --out " + dir.path.string());
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("engines agree: yes") != std::string::npos);
    CHECK(slurp(dir.path / "histogram.csv") ==
          "bipartitions,bundles\n1,25\n4,20\n38,5\n216,1\n");

    // reruns are byte-identical
    TempDir dir2("classify_k5_again");
    run_cli("classify --instance " + data_file("k5_parity.json") + " --out " +
            dir2.path.string());
    CHECK(slurp(dir.path / "bundles.json") == slurp(dir2.path / "bundles.json"));
}

TEST_CASE("classify minor instance") {
    TempDir dir("classify_minor");
    auto res = run_cli("classify --instance " + data_file("minor_321.json") +
                       " --out " + dir.path.string());
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("engines agree: yes") != std::string::npos);
}

TEST_CASE("simulate writes the documented formats") {
    TempDir dir("simulate");
    auto res = run_cli("simulate --instance " + data_file("k5_parity.json") +
                       " --tf 0.05 --dt 0.0005 --samples 3 --sizes 1,2 --out " +
                       dir.path.string());
    CHECK(res.exit_code == 0);

    auto trace = slurp(dir.path / "trace.csv");
    CHECK(trace.rfind("time,bipartition_id,size_A,entropy,leakage\n", 0) == 0);
    // sizes 1 and 2 keep 10 + 45 canonical bipartitions, sampled three times
    std::size_t rows = 0;
    for (char ch : trace)
        if (ch == '\n') ++rows;
    CHECK(rows == 1 + 3 * 55);

    auto spectrum = slurp(dir.path / "spectrum.csv");
    CHECK(spectrum.rfind("time,bipartition_id,eigenvalue_rank,eigenvalue\n", 0) == 0);

    auto summary = slurp(dir.path / "summary.json");
    CHECK(summary.find("\"steps\": 100") != std::string::npos);
    CHECK(summary.find("\"projected\": true") != std::string::npos);

    // identical invocation, identical bytes
    TempDir dir2("simulate_again");
    run_cli("simulate --instance " + data_file("k5_parity.json") +
            " --tf 0.05 --dt 0.0005 --samples 3 --sizes 1,2 --out " + dir2.path.string());
    CHECK(slurp(dir2.path / "trace.csv") == trace);
    CHECK(slurp(dir2.path / "spectrum.csv") == spectrum);
    CHECK(slurp(dir2.path / "summary.json") == summary);
}

TEST_CASE("simulate honors the thread cap") {
    TempDir dir("simulate_threads");
    auto res = run_cli("simulate --instance " + data_file("k5_parity.json") +
                           " --tf 0.05 --dt 0.0005 --samples 2 --sizes 1 --out " +
                           dir.path.string(),
                       "ENTBUNDLE_THREADS=2 ");
    CHECK(res.exit_code == 0);
    auto parallel = slurp(dir.path / "trace.csv");

    // the serial run must produce the same bytes
    TempDir dir2("simulate_serial");
    auto res2 = run_cli("simulate --instance " + data_file("k5_parity.json") +
                            " --tf 0.05 --dt 0.0005 --samples 2 --sizes 1 --out " +
                            dir2.path.string(),
                        "ENTBUNDLE_THREADS=1 ");
    CHECK(res2.exit_code == 0);
    CHECK(slurp(dir2.path / "trace.csv") == parallel);

    auto bad = run_cli("simulate --instance " + data_file("k5_parity.json") +
                           " --tf 0.05 --out " + dir.path.string(),
                       "ENTBUNDLE_THREADS=stripes ");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("simulate input errors") {
    TempDir dir("simulate_bad");
    // a minor instance has no fields or schedule to anneal
    CHECK(run_cli("simulate --instance " + data_file("minor_321.json") + " --out " +
                  dir.path.string())
              .exit_code == 2);
    // an unstable step is an integration failure, not an input error
    auto res = run_cli("simulate --instance " + data_file("k5_parity.json") +
                       " --tf 10 --dt 0.9 --penalty 40 --out " + dir.path.string());
    CHECK(res.exit_code == 3);
    CHECK(res.output.find("dt") != std::string::npos);
}

TEST_CASE("verify runs clean and flags mutations") {
    auto res = run_cli("verify --seed 7");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"all_pass\": true") != std::string::npos);
    CHECK(res.output.find("\"seed\": 7") != std::string::npos);

    auto inst = run_cli("verify --instance " + data_file("minor_222.json"));
    CHECK(inst.exit_code == 0);
    CHECK(inst.output.find("\"all_pass\": true") != std::string::npos);
}

TEST_CASE("report pipeline on a short run") {
    TempDir dir("pipeline");
    REQUIRE(run_cli("classify --instance " + data_file("k5_parity.json") + " --out " +
                    dir.path.string())
                .exit_code == 0);
    REQUIRE(run_cli("simulate --instance " + data_file("k5_parity.json") +
                    " --tf 0.05 --dt 0.0005 --samples 2 --out " + dir.path.string())
                .exit_code == 0);
    auto res = run_cli("report --bundles " + (dir.path / "bundles.json").string() +
                       " --trace " + (dir.path / "trace.csv").string() + " --out " +
                       dir.path.string());
    CHECK(res.exit_code == 0);
    CHECK(fs::exists(dir.path / "report.json"));
    auto report = slurp(dir.path / "report.json");
    CHECK(report.find("\"radius\": 0.0001") != std::string::npos);
    CHECK(report.find("\"exact_match\"") != std::string::npos);

    // a report against mismatched inputs fails cleanly
    CHECK(run_cli("report --bundles " + (dir.path / "bundles.json").string() +
                  " --trace /does/not/exist.csv")
              .exit_code == 2);
}
