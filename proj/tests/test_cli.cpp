#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "ocam_cli_out.txt";
    const std::string cmd =
        std::string(OCAM_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(out);
    std::ostringstream ss;
    ss << in.rdbuf();
    return RunResult{WEXITSTATUS(rc), ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("ocam_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_scenario(const fs::path& path, std::uint64_t seed) {
    std::ofstream out(path);
    out << R"({"seed": )" << seed
        << R"(, "weeks": 70, "split_week": 36, "coupling_before": 0.9,)"
        << R"( "coupling_after": -0.9, "noise_scale": 0.05})";
}

}  // namespace

TEST_CASE("usage errors exit 1") {
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("analyze").exit_code == 1);                      // missing --config
    CHECK(run_cli("ingest --config /no/such/file.json").exit_code == 1);
    const auto unknown = run_cli("frobnicate");
    CHECK(unknown.exit_code == 1);
}

TEST_CASE("synth, ingest, analyze, report flow") {
    const auto dir = fresh_dir("flow");
    write_scenario(dir / "scenario.json", 2024);

    const auto synth = run_cli("synth --scenario " + (dir / "scenario.json").string() +
                               " --out " + dir.string());
    CHECK(synth.exit_code == 0);
    CHECK(synth.output.find("generated") != std::string::npos);

    const std::string config = (dir / "config.json").string();
    const auto ingest = run_cli("ingest --config " + config + " --store-dir " +
                                (dir / "store").string());
    CHECK(ingest.exit_code == 0);
    CHECK(ingest.output.find("rejected: 0") != std::string::npos);
    CHECK(fs::exists(dir / "store" / "commits.jsonl"));

    const auto analyze = run_cli("analyze --config " + config + " --store-dir " +
                                 (dir / "store").string() + " --output-dir " +
                                 (dir / "out").string() + " --format all");
    CHECK(analyze.exit_code == 0);
    CHECK(analyze.output.find("SYN1") != std::string::npos);
    CHECK(analyze.output.find("tau=") != std::string::npos);
    CHECK(fs::exists(dir / "out" / "report.json"));
    CHECK(fs::exists(dir / "out" / "kendall.csv"));
    CHECK(fs::exists(dir / "out" / "report.md"));

    SUBCASE("report re-renders from report.json") {
        const auto report = run_cli("report --report " +
                                    (dir / "out" / "report.json").string() +
                                    " --format markdown --out " + (dir / "render").string());
        CHECK(report.exit_code == 0);
        CHECK(fs::exists(dir / "render" / "report.md"));
    }

    SUBCASE("repeated ingest is deterministic") {
        const auto first = slurp(dir / "store" / "commits.jsonl");
        CHECK(run_cli("ingest --config " + config + " --store-dir " +
                      (dir / "store").string())
                  .exit_code == 0);
        CHECK(slurp(dir / "store" / "commits.jsonl") == first);
    }

    SUBCASE("no-segmentation flag yields a single full-series row") {
        const auto full = run_cli("analyze --config " + config + " --store-dir " +
                                  (dir / "store").string() + " --output-dir " +
                                  (dir / "out2").string() + " --no-segmentation");
        CHECK(full.exit_code == 0);
        CHECK(full.output.find("full series") != std::string::npos);
        const auto report = slurp(dir / "out2" / "report.json");
        CHECK(report.find("\"label\": \"full\"") != std::string::npos);
        CHECK(report.find("\"label\": \"before\"") == std::string::npos);
    }

    SUBCASE("analyze without a store names the missing file and exits 1") {
        const auto broken = run_cli("analyze --config " + config + " --store-dir " +
                                    (dir / "missing_store").string());
        CHECK(broken.exit_code == 1);
        CHECK(broken.output.find("missing_store") != std::string::npos);
    }
}

TEST_CASE("strict ingest exits 2 when records are rejected") {
    const auto dir = fresh_dir("strict");
    {
        std::ofstream commits(dir / "commits.jsonl");
        commits << R"({"hash":"h1","author_name":"A","author_email":"a@x.com",)"
                << R"("timestamp":"2020-01-06T10:00:00Z",)"
                << R"("files":[{"path":"src/A.java","additions":1,"deletions":0}]})"
                << "\n"
                << "broken json line\n";
    }
    {
        std::ofstream config(dir / "config.json");
        config << R"({
            "store_dir": ")" << (dir / "store").string() << R"(",
            "inputs": {"commits_jsonl": "commits.jsonl"},
            "components": [{"component_id": "C1",
                            "owner_timeline": [{"team_id": "t", "start": "2020-01-06"}]}]
        })";
    }
    const auto lenient = run_cli("ingest --config " + (dir / "config.json").string());
    CHECK(lenient.exit_code == 0);
    CHECK(lenient.output.find("rejected: 1") != std::string::npos);

    const auto strict =
        run_cli("ingest --config " + (dir / "config.json").string() + " --strict");
    CHECK(strict.exit_code == 2);
}

TEST_CASE("selftest prints one line per check and exits clean") {
    const auto result = run_cli("selftest");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("PASS kendall_matches_brute_force") != std::string::npos);
    CHECK(result.output.find("PASS week_anchor_2021_03_01_is_week_61") !=
          std::string::npos);
    CHECK(result.output.find("FAIL") == std::string::npos);
}

TEST_CASE("OCAM_LOG=quiet suppresses the summary") {
    const auto dir = fresh_dir("quiet");
    write_scenario(dir / "scenario.json", 7);
    REQUIRE(run_cli("synth --scenario " + (dir / "scenario.json").string() + " --out " +
                    dir.string())
                .exit_code == 0);
    const fs::path out = fs::temp_directory_path() / "ocam_cli_out.txt";
    const std::string cmd = std::string("OCAM_LOG=quiet ") + OCAM_CLI_PATH +
                            " ingest --config " + (dir / "config.json").string() +
                            " --store-dir " + (dir / "store").string() + " > " +
                            out.string() + " 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::ifstream in(out);
    std::ostringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().empty());
}
