#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "perclab/errors.hpp"
#include "perclab/experiment.hpp"

using namespace perclab;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "perclab_tests" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("experiment parsing") {
    std::istringstream in(
        "# demo\n"
        "task estimate\n"
        "orientation oriented\n"
        "base path 8\n"
        "levels 0 6\n"
        "class-edge 3 4\n"
        "p 0.6\n"
        "q 0.5\n"
        "replicas 1000\n"
        "seed 99\n"
        "out demo\n");
    const ExperimentSpec spec = parse_experiment(in);
    CHECK(spec.task == "estimate");
    CHECK(spec.orientation == Orientation::oriented);
    CHECK(spec.base_kind == "path");
    CHECK(spec.base_n == 8);
    CHECK(spec.class_edges.size() == 1);
    CHECK(spec.q == std::vector<double>{0.5});
    CHECK(spec.seed == 99);

    SUBCASE("grid expansion") {
        std::istringstream grid("q-grid 0.1:0.9:0.1\n");
        const ExperimentSpec g = parse_experiment(grid);
        REQUIRE(g.q_grid.size() == 9);
        CHECK(g.q_grid.front() == doctest::Approx(0.1));
        CHECK(g.q_grid.back() == doctest::Approx(0.9));
    }
    SUBCASE("unknown keys are rejected") {
        std::istringstream bad("tusk pc\n");
        CHECK_THROWS_AS(parse_experiment(bad), ValidationError);
    }
}

TEST_CASE("estimate task is deterministic across thread counts") {
    const auto dir = fresh_dir("estimate");
    ExperimentSpec spec;
    spec.task = "estimate";
    spec.orientation = Orientation::unoriented;
    spec.base_kind = "path";
    spec.base_n = 6;
    spec.level_min = 0;
    spec.level_max = 6;
    spec.p = 0.55;
    spec.replicas = 20000;
    spec.seed = 31337;
    spec.out_prefix = "est";
    std::ostringstream log;
    spec.threads = 1;
    REQUIRE(run_experiment(spec, dir.string(), log) == 0);
    const std::string csv1 = slurp(dir / "est.csv");
    spec.threads = 2;
    REQUIRE(run_experiment(spec, dir.string(), log) == 0);
    const std::string csv2 = slurp(dir / "est.csv");
    CHECK(csv1 == csv2);
    CHECK(csv1.find("# perclab-csv v1 estimate") == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "est.json"));
    CHECK(j["replicas"] == 20000);
}

TEST_CASE("sample task round-trips through its dump") {
    const auto dir = fresh_dir("sample");
    ExperimentSpec spec;
    spec.task = "sample";
    spec.base_kind = "cycle";
    spec.base_n = 5;
    spec.level_min = 0;
    spec.level_max = 4;
    spec.p = 0.4;
    spec.seed = 7;
    spec.out_prefix = "cfg";
    std::ostringstream log;
    REQUIRE(run_experiment(spec, dir.string(), log) == 0);
    const std::string dump = slurp(dir / "cfg.config.txt");
    CHECK(dump.find(':') != std::string::npos);
    const auto j = nlohmann::json::parse(slurp(dir / "cfg.json"));
    CHECK(j["edge_count"].get<int>() == 5 * 5 + 4 * 5);
}

TEST_CASE("validation failures carry field-level messages") {
    ExperimentSpec spec;
    spec.task = "estimate";
    spec.base_kind = "path";
    spec.base_n = 4;
    spec.level_min = 0;
    spec.level_max = 3;
    spec.p = 0.5;
    spec.replicas = 100;
    std::ostringstream log;
    CHECK_THROWS_WITH_AS(run_experiment(spec, ".", log), doctest::Contains("seed"),
                         ValidationError);
    spec.seed = 1;
    spec.replicas.reset();
    CHECK_THROWS_WITH_AS(run_experiment(spec, ".", log), doctest::Contains("replicas"),
                         ValidationError);
}

TEST_CASE("couple-verify reports infeasible gaps with exit code 3") {
    const auto dir = fresh_dir("couple");
    ExperimentSpec spec;
    spec.task = "couple-verify";
    spec.orientation = Orientation::unoriented;
    spec.base_kind = "path";
    spec.base_n = 3;
    spec.level_min = 0;
    spec.level_max = 8;
    spec.class_vertices = {1};
    spec.block_center = 1;
    spec.block_radius = 0;
    spec.p = 0.2;
    spec.epsilon = 0.6;
    spec.q = {0.25};
    spec.q_second = {0.4};  // far too large a gap
    spec.samples = 10;
    spec.seed = 5;
    spec.out_prefix = "inf";
    std::ostringstream log;
    CHECK(run_experiment(spec, dir.string(), log) == 3);
    const auto j = nlohmann::json::parse(slurp(dir / "inf.json"));
    CHECK(j["status"] == "infeasible");

    SUBCASE("feasible gap verifies cleanly") {
        spec.q_second = {0.25};
        spec.samples = 50;
        spec.out_prefix = "ok";
        std::ostringstream log2;
        CHECK(run_experiment(spec, dir.string(), log2) == 0);
        const auto ok = nlohmann::json::parse(slurp(dir / "ok.json"));
        CHECK(ok["status"] == "ok");
        CHECK(ok["violations"] == 0);
        CHECK(std::filesystem::exists(dir / "ok.audit.jsonl"));
    }
}

TEST_CASE("counterexample task emits witnesses on the oriented block") {
    const auto dir = fresh_dir("counter");
    ExperimentSpec spec;
    spec.task = "counterexample";
    spec.orientation = Orientation::oriented;
    spec.base_kind = "path";
    spec.base_n = 5;
    spec.level_min = 0;
    spec.level_max = 6;
    spec.class_edges = {{1, 2}, {2, 3}};
    spec.block_center = 2;
    spec.block_radius = 1;
    spec.samples = 50000;
    spec.seed = 12;
    spec.out_prefix = "cx";
    std::ostringstream log;
    REQUIRE(run_experiment(spec, dir.string(), log) == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "cx.json"));
    CHECK(j["witness_count"] == 2);
}

TEST_CASE("oracle-verify task passes on a tiny instance") {
    const auto dir = fresh_dir("oracle");
    ExperimentSpec spec;
    spec.task = "oracle-verify";
    spec.base_kind = "path";
    spec.base_n = 3;
    spec.level_min = 0;
    spec.level_max = 2;
    spec.p = 0.45;
    spec.replicas = 50000;
    spec.seed = 2718;
    spec.out_prefix = "ov";
    std::ostringstream log;
    REQUIRE(run_experiment(spec, dir.string(), log) == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "ov.json"));
    CHECK(j["status"] == "ok");
}
