#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "perclab/ladder_window.hpp"

namespace perclab {

// Declarative experiment description; see the repository README for the file
// grammar. Seeds are mandatory so every artifact is replayable.
struct ExperimentSpec {
    std::string task;  // sample | estimate | pc | sweep | couple-verify | counterexample | oracle-verify
    Orientation orientation = Orientation::unoriented;

    // Base graph: generator or file.
    std::string base_kind;  // path | cycle | star | file
    int base_n = 0;
    int star_arms = 0, star_arm_length = 0;
    std::string base_file;

    std::optional<int> level_min, level_max;
    std::vector<std::pair<int, int>> class_edges;
    std::vector<int> class_vertices;

    std::optional<double> p;
    std::vector<double> q;
    std::vector<double> q_second;  // couple-verify target parameters
    std::optional<double> epsilon;
    std::vector<double> q_grid;  // sweep: one value per grid point, applied to every class

    // Query: "crossing" or "origin <columns...> [lateral]".
    std::string query_kind = "crossing";
    std::vector<int> origin_columns;
    bool include_lateral = false;

    std::optional<int> block_center, block_radius;
    std::optional<std::uint64_t> replicas;
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    int threads = 0;
    std::string out_prefix = "result";
};

ExperimentSpec parse_experiment(std::istream& in);
ExperimentSpec load_experiment_file(const std::string& path);

// Runs the experiment, writing CSV/JSON artifacts under out_dir and progress
// notes to log. Returns the process exit code: 0 ok, 2 validation, 3
// infeasible coupling, 4 hard assertion, 5 budget exceeded.
int run_experiment(const ExperimentSpec& spec, const std::string& out_dir, std::ostream& log);

}  // namespace perclab
