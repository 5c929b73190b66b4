#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "perclab/errors.hpp"
#include "perclab/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"perclab - inhomogeneous percolation on ladder graphs"};
    std::string spec_path;
    std::string out_dir = ".";
    std::uint64_t seed_override = 0;
    bool have_seed_override = false;
    app.add_option("--spec", spec_path, "experiment file")->required();
    app.add_option("--out", out_dir, "output directory (default: current)");
    auto* seed_opt = app.add_option("--seed-override", seed_override, "replace the file's seed");
    CLI11_PARSE(app, argc, argv);
    have_seed_override = seed_opt->count() > 0;

    try {
        perclab::ExperimentSpec spec = perclab::load_experiment_file(spec_path);
        if (have_seed_override) spec.seed = seed_override;
        return perclab::run_experiment(spec, out_dir, std::cout);
    } catch (const perclab::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const perclab::InfeasibleCouplingError& e) {
        std::cerr << "infeasible coupling: " << e.what() << "\n";
        return 3;
    } catch (const perclab::HardAssertionError& e) {
        std::cerr << "hard assertion failed: " << e.what() << "\n";
        return 4;
    } catch (const perclab::BudgetExceededError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
