#include "perclab/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "perclab/anchor_config.hpp"
#include "perclab/block_coupling.hpp"
#include "perclab/block_geometry.hpp"
#include "perclab/connectivity.hpp"
#include "perclab/counterexample.hpp"
#include "perclab/errors.hpp"
#include "perclab/estimator.hpp"
#include "perclab/exact_oracle.hpp"
#include "perclab/params.hpp"
#include "perclab/sampling.hpp"

namespace perclab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string join_q(const std::vector<double>& q) {
    if (q.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (i) out += "|";
        out += fmt(q[i]);
    }
    return out;
}

ExperimentSpec parse_lines(std::istream& in) {
    ExperimentSpec spec;
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& why) {
        throw ValidationError("experiment line " + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "task") {
            ls >> spec.task;
        } else if (key == "orientation") {
            std::string v;
            ls >> v;
            if (v == "unoriented")
                spec.orientation = Orientation::unoriented;
            else if (v == "oriented")
                spec.orientation = Orientation::oriented;
            else
                fail("orientation must be 'unoriented' or 'oriented'");
        } else if (key == "base") {
            ls >> spec.base_kind;
            if (spec.base_kind == "path" || spec.base_kind == "cycle") {
                if (!(ls >> spec.base_n)) fail("base " + spec.base_kind + " needs a size");
            } else if (spec.base_kind == "star") {
                if (!(ls >> spec.star_arms >> spec.star_arm_length))
                    fail("base star needs arm count and arm length");
            } else if (spec.base_kind == "file") {
                if (!(ls >> spec.base_file)) fail("base file needs a path");
            } else {
                fail("unknown base kind '" + spec.base_kind + "'");
            }
        } else if (key == "levels") {
            int a, b;
            if (!(ls >> a >> b)) fail("levels needs two integers");
            spec.level_min = a;
            spec.level_max = b;
        } else if (key == "class-edge") {
            int u, v;
            if (!(ls >> u >> v)) fail("class-edge needs two vertex ids");
            spec.class_edges.emplace_back(u, v);
        } else if (key == "class-vertex") {
            int w;
            if (!(ls >> w)) fail("class-vertex needs a vertex id");
            spec.class_vertices.push_back(w);
        } else if (key == "p") {
            double v;
            if (!(ls >> v)) fail("p needs a number");
            spec.p = v;
        } else if (key == "q" || key == "q2") {
            auto& dst = key == "q" ? spec.q : spec.q_second;
            double v;
            while (ls >> v) dst.push_back(v);
        } else if (key == "epsilon") {
            double v;
            if (!(ls >> v)) fail("epsilon needs a number");
            spec.epsilon = v;
        } else if (key == "q-grid") {
            std::string g;
            if (!(ls >> g)) fail("q-grid needs start:stop:step or a value list");
            if (g.find(':') != std::string::npos) {
                double start, stop, step;
                if (std::sscanf(g.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
                    step <= 0.0)
                    fail("q-grid range must be start:stop:step with positive step");
                for (double v = start; v <= stop + 1e-12; v += step) spec.q_grid.push_back(v);
            } else {
                spec.q_grid.push_back(std::stod(g));
                double v;
                while (ls >> v) spec.q_grid.push_back(v);
            }
        } else if (key == "query") {
            ls >> spec.query_kind;
            if (spec.query_kind == "origin") {
                std::string tok;
                while (ls >> tok) {
                    if (tok == "lateral")
                        spec.include_lateral = true;
                    else
                        spec.origin_columns.push_back(std::stoi(tok));
                }
                if (spec.origin_columns.empty()) fail("query origin needs column ids");
            } else if (spec.query_kind != "crossing") {
                fail("query must be 'crossing' or 'origin ...'");
            }
        } else if (key == "block-center") {
            int v;
            if (!(ls >> v)) fail("block-center needs a vertex id");
            spec.block_center = v;
        } else if (key == "block-radius") {
            int v;
            if (!(ls >> v)) fail("block-radius needs an integer");
            spec.block_radius = v;
        } else if (key == "replicas") {
            std::uint64_t v;
            if (!(ls >> v)) fail("replicas needs an integer");
            spec.replicas = v;
        } else if (key == "samples") {
            std::uint64_t v;
            if (!(ls >> v)) fail("samples needs an integer");
            spec.samples = v;
        } else if (key == "seed") {
            std::uint64_t v;
            if (!(ls >> v)) fail("seed needs an integer");
            spec.seed = v;
        } else if (key == "tolerance") {
            double v;
            if (!(ls >> v)) fail("tolerance needs a number");
            spec.tolerance = v;
        } else if (key == "threads") {
            if (!(ls >> spec.threads)) fail("threads needs an integer");
        } else if (key == "out") {
            if (!(ls >> spec.out_prefix)) fail("out needs a prefix");
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    return spec;
}

struct Instance {
    LadderWindow window;
    EdgeClassMap classes;
};

Instance build_instance(const ExperimentSpec& spec) {
    BaseGraph base;
    if (spec.base_kind == "path")
        base = make_path_graph(spec.base_n);
    else if (spec.base_kind == "cycle")
        base = make_cycle_graph(spec.base_n);
    else if (spec.base_kind == "star")
        base = make_star_graph(spec.star_arms, spec.star_arm_length);
    else if (spec.base_kind == "file")
        base = load_base_graph_file(spec.base_file);
    else
        throw ValidationError("missing or unknown base graph declaration");
    if (!spec.level_min || !spec.level_max)
        throw ValidationError("missing 'levels' declaration");
    LadderWindow window(std::move(base), spec.orientation, *spec.level_min, *spec.level_max);
    EdgeClassMap classes = classify_edges(window, spec.class_edges, spec.class_vertices);
    return {std::move(window), std::move(classes)};
}

ReachQuery build_query(const ExperimentSpec& spec, const LadderWindow& window) {
    if (spec.query_kind == "crossing") return make_crossing_query(window);
    return make_origin_query(window, spec.origin_columns, spec.include_lateral);
}

ParamSet build_params(const ExperimentSpec& spec, int class_count) {
    ParamSet params;
    if (!spec.p) throw ValidationError("missing 'p'");
    params.p = *spec.p;
    params.q = spec.q;
    params.epsilon = spec.epsilon;
    params.validate(class_count);
    return params;
}

std::uint64_t require_seed(const ExperimentSpec& spec) {
    if (!spec.seed) throw ValidationError("missing 'seed' (no wall-clock default)");
    return *spec.seed;
}

std::filesystem::path out_path(const std::string& out_dir, const ExperimentSpec& spec,
                               const std::string& suffix) {
    std::filesystem::path p(out_dir);
    std::filesystem::create_directories(p);
    return p / (spec.out_prefix + suffix);
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream f(p);
    if (!f) throw ValidationError("cannot write output file " + p.string());
    return f;
}

ordered_json instance_json(const ExperimentSpec& spec, const Instance& inst) {
    ordered_json j;
    j["orientation"] = inst.window.oriented() ? "oriented" : "unoriented";
    j["base"] = spec.base_kind;
    j["base_vertices"] = inst.window.base().vertex_count;
    j["base_edges"] = inst.window.base().edge_count();
    j["level_min"] = inst.window.level_min();
    j["level_max"] = inst.window.level_max();
    j["edge_count"] = inst.window.edge_count();
    j["classes"] = inst.classes.class_count();
    return j;
}

void write_estimate_csv(std::ostream& out, const std::vector<double>& q, double p,
                        const Estimate& est, const LadderWindow& window) {
    out << "# perclab-csv v1 estimate\n";
    out << "q,p,value,stderr,replicas,seed,width,levels,orientation\n";
    out << join_q(q) << "," << fmt(p) << "," << fmt(est.value) << "," << fmt(est.stderr_value)
        << "," << est.replicas << "," << est.seed << "," << window.base().vertex_count << ","
        << window.level_max() << "," << (window.oriented() ? "oriented" : "unoriented") << "\n";
}

void write_pc_csv(std::ostream& out, const std::vector<CriticalCurvePoint>& points,
                  const LadderWindow& window) {
    out << "# perclab-csv v1 pc\n";
    out << "q,pc_hat,ci_lo,ci_hi,replicas,seed,width,levels,orientation,iterations\n";
    for (const auto& pt : points)
        out << join_q(pt.q) << "," << fmt(pt.pc_hat) << "," << fmt(pt.ci_lo) << ","
            << fmt(pt.ci_hi) << "," << pt.replicas_used << "," << pt.seed << "," << pt.width << ","
            << pt.levels << "," << (window.oriented() ? "oriented" : "unoriented") << ","
            << pt.iterations << "\n";
}

int run_sample(const ExperimentSpec& spec, const std::string& out_dir, std::ostream& log) {
    Instance inst = build_instance(spec);
    const ParamSet params = build_params(spec, inst.classes.class_count());
    const auto seed = require_seed(spec);
    const BitVec bits = sample_configuration(inst.window, inst.classes, params, seed);
    auto cfg = open_out(out_path(out_dir, spec, ".config.txt"));
    cfg << dump_configuration(inst.window, bits) << "\n";
    ordered_json j = instance_json(spec, inst);
    j["seed"] = seed;
    j["open_edges"] = bits.count();
    j["open_fraction"] = static_cast<double>(bits.count()) / inst.window.edge_count();
    auto js = open_out(out_path(out_dir, spec, ".json"));
    js << j.dump(2) << "\n";
    log << "sample: " << bits.count() << "/" << inst.window.edge_count() << " open edges\n";
    return 0;
}

int run_estimate(const ExperimentSpec& spec, const std::string& out_dir, std::ostream& log) {
    Instance inst = build_instance(spec);
    const ParamSet params = build_params(spec, inst.classes.class_count());
    const auto seed = require_seed(spec);
    if (!spec.replicas) throw ValidationError("missing 'replicas'");
    const ReachQuery query = build_query(spec, inst.window);
    const Estimate est = estimate_reach(inst.window, inst.classes, params, query, *spec.replicas,
                                        seed, spec.threads);
    auto csv = open_out(out_path(out_dir, spec, ".csv"));
    write_estimate_csv(csv, params.q, params.p, est, inst.window);
    ordered_json j = instance_json(spec, inst);
    j["p"] = params.p;
    j["q"] = params.q;
    j["value"] = est.value;
    j["stderr"] = est.stderr_value;
    j["replicas"] = est.replicas;
    j["seed"] = est.seed;
    auto js = open_out(out_path(out_dir, spec, ".json"));
    js << j.dump(2) << "\n";
    log << "estimate: value " << est.value << " +- " << est.stderr_value << "\n";
    return 0;
}

int run_pc(const ExperimentSpec& spec, const std::string& out_dir, std::ostream& log) {
    Instance inst = build_instance(spec);
    const auto seed = require_seed(spec);
    ParamSet probe;
    probe.q = spec.q;
    probe.validate(inst.classes.class_count());
    PcOptions options;
    if (spec.tolerance) options.tolerance = *spec.tolerance;
    if (spec.replicas) options.replicas = *spec.replicas;
    options.threads = spec.threads;
    const ReachQuery query = build_query(spec, inst.window);
    const CriticalCurvePoint point =
        estimate_pc(inst.window, inst.classes, spec.q, query, options, seed);
    auto csv = open_out(out_path(out_dir, spec, ".csv"));
    write_pc_csv(csv, {point}, inst.window);
    ordered_json j = instance_json(spec, inst);
    j["q"] = point.q;
    j["pc_hat"] = point.pc_hat;
    j["ci"] = {point.ci_lo, point.ci_hi};
    j["replicas_used"] = point.replicas_used;
    j["seed"] = point.seed;
    auto js = open_out(out_path(out_dir, spec, ".json"));
    js << j.dump(2) << "\n";
    log << "pc: " << point.pc_hat << " in [" << point.ci_lo << "," << point.ci_hi << "]\n";
    return 0;
}

int run_sweep(const ExperimentSpec& spec, const std::string& out_dir, std::ostream& log) {
    Instance inst = build_instance(spec);
    const auto seed = require_seed(spec);
    if (spec.q_grid.empty()) throw ValidationError("missing 'q-grid'");
    if (inst.classes.class_count() == 0)
        throw ValidationError("sweep needs at least one edge class");
    PcOptions options;
    if (spec.tolerance) options.tolerance = *spec.tolerance;
    if (spec.replicas) options.replicas = *spec.replicas;
    options.threads = spec.threads;
    std::vector<std::vector<double>> grid;
    for (double v : spec.q_grid)
        grid.emplace_back(static_cast<std::size_t>(inst.classes.class_count()), v);
    const ReachQuery query = build_query(spec, inst.window);
    const SweepResult result = sweep_q(inst.window, inst.classes, grid, query, options, seed);
    auto csv = open_out(out_path(out_dir, spec, ".csv"));
    write_pc_csv(csv, result.points, inst.window);
    ordered_json j = instance_json(spec, inst);
    j["grid_points"] = result.points.size();
    j["max_adjacent_jump"] = result.max_adjacent_jump;
    ordered_json rows = ordered_json::array();
    for (const auto& pt : result.points) {
        ordered_json r;
        r["q"] = pt.q;
        r["pc_hat"] = pt.pc_hat;
        r["ci"] = {pt.ci_lo, pt.ci_hi};
        rows.push_back(r);
    }
    j["points"] = rows;
    auto js = open_out(out_path(out_dir, spec, ".json"));
    js << j.dump(2) << "\n";
    log << "sweep: " << result.points.size() << " points, max adjacent jump "
        << result.max_adjacent_jump << "\n";
    return 0;
}

int run_couple_verify(const ExperimentSpec& spec, const std::string& out_dir, std::ostream& log) {
    Instance inst = build_instance(spec);
    const auto seed = require_seed(spec);
    if (!spec.block_center || !spec.block_radius)
        throw ValidationError("couple-verify needs block-center and block-radius");
    if (!spec.p || !spec.epsilon) throw ValidationError("couple-verify needs p and epsilon");
    const std::vector<double>& q1 = spec.q;
    const std::vector<double> q2 = spec.q_second.empty() ? spec.q : spec.q_second;
    const BlockGeometry block =
        build_block_geometry(inst.window, inst.classes, *spec.block_center, *spec.block_radius);
    const std::uint64_t samples = spec.samples.value_or(1000);

    ordered_json j = instance_json(spec, inst);
    j["block_height"] = block.height;
    j["block_count"] = block.block_count;
    j["block_edges"] = block.block_edge_count();
    try {
        const BlockCoupler coupler = BlockCoupler::make(block, q1, q2, *spec.p, *spec.epsilon);
        auto audit = open_out(out_path(out_dir, spec, ".audit.jsonl"));
        BoundaryReach reach(block);
        ReachQuery query = make_crossing_query(inst.window);
        ReachEvaluator first_eval(inst.window, query), second_eval(inst.window, query);
        std::uint64_t violations = 0;
        std::vector<std::uint64_t> case_counts(4, 0);
        for (std::uint64_t s = 0; s < samples; ++s) {
            const auto result = couple_window(block, coupler, q1, q2, *spec.p, *spec.epsilon,
                                              derive_stream_seed(seed, s));
            bool containment = true;
            for (int b = 0; b < block.block_count; ++b) {
                BitVec f(block.block_edge_count()), g(block.block_edge_count());
                for (std::size_t k = 0; k < block.all_edges.size(); ++k) {
                    const int e = block.translate_edge(block.all_edges[k], b);
                    f.set(static_cast<int>(k), result.first.get(e));
                    g.set(static_cast<int>(k), result.second.get(e));
                }
                const auto rf = reach.singleton_reach(f);
                const auto rg = reach.singleton_reach(g);
                for (std::size_t i = 0; i < rf.size(); ++i)
                    if (rf[i] & ~rg[i]) containment = false;
            }
            const bool reach_first = first_eval.evaluate(result.first);
            const bool reach_second = second_eval.evaluate(result.second);
            const bool implication = !reach_first || reach_second;
            for (auto tag : result.block_tags) ++case_counts[static_cast<int>(tag)];
            ordered_json line;
            line["sample"] = s;
            ordered_json tags = ordered_json::array();
            for (auto tag : result.block_tags) tags.push_back(to_string(tag));
            line["block_cases"] = tags;
            line["containment"] = containment;
            line["reach_implication"] = implication;
            audit << line.dump() << "\n";
            if (!containment || !implication) ++violations;
        }
        j["status"] = violations == 0 ? "ok" : "violated";
        j["samples"] = samples;
        j["violations"] = violations;
        j["case_counts"] = {{"matched", case_counts[0]},
                            {"first_anchor", case_counts[1]},
                            {"mixed_to_cut", case_counts[2]},
                            {"second_anchor", case_counts[3]}};
        auto js = open_out(out_path(out_dir, spec, ".json"));
        js << j.dump(2) << "\n";
        if (violations != 0)
            throw HardAssertionError("coupling produced " + std::to_string(violations) +
                                     " violating samples");
        log << "couple-verify: " << samples << " samples, no violations\n";
        return 0;
    } catch (const InfeasibleCouplingError& e) {
        j["status"] = "infeasible";
        j["detail"] = e.what();
        auto js = open_out(out_path(out_dir, spec, ".json"));
        js << j.dump(2) << "\n";
        log << "couple-verify: infeasible (" << e.what() << ")\n";
        return 3;
    }
}

int run_counterexample(const ExperimentSpec& spec, const std::string& out_dir, std::ostream& log) {
    Instance inst = build_instance(spec);
    const auto seed = require_seed(spec);
    if (!spec.block_center || !spec.block_radius)
        throw ValidationError("counterexample needs block-center and block-radius");
    const BlockGeometry block =
        build_block_geometry(inst.window, inst.classes, *spec.block_center, *spec.block_radius);
    const BlockSlotSpace space = make_block_slot_space(block);
    CounterexampleBudget budget;
    if (spec.samples) budget.random_configs = *spec.samples;
    CounterexampleReport report;
    if (inst.window.oriented()) {
        const auto anchors = build_oriented_anchors(space);
        report = search_counterexample_oriented(space, anchors, budget, seed);
    } else {
        const auto anchor = build_unoriented_anchor(space);
        report = search_counterexample_unoriented(space, anchor, budget, seed);
    }
    ordered_json j = instance_json(spec, inst);
    j["configs_tried"] = report.configs_tried;
    j["exhaustive"] = report.exhaustive;
    auto witness_json = [](const CounterexampleWitness& w) {
        ordered_json o;
        o["config_hex"] = w.block_config.to_hex();
        o["source_position"] = w.source_position;
        o["separating_position"] = w.separating_position;
        return o;
    };
    if (report.escapes_cut_full)
        j["escapes_cut_full"] = witness_json(*report.escapes_cut_full);
    if (report.beats_candidate)
        j["beats_candidate"] = witness_json(*report.beats_candidate);
    j["witness_count"] = static_cast<int>(report.escapes_cut_full.has_value()) +
                         static_cast<int>(report.beats_candidate.has_value());
    auto js = open_out(out_path(out_dir, spec, ".json"));
    js << j.dump(2) << "\n";
    log << "counterexample: tried " << report.configs_tried << " configs, witnesses "
        << j["witness_count"] << (report.exhaustive ? " (exhaustive)" : "") << "\n";
    return 0;
}

int run_oracle_verify(const ExperimentSpec& spec, const std::string& out_dir, std::ostream& log) {
    Instance inst = build_instance(spec);
    const ParamSet params = build_params(spec, inst.classes.class_count());
    const auto seed = require_seed(spec);
    const ReachQuery query = build_query(spec, inst.window);
    const double exact = exact_reach_probability(inst.window, inst.classes, params, query);
    const std::uint64_t replicas = spec.replicas.value_or(100000);
    const Estimate est =
        estimate_reach(inst.window, inst.classes, params, query, replicas, seed, spec.threads);
    const double se = std::max(est.stderr_value, 1e-9);
    const double sigmas = std::abs(est.value - exact) / se;
    ordered_json j = instance_json(spec, inst);
    j["exact"] = exact;
    j["estimate"] = est.value;
    j["stderr"] = est.stderr_value;
    j["sigmas"] = sigmas;
    j["replicas"] = est.replicas;
    j["status"] = sigmas <= 4.0 ? "ok" : "mismatch";
    auto js = open_out(out_path(out_dir, spec, ".json"));
    js << j.dump(2) << "\n";
    log << "oracle-verify: exact " << exact << ", estimate " << est.value << " (" << sigmas
        << " sigma)\n";
    if (sigmas > 4.0)
        throw HardAssertionError("Monte Carlo estimate deviates from the exact probability by " +
                                 std::to_string(sigmas) + " standard errors");
    return 0;
}

}  // namespace

ExperimentSpec parse_experiment(std::istream& in) { return parse_lines(in); }

ExperimentSpec load_experiment_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open experiment file: " + path);
    return parse_lines(in);
}

int run_experiment(const ExperimentSpec& spec, const std::string& out_dir, std::ostream& log) {
    if (spec.task == "sample") return run_sample(spec, out_dir, log);
    if (spec.task == "estimate") return run_estimate(spec, out_dir, log);
    if (spec.task == "pc") return run_pc(spec, out_dir, log);
    if (spec.task == "sweep") return run_sweep(spec, out_dir, log);
    if (spec.task == "couple-verify") return run_couple_verify(spec, out_dir, log);
    if (spec.task == "counterexample") return run_counterexample(spec, out_dir, log);
    if (spec.task == "oracle-verify") return run_oracle_verify(spec, out_dir, log);
    throw ValidationError("unknown task '" + spec.task + "'");
}

}  // namespace perclab
