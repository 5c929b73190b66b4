// Acceptance harness: runs every gate criterion at its stated budget and
// prints one PASS/FAIL line per criterion. Exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "perclab/anchor_config.hpp"
#include "perclab/block_coupling.hpp"
#include "perclab/connectivity.hpp"
#include "perclab/counterexample.hpp"
#include "perclab/errors.hpp"
#include "perclab/estimator.hpp"
#include "perclab/exact_oracle.hpp"
#include "perclab/sampling.hpp"

using namespace perclab;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& info) {
        if (!detail.empty()) detail += "; ";
        detail += info;
    }
};

// 99th percentile of chi-square; exact low orders, Wilson-Hilferty beyond.
double chi2_crit_99(int df) {
    static const double low[] = {6.634896601, 9.210340372, 11.344866730, 13.276704136,
                                 15.086272469};
    if (df <= 0) return 0.0;
    if (df <= 5) return low[df - 1];
    const double z = 2.3263478740;  // standard normal 99th percentile
    const double a = 2.0 / (9.0 * df);
    const double c = 1.0 - a + z * std::sqrt(a);
    return df * c * c * c;
}

// Pearson statistic with small expected bins merged to their left neighbor.
bool chi_square_ok(const std::vector<long>& counts, const std::vector<double>& probs, long n) {
    std::vector<double> exp_bins;
    std::vector<double> obs_bins;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double e = probs[i] * n;
        if (!exp_bins.empty() && (e < 5.0 || exp_bins.back() < 5.0)) {
            exp_bins.back() += e;
            obs_bins.back() += counts[i];
        } else {
            exp_bins.push_back(e);
            obs_bins.push_back(static_cast<double>(counts[i]));
        }
    }
    double stat = 0.0;
    int df = -1;
    for (std::size_t b = 0; b < exp_bins.size(); ++b) {
        if (exp_bins[b] <= 0.0) continue;
        const double d = obs_bins[b] - exp_bins[b];
        stat += d * d / exp_bins[b];
        ++df;
    }
    return df <= 0 || stat <= chi2_crit_99(df);
}

std::pair<DenseMeasure, DenseMeasure> nearby_pair(Rng& rng, int n, double wobble) {
    std::vector<double> m1(n), m2(n);
    double s1 = 0;
    for (int i = 0; i < n; ++i) s1 += m1[i] = 0.05 + rng.uniform();
    for (int i = 0; i < n; ++i) m1[i] /= s1;
    double s2 = 0;
    for (int i = 0; i < n; ++i) s2 += m2[i] = m1[i] * (1.0 + wobble * (rng.uniform() - 0.5));
    for (int i = 0; i < n; ++i) m2[i] /= s2;
    return {DenseMeasure(std::move(m1)), DenseMeasure(std::move(m2))};
}

struct Instance {
    std::string name;
    LadderWindow window;
    EdgeClassMap classes;
    ParamSet params;
};

Instance make_instance(std::string name, BaseGraph g, Orientation o, int top, ParamSet params,
                       std::vector<std::pair<int, int>> class_edges = {},
                       std::vector<int> class_vertices = {}) {
    LadderWindow w(std::move(g), o, 0, top);
    EdgeClassMap map = classify_edges(w, class_edges, class_vertices);
    return {std::move(name), std::move(w), std::move(map), std::move(params)};
}

// ---------------------------------------------------------------------------

Outcome criterion1_oracle_agreement() {
    Outcome out;
    std::vector<Instance> instances;
    instances.push_back(make_instance("rung", make_base_graph(1, {}), Orientation::unoriented, 1,
                                      ParamSet{0.5, {}, {}}));
    instances.push_back(make_instance("series", make_base_graph(1, {}), Orientation::unoriented,
                                      2, ParamSet{0.7, {}, {}}));
    instances.push_back(make_instance("two-columns", make_path_graph(2), Orientation::unoriented,
                                      1, ParamSet{0.3, {}, {}}));
    instances.push_back(make_instance("column-class", make_path_graph(2),
                                      Orientation::unoriented, 3, ParamSet{0.4, {0.65}, {}}, {},
                                      {0}));
    instances.push_back(make_instance("layer-class", make_path_graph(3), Orientation::unoriented,
                                      2, ParamSet{0.3, {0.7}, {}}, {{0, 1}}, {}));
    instances.push_back(make_instance("slow-column", make_path_graph(3), Orientation::unoriented,
                                      2, ParamSet{0.55, {0.2}, {}}, {}, {1}));
    instances.push_back(make_instance("triangle", make_cycle_graph(3), Orientation::unoriented, 1,
                                      ParamSet{0.45, {}, {}}));
    instances.push_back(make_instance("square", make_cycle_graph(4), Orientation::unoriented, 1,
                                      ParamSet{0.4, {}, {}}));
    instances.push_back(make_instance("diag-strip", make_path_graph(2), Orientation::oriented, 3,
                                      ParamSet{0.6, {}, {}}));
    instances.push_back(make_instance("diag-class", make_path_graph(3), Orientation::oriented, 2,
                                      ParamSet{0.55, {0.3}, {}}, {{1, 2}}, {}));
    instances.push_back(make_instance("diag-triangle", make_cycle_graph(3), Orientation::oriented,
                                      2, ParamSet{0.35, {}, {}}));
    instances.push_back(make_instance("diag-star", make_star_graph(3, 1), Orientation::oriented,
                                      2, ParamSet{0.5, {}, {}}));
    int checked = 0;
    double worst = 0.0;
    for (const auto& inst : instances) {
        if (inst.window.edge_count() > 20) {
            out.fail(inst.name + " exceeds 20 edges");
            continue;
        }
        const ReachQuery query = make_crossing_query(inst.window);
        const double exact =
            exact_reach_probability(inst.window, inst.classes, inst.params, query);
        const Estimate est = estimate_reach(inst.window, inst.classes, inst.params, query,
                                            100000, 515151 + checked, 2);
        const double se = std::max(est.stderr_value, 1e-9);
        const double sigmas = std::abs(est.value - exact) / se;
        worst = std::max(worst, sigmas);
        if (sigmas > 4.0)
            out.fail(inst.name + " off by " + std::to_string(sigmas) + " sigma");
        ++checked;
    }
    out.note(std::to_string(checked) + " instances, worst " + std::to_string(worst) + " sigma");
    if (checked < 10) out.fail("fewer than 10 instances");
    return out;
}

Outcome criterion2_single_anchor_battery() {
    Outcome out;
    Rng gen(880001);
    const int sizes[] = {2, 3, 4, 5, 6, 8, 10, 12, 16, 24, 32, 48,
                         64, 96, 128, 256, 512, 1024, 2048, 4096};
    double worst_tv = 0.0;
    for (int t = 0; t < 20; ++t) {
        const int n = sizes[t];
        auto [mu1, mu2] = nearby_pair(gen, n, 0.5 / n);
        int anchor = 0;
        for (int i = 1; i < n; ++i)
            if (mu1.mass(i) > mu1.mass(anchor)) anchor = i;
        const auto check = single_anchor_feasibility(mu1, mu2, anchor);
        if (!check.feasible) {
            out.fail("instance " + std::to_string(t) + " infeasible");
            continue;
        }
        // interval backend: exact marginals, clause on every positive atom
        try {
            const auto report = audit_single_anchor_intervals(mu1, mu2, anchor);
            worst_tv = std::max({worst_tv, report.tv_first, report.tv_second});
            if (report.tv_first > 1e-12 || report.tv_second > 1e-12)
                out.fail("interval TV > 1e-12 at |S|=" + std::to_string(n));
        } catch (const HardAssertionError& e) {
            out.fail(std::string("off-clause atom: ") + e.what());
        }
        // sequential backend: chi-square marginals at 1e6 samples, clause per sample
        const long samples = 1000000;
        std::vector<long> cx(n, 0), cy(n, 0);
        Rng rng(990100 + t);
        bool clauses_ok = true;
        for (long s = 0; s < samples; ++s) {
            const auto o = couple_single_anchor_sequential(mu1, mu2, anchor, check, rng);
            clauses_ok = clauses_ok && single_clause_holds(o.tag, o.first, o.second, anchor);
            ++cx[o.first];
            ++cy[o.second];
        }
        if (!clauses_ok) out.fail("sequential clause violation at |S|=" + std::to_string(n));
        std::vector<double> p1(n), p2(n);
        for (int i = 0; i < n; ++i) {
            p1[i] = mu1.mass(i);
            p2[i] = mu2.mass(i);
        }
        if (!chi_square_ok(cx, p1, samples))
            out.fail("first marginal chi-square at |S|=" + std::to_string(n));
        if (!chi_square_ok(cy, p2, samples))
            out.fail("second marginal chi-square at |S|=" + std::to_string(n));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "20 instances, worst interval TV %.2e", worst_tv);
    out.note(buf);
    return out;
}

Outcome criterion3_partitioned_battery() {
    Outcome out;
    Rng gen(880002);
    const int sizes[] = {3, 4, 4, 5, 6, 8, 10, 12, 16, 20, 24, 32,
                         48, 64, 96, 128, 192, 256, 384, 512};
    double worst_tv = 0.0;
    for (int t = 0; t < 20; ++t) {
        const int n = sizes[t];
        auto [mu1, mu2] = nearby_pair(gen, n, 0.4 / n);
        DensePartition part;
        part.in_cut.assign(n, 0);
        for (int i = 0; i < n; ++i) part.in_cut[i] = (gen.next_u64() & 1) != 0;
        part.in_cut[0] = 1;
        part.in_cut[n - 1] = 0;  // both parts nonempty
        part.cut_anchor = 0;
        part.open_anchor = n - 1;
        for (int i = 0; i < n; ++i) {
            if (part.in_cut[i] && mu1.mass(i) > mu1.mass(part.cut_anchor)) part.cut_anchor = i;
            if (!part.in_cut[i] && mu1.mass(i) > mu1.mass(part.open_anchor)) part.open_anchor = i;
        }
        const auto check = partitioned_feasibility(mu1, mu2, part);
        if (!check.feasible) {
            out.fail("instance " + std::to_string(t) + " infeasible");
            continue;
        }
        try {
            const auto report = audit_partitioned_intervals(mu1, mu2, part);
            worst_tv = std::max({worst_tv, report.tv_first, report.tv_second});
            if (report.tv_first > 1e-12 || report.tv_second > 1e-12)
                out.fail("interval TV > 1e-12 at |S|=" + std::to_string(n));
            if (report.open_anchor_conditional != 1.0)
                out.fail("open-anchor conditional below 1 at |S|=" + std::to_string(n));
        } catch (const HardAssertionError& e) {
            out.fail(std::string("off-clause atom: ") + e.what());
        }
        const long samples = 1000000;
        std::vector<long> cx(n, 0), cy(n, 0);
        Rng rng(990200 + t);
        bool clauses_ok = true, conditional_ok = true;
        for (long s = 0; s < samples; ++s) {
            const auto o = couple_partitioned_sequential(mu1, mu2, part, check, rng);
            clauses_ok = clauses_ok && partitioned_clause_holds(o.tag, o.first, o.second, part);
            if (o.first == part.open_anchor &&
                !(o.second == part.cut_anchor || o.second == part.open_anchor))
                conditional_ok = false;
            ++cx[o.first];
            ++cy[o.second];
        }
        if (!clauses_ok) out.fail("sequential clause violation at |S|=" + std::to_string(n));
        if (!conditional_ok)
            out.fail("open-anchor draw left the anchors at |S|=" + std::to_string(n));
        std::vector<double> p1(n), p2(n);
        for (int i = 0; i < n; ++i) {
            p1[i] = mu1.mass(i);
            p2[i] = mu2.mass(i);
        }
        if (!chi_square_ok(cx, p1, samples))
            out.fail("first marginal chi-square at |S|=" + std::to_string(n));
        if (!chi_square_ok(cy, p2, samples))
            out.fail("second marginal chi-square at |S|=" + std::to_string(n));
    }
    // Hand-checked strictness of the two feasibility inequalities.
    {
        DensePartition p;
        p.in_cut = {1, 1, 0};
        p.cut_anchor = 1;
        p.open_anchor = 2;
        const DenseMeasure a1({0.2, 0.4, 0.4}), a2({0.1, 0.45, 0.45});
        if (!partitioned_feasibility(a1, a2, p).feasible)
            out.fail("hand-checked feasible instance rejected");
        DensePartition p4;
        p4.in_cut = {1, 1, 0, 0};
        p4.cut_anchor = 1;
        p4.open_anchor = 3;
        const DenseMeasure b1({0.2, 0.3, 0.3, 0.2}), b2({0.3, 0.5, 0.2, 0.0});
        if (partitioned_feasibility(b1, b2, p4).feasible)
            out.fail("massless open anchor accepted");
        const DenseMeasure c1({0.25, 0.25, 0.375, 0.125}), c2({0.375, 0.25, 0.25, 0.125});
        if (partitioned_feasibility(c1, c2, p4).feasible)
            out.fail("boundary equality accepted despite strict inequality");
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "20 instances, worst interval TV %.2e", worst_tv);
    out.note(buf);
    return out;
}

Outcome criterion4_anchor_identities() {
    Outcome out;
    // Segment ball of radius 3 inside a 9-path; 48 boundary vertices.
    const BaseGraph path = make_path_graph(9);
    LadderWindow w(path, Orientation::unoriented, 0, 16);
    EdgeClassMap map = classify_edges(
        w, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}}, {1, 2, 3, 4, 5, 6, 7});
    const BlockGeometry block = build_block_geometry(w, map, 4, 3);
    const BlockSlotSpace space = make_block_slot_space(block);
    const UnorientedBlockAnchor anchor = build_unoriented_anchor(space);  // verifies internally
    const BitVec closed_cfg =
        space.block_config(space.assemble(anchor.class_bits, false, false), false);
    const BitVec full_cfg =
        space.block_config(space.assemble(anchor.class_bits, true, true), false);
    const int nb = static_cast<int>(block.boundary_all.size());
    const std::uint64_t all = nb == 64 ? ~0ULL : (1ULL << nb) - 1;
    BoundaryReach reach(block);
    const auto closed = reach.singleton_reach(closed_cfg);
    const auto full = reach.singleton_reach(full_cfg);
    long failures = 0;
    for (int i = 0; i < nb; ++i) {
        if (closed[i] != (1ULL << i)) ++failures;
        if (full[i] != all) ++failures;
    }
    // Singletons decide every subset exactly (the cluster of a union is the
    // union of the clusters); additionally sweep literal random subsets.
    Rng rng(880004);
    for (int t = 0; t < 2000; ++t) {
        std::uint64_t a = rng.next_u64() & all;
        if (a == 0) a = 1;
        if (boundary_cluster(block, closed_cfg, a) != a) ++failures;
        if (boundary_cluster(block, full_cfg, a) != all) ++failures;
    }
    if (failures != 0) out.fail(std::to_string(failures) + " identity violations");
    out.note(std::to_string(nb) + " boundary vertices; all 2^" + std::to_string(nb) +
             " subsets via singletons, 2000 literal subsets");
    return out;
}

Outcome criterion5_block_monotonicity() {
    Outcome out;
    // Unoriented: segment ball of radius 1 in a 5-path.
    {
        const BaseGraph path = make_path_graph(5);
        LadderWindow w(path, Orientation::unoriented, 0, 8);
        EdgeClassMap map = classify_edges(w, {{1, 2}, {2, 3}}, {1, 2, 3});
        const BlockGeometry block = build_block_geometry(w, map, 2, 1);
        const std::vector<double> q(5, 0.5);
        const auto coupler = BlockCoupler::make(block, q, q, 0.2, 0.3);
        ContainmentOptions options;
        options.samples = 10000;
        options.seed = 880005;
        const auto report = exhaustive_containment_check(block, coupler, options);
        if (!report.anchor_identities_ok) out.fail("unoriented anchor identities");
        if (report.violations != 0)
            out.fail(std::to_string(report.violations) + " unoriented violations");
        out.note("unoriented 10^4 pairs, " + std::to_string(block.boundary_all.size()) +
                 " singletons (= all subsets)");
    }
    // Oriented: segment ball of radius 2 in a 6-path; singleton-exact on 10^4
    // pairs plus a literal sweep over all nonempty subsets on a few pairs.
    {
        const BaseGraph path = make_path_graph(6);
        LadderWindow w(path, Orientation::oriented, 0, 8);
        EdgeClassMap map = classify_edges(w, {{0, 1}, {1, 2}, {2, 3}}, {});
        const BlockGeometry block = build_block_geometry(w, map, 1, 2);
        const std::vector<double> q(3, 0.5);
        const auto coupler = BlockCoupler::make(block, q, q, 0.2, 0.3);
        ContainmentOptions options;
        options.samples = 10000;
        options.seed = 880006;
        const auto report = exhaustive_containment_check(block, coupler, options);
        if (!report.anchor_identities_ok) out.fail("oriented anchor identities");
        if (report.violations != 0)
            out.fail(std::to_string(report.violations) + " oriented violations");
        ContainmentOptions literal;
        literal.samples = 5;
        literal.seed = 880007;
        literal.exhaustive_subsets = true;
        const auto lit = exhaustive_containment_check(block, coupler, literal);
        if (lit.violations != 0) out.fail("literal subset sweep found violations");
        out.note("oriented 10^4 pairs + literal sweep of " + std::to_string(lit.subsets_checked) +
                 " subsets");
    }
    // Composed window couplings: per-replica reach implication with a real
    // parameter gap.
    {
        const BaseGraph path = make_path_graph(3);
        LadderWindow w(path, Orientation::unoriented, 0, 8);
        EdgeClassMap map = classify_edges(w, {}, {1});
        const BlockGeometry block = build_block_geometry(w, map, 1, 0);
        const double delta = 1e-6;
        const auto coupler = BlockCoupler::make(block, {0.25}, {0.25 + delta}, 0.2, 0.6);
        const ReachQuery query = make_crossing_query(w);
        ReachEvaluator lo_eval(w, query), hi_eval(w, query);
        long violations = 0;
        for (int s = 0; s < 10000; ++s) {
            const auto result = couple_window(block, coupler, {0.25}, {0.25 + delta}, 0.2, 0.6,
                                              derive_stream_seed(880008, s));
            if (lo_eval.evaluate(result.first) && !hi_eval.evaluate(result.second)) ++violations;
        }
        if (violations != 0)
            out.fail(std::to_string(violations) + " unoriented window implications");
    }
    {
        const BaseGraph path = make_path_graph(4);
        LadderWindow w(path, Orientation::oriented, 0, 12);
        EdgeClassMap map = classify_edges(w, {{0, 1}, {1, 2}}, {});
        const BlockGeometry block = build_block_geometry(w, map, 1, 1);
        const double delta = 1e-10;
        const std::vector<double> q1{0.7, 0.7}, q2{0.7 + delta, 0.7 - delta};
        const auto coupler = BlockCoupler::make(block, q1, q2, 0.2, 0.6);
        const ReachQuery query = make_crossing_query(w);
        ReachEvaluator lo_eval(w, query), hi_eval(w, query);
        long violations = 0;
        for (int s = 0; s < 10000; ++s) {
            const auto result =
                couple_window(block, coupler, q1, q2, 0.2, 0.6, derive_stream_seed(880009, s));
            if (lo_eval.evaluate(result.first) && !hi_eval.evaluate(result.second)) ++violations;
        }
        if (violations != 0) out.fail(std::to_string(violations) + " oriented window implications");
        out.note("2 x 10^4 composed windows");
    }
    return out;
}

Outcome criterion6_zhang_constancy() {
    Outcome out;
    const BaseGraph path = make_path_graph(128);
    LadderWindow w(path, Orientation::unoriented, 0, 128);
    PcOptions options;
    options.tolerance = 0.01;
    options.replicas = 10000;
    options.threads = 2;
    const ReachQuery query = make_crossing_query(w);
    {
        const EdgeClassMap map = classify_edges(w, {}, {});
        const auto point = estimate_pc(w, map, {}, query, options, 880010);
        char buf[64];
        std::snprintf(buf, sizeof buf, "homogeneous %.4f", point.pc_hat);
        out.note(buf);
        if (std::abs(point.pc_hat - 0.5) > 0.03) out.fail("homogeneous outside 0.5 +- 0.03");
    }
    const EdgeClassMap map = classify_edges(w, {}, {64});
    int idx = 0;
    for (double q : {0.2, 0.5, 0.8}) {
        const auto point = estimate_pc(w, map, {q}, query, options, 880011 + idx++);
        char buf[64];
        std::snprintf(buf, sizeof buf, "q=%.1f -> %.4f", q, point.pc_hat);
        out.note(buf);
        if (std::abs(point.pc_hat - 0.5) > 0.03)
            out.fail("column class q=" + std::to_string(q) + " outside 0.5 +- 0.03");
    }
    return out;
}

Outcome criterion7_oriented_sweep() {
    Outcome out;
    const BaseGraph path = make_path_graph(96);
    LadderWindow w(path, Orientation::oriented, 0, 96);
    const EdgeClassMap map = classify_edges(w, {{47, 48}}, {});
    PcOptions options;
    options.tolerance = 0.01;
    options.replicas = 4000;
    options.threads = 2;
    const ReachQuery query = make_crossing_query(w);
    std::vector<std::vector<double>> grid;
    for (int i = 1; i <= 9; ++i) grid.push_back({i / 10.0});
    const auto sweep = sweep_q(w, map, grid, query, options, 880012);
    const auto [lo, hi] = std::minmax_element(
        sweep.points.begin(), sweep.points.end(),
        [](const auto& a, const auto& b) { return a.pc_hat < b.pc_hat; });
    char buf[96];
    std::snprintf(buf, sizeof buf, "pc range [%.4f, %.4f], max jump %.4f", lo->pc_hat,
                  hi->pc_hat, sweep.max_adjacent_jump);
    out.note(buf);
    if (sweep.max_adjacent_jump > 0.03) out.fail("adjacent jump exceeds 0.03");
    return out;
}

Outcome criterion8_counterexamples() {
    Outcome out;
    // Oriented segment ball with walls on both sides: witnesses exist.
    {
        const BaseGraph path = make_path_graph(5);
        LadderWindow w(path, Orientation::oriented, 0, 6);
        EdgeClassMap map = classify_edges(w, {{1, 2}, {2, 3}}, {});
        const BlockGeometry block = build_block_geometry(w, map, 2, 1);
        const BlockSlotSpace space = make_block_slot_space(block);
        const OrientedBlockAnchors anchors = build_oriented_anchors(space);
        CounterexampleBudget budget;
        budget.random_configs = 200000;
        const auto report = search_counterexample_oriented(space, anchors, budget, 880013);
        if (!report.escapes_cut_full) out.fail("no witness against the cut anchor");
        if (!report.beats_candidate) out.fail("no witness against the open anchor");
        out.note("oriented witnesses after " + std::to_string(report.configs_tried) + " configs");
    }
    // Unoriented single-column ball: exhaustive sweep finds nothing.
    {
        const BaseGraph path = make_path_graph(3);
        LadderWindow w(path, Orientation::unoriented, 0, 4);
        EdgeClassMap map = classify_edges(w, {}, {1});
        const BlockGeometry block = build_block_geometry(w, map, 1, 0);
        const BlockSlotSpace space = make_block_slot_space(block);
        const UnorientedBlockAnchor anchor = build_unoriented_anchor(space);
        CounterexampleBudget budget;  // 20 block edges -> exhaustive
        const auto report = search_counterexample_unoriented(space, anchor, budget, 880014);
        if (!report.exhaustive) out.fail("unoriented sweep was not exhaustive");
        if (report.escapes_cut_full || report.beats_candidate)
            out.fail("unoriented analogue produced a witness");
        out.note("unoriented exhaustive over " + std::to_string(report.configs_tried) +
                 " configs, none");
    }
    return out;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* label;
        std::function<Outcome()> run;
    };
    const std::vector<Entry> criteria = {
        {1, "oracle agreement (10^5 replicas within 4 sigma)", criterion1_oracle_agreement},
        {2, "single-anchor coupling exactness", criterion2_single_anchor_battery},
        {3, "partitioned coupling exactness", criterion3_partitioned_battery},
        {4, "deterministic anchor identities", criterion4_anchor_identities},
        {5, "block coupling monotonicity", criterion5_block_monotonicity},
        {6, "constancy anchor at 1/2 on the 128-strip", criterion6_zhang_constancy},
        {7, "oriented sweep continuity diagnostic", criterion7_oriented_sweep},
        {8, "counterexample search", criterion8_counterexamples},
    };
    int failures = 0;
    for (const auto& entry : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = entry.run();
        } catch (const std::exception& e) {
            outcome.fail(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", outcome.pass ? "PASS" : "FAIL",
                    entry.id, entry.label, secs, outcome.detail.empty() ? "" : " -- ",
                    outcome.detail.c_str());
        std::fflush(stdout);
        failures += outcome.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
