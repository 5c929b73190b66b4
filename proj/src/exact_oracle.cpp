#include "perclab/exact_oracle.hpp"

#include <cmath>
#include <string>
#include <thread>

#include "perclab/errors.hpp"

namespace perclab {

namespace {

struct KahanSum {
    double sum = 0.0, carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

void EnumerationBudget::check_edges(int edges) const {
    if (edges > max_edges)
        throw BudgetExceededError("instance has " + std::to_string(edges) +
                                  " edges; enumeration budget is " + std::to_string(max_edges));
}

void EnumerationBudget::check_support(long support) const {
    if (support > max_support)
        throw BudgetExceededError("support of size " + std::to_string(support) +
                                  " exceeds enumeration budget " + std::to_string(max_support));
}

double exact_reach_probability(const LadderWindow& window, const EdgeClassMap& classes,
                               const ParamSet& params, const ReachQuery& query,
                               const EnumerationBudget& budget, int threads) {
    params.validate(classes.class_count());
    const int m = window.edge_count();
    budget.check_edges(m);
    std::vector<double> open_p(static_cast<std::size_t>(m));
    for (int e = 0; e < m; ++e)
        open_p[static_cast<std::size_t>(e)] =
            params.edge_probability(classes.class_of[static_cast<std::size_t>(e)]);

    const std::uint64_t total = 1ULL << m;
    constexpr int kChunks = 64;
    std::vector<double> chunk_sum(kChunks, 0.0);
    auto run_chunk = [&](int chunk) {
        const std::uint64_t lo = total * static_cast<std::uint64_t>(chunk) / kChunks;
        const std::uint64_t hi = total * (static_cast<std::uint64_t>(chunk) + 1) / kChunks;
        ReachEvaluator evaluator(window, query);
        BitVec cfg(m);
        KahanSum acc;
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            double prob = 1.0;
            for (int e = 0; e < m; ++e) {
                const bool open = (mask >> e) & 1ULL;
                cfg.set(e, open);
                prob *= open ? open_p[static_cast<std::size_t>(e)]
                             : 1.0 - open_p[static_cast<std::size_t>(e)];
            }
            if (prob > 0.0 && evaluator.evaluate(cfg)) acc.add(prob);
        }
        chunk_sum[static_cast<std::size_t>(chunk)] = acc.sum;
    };
    if (threads <= 1) {
        for (int c = 0; c < kChunks; ++c) run_chunk(c);
    } else {
        const int workers = std::min(threads, kChunks);
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (int c = w; c < kChunks; c += workers) run_chunk(c);
            });
        for (auto& t : pool) t.join();
    }
    KahanSum result;  // chunk order fixed, so the sum is thread-count independent
    for (double s : chunk_sum) result.add(s);
    return result.sum;
}

namespace {

CouplingAuditReport audit_atoms(const std::vector<CoupledIntervals::Atom>& atoms,
                                const DenseMeasure& mu1, const DenseMeasure& mu2,
                                int open_anchor_or_negative) {
    CouplingAuditReport report;
    report.feasible = true;
    report.atom_count = static_cast<long>(atoms.size());
    std::vector<double> m1(static_cast<std::size_t>(mu1.size()), 0.0);
    std::vector<double> m2(static_cast<std::size_t>(mu2.size()), 0.0);
    double open_anchor_mass = 0.0;
    double open_anchor_on_anchors = 0.0;
    for (const auto& a : atoms) {
        m1[static_cast<std::size_t>(a.first)] += a.length;
        m2[static_cast<std::size_t>(a.second)] += a.length;
        report.clause_probability[static_cast<int>(a.tag)] += a.length;
        if (a.first == open_anchor_or_negative) {
            open_anchor_mass += a.length;
            if (a.tag == CouplingCase::matched || a.tag == CouplingCase::mixed_to_cut ||
                a.tag == CouplingCase::second_anchor)
                open_anchor_on_anchors += a.length;
        }
    }
    KahanSum tv1, tv2;
    for (int x = 0; x < mu1.size(); ++x) {
        tv1.add(std::abs(m1[static_cast<std::size_t>(x)] - mu1.mass(x)));
        tv2.add(std::abs(m2[static_cast<std::size_t>(x)] - mu2.mass(x)));
    }
    report.tv_first = 0.5 * tv1.sum;
    report.tv_second = 0.5 * tv2.sum;
    if (open_anchor_or_negative >= 0 && open_anchor_mass > 0.0)
        report.open_anchor_conditional = open_anchor_on_anchors / open_anchor_mass;
    return report;
}

CouplingAuditReport audit_joint(const std::vector<std::vector<double>>& joint,
                                const DenseMeasure& mu1, const DenseMeasure& mu2,
                                const DensePartition* partition, int single_anchor) {
    CouplingAuditReport report;
    report.feasible = true;
    double open_anchor_mass = 0.0, open_anchor_on_anchors = 0.0;
    std::vector<double> m1(static_cast<std::size_t>(mu1.size()), 0.0);
    std::vector<double> m2(static_cast<std::size_t>(mu2.size()), 0.0);
    for (int x = 0; x < mu1.size(); ++x)
        for (int y = 0; y < mu2.size(); ++y) {
            const double w = joint[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
            if (w == 0.0) continue;
            if (w < 0.0) throw HardAssertionError("negative joint mass in sequential bookkeeping");
            ++report.atom_count;
            m1[static_cast<std::size_t>(x)] += w;
            m2[static_cast<std::size_t>(y)] += w;
            const auto tag = partition ? classify_partitioned_pair(x, y, *partition)
                                       : classify_single_pair(x, y, single_anchor);
            if (!tag)
                throw HardAssertionError("sequential joint places mass " + std::to_string(w) +
                                         " on off-clause pair (" + std::to_string(x) + "," +
                                         std::to_string(y) + ")");
            report.clause_probability[static_cast<int>(*tag)] += w;
            if (partition && x == partition->open_anchor) {
                open_anchor_mass += w;
                if (y == partition->cut_anchor || y == partition->open_anchor)
                    open_anchor_on_anchors += w;
            }
        }
    KahanSum tv1, tv2;
    for (int x = 0; x < mu1.size(); ++x) {
        tv1.add(std::abs(m1[static_cast<std::size_t>(x)] - mu1.mass(x)));
        tv2.add(std::abs(m2[static_cast<std::size_t>(x)] - mu2.mass(x)));
    }
    report.tv_first = 0.5 * tv1.sum;
    report.tv_second = 0.5 * tv2.sum;
    if (partition && open_anchor_mass > 0.0)
        report.open_anchor_conditional = open_anchor_on_anchors / open_anchor_mass;
    return report;
}

}  // namespace

CouplingAuditReport audit_single_anchor_intervals(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                                  int anchor, const EnumerationBudget& budget) {
    budget.check_support(mu1.size());
    const auto layout = single_anchor_intervals(mu1, mu2, anchor);
    return audit_atoms(layout.atoms(), mu1, mu2, -1);
}

CouplingAuditReport audit_partitioned_intervals(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                                const DensePartition& partition,
                                                const EnumerationBudget& budget) {
    budget.check_support(mu1.size());
    const auto layout = partitioned_intervals(mu1, mu2, partition);
    return audit_atoms(layout.atoms(), mu1, mu2, partition.open_anchor);
}

CouplingAuditReport audit_single_anchor_sequential(const DenseMeasure& mu1,
                                                   const DenseMeasure& mu2, int anchor,
                                                   const EnumerationBudget& budget) {
    budget.check_support(mu1.size());
    const auto check = single_anchor_feasibility(mu1, mu2, anchor);
    if (!check.feasible) throw InfeasibleCouplingError("single-anchor coupling infeasible");
    return audit_joint(sequential_single_joint(mu1, mu2, anchor, check), mu1, mu2, nullptr,
                       anchor);
}

CouplingAuditReport audit_partitioned_sequential(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                                 const DensePartition& partition,
                                                 const EnumerationBudget& budget) {
    budget.check_support(mu1.size());
    const auto check = partitioned_feasibility(mu1, mu2, partition);
    if (!check.feasible) throw InfeasibleCouplingError("partitioned coupling infeasible");
    return audit_joint(sequential_partitioned_joint(mu1, mu2, partition, check), mu1, mu2,
                       &partition, -1);
}

ContainmentReport exhaustive_containment_check(const BlockGeometry& block,
                                               const BlockCoupler& coupler,
                                               const ContainmentOptions& options) {
    ContainmentReport report;
    const BlockSlotSpace& space = coupler.space();

    // Deterministic part of the case analysis: re-verify the anchor
    // identities this block's coupling relies on.
    BoundaryReach reach(block);
    report.anchor_identities_ok = true;
    if (coupler.oriented()) {
        const auto& anchors = coupler.oriented_anchors();
        const auto open_closed = reach.singleton_reach(
            space.block_config(space.assemble(anchors.open_class_bits, false, false), false));
        const auto cut_full = reach.singleton_reach(
            space.block_config(space.assemble(anchors.cut_class_bits, true, true), false));
        for (std::size_t i = 0; i < open_closed.size(); ++i)
            if (open_closed[i] & ~cut_full[i]) report.anchor_identities_ok = false;
    } else {
        const auto& anchor = coupler.anchor();
        const auto closed = reach.singleton_reach(
            space.block_config(space.assemble(anchor.class_bits, false, false), false));
        const auto full = reach.singleton_reach(
            space.block_config(space.assemble(anchor.class_bits, true, true), false));
        const std::uint64_t all_mask =
            block.boundary_all.size() == 64 ? ~0ULL : (1ULL << block.boundary_all.size()) - 1;
        for (std::size_t i = 0; i < closed.size(); ++i)
            if (closed[i] != (1ULL << i) || full[i] != all_mask)
                report.anchor_identities_ok = false;
    }

    const auto& sources = coupler.oriented() ? block.boundary_lower : block.boundary_all;
    if (options.exhaustive_subsets &&
        static_cast<int>(sources.size()) > options.exhaustive_subset_limit)
        throw BudgetExceededError("literal subset sweep over " + std::to_string(sources.size()) +
                                  " boundary vertices exceeds the limit " +
                                  std::to_string(options.exhaustive_subset_limit));

    Rng rng(options.seed);
    for (long s = 0; s < options.samples; ++s) {
        const auto sample = coupler.draw(rng);
        ++report.case_counts[static_cast<int>(sample.tag)];
        const auto r_first = reach.singleton_reach(sample.first);
        const auto r_second = reach.singleton_reach(sample.second);
        bool violated = false;
        for (std::size_t i = 0; i < r_first.size(); ++i)
            if (r_first[i] & ~r_second[i]) violated = true;
        if (options.exhaustive_subsets) {
            const std::uint64_t subsets = 1ULL << sources.size();
            for (std::uint64_t a = 1; a < subsets; ++a) {
                const std::uint64_t c_first = boundary_cluster(block, sample.first, a);
                const std::uint64_t c_second = boundary_cluster(block, sample.second, a);
                // cross-check the union reduction against the direct computation
                std::uint64_t u_first = 0, u_second = 0;
                for (std::size_t i = 0; i < r_first.size(); ++i)
                    if ((a >> i) & 1ULL) {
                        u_first |= r_first[i];
                        u_second |= r_second[i];
                    }
                if (u_first != c_first || u_second != c_second)
                    throw HardAssertionError("boundary cluster of a subset differs from the union "
                                             "of its singleton clusters");
                if (c_first & ~c_second) violated = true;
                ++report.subsets_checked;
            }
        }
        if (violated) ++report.violations;
        ++report.samples_checked;
    }
    return report;
}

}  // namespace perclab
