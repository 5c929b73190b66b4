#pragma once

#include <cstdint>
#include <vector>

#include "perclab/block_coupling.hpp"
#include "perclab/connectivity.hpp"
#include "perclab/coupling.hpp"
#include "perclab/ladder_window.hpp"
#include "perclab/params.hpp"

namespace perclab {

// Brute-force ground truth on tiny instances. Budgets are enforced up front;
// nothing is silently truncated.
struct EnumerationBudget {
    int max_edges = 22;            // exhaustive configuration sweeps
    long max_support = 1 << 16;    // enumerable coupling supports

    void check_edges(int edges) const;
    void check_support(long support) const;
};

// Sum of product-measure masses over every configuration satisfying the
// query, with compensated summation. Deterministic for any thread count.
double exact_reach_probability(const LadderWindow& window, const EdgeClassMap& classes,
                               const ParamSet& params, const ReachQuery& query,
                               const EnumerationBudget& budget = {}, int threads = 1);

struct CouplingAuditReport {
    bool feasible = false;
    double tv_first = 0.0;   // total-variation error of the first marginal
    double tv_second = 0.0;
    double clause_probability[4] = {0, 0, 0, 0};  // by CouplingCase value
    // P(second lands on an anchor | first is the open anchor); exactly 1 for
    // any valid partitioned coupling. Reported as 1 when the conditioning
    // event has probability 0.
    double open_anchor_conditional = 1.0;
    long atom_count = 0;
};

// Interval-construction audits: enumerate the joint law's atoms exactly.
CouplingAuditReport audit_single_anchor_intervals(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                                  int anchor, const EnumerationBudget& budget = {});
CouplingAuditReport audit_partitioned_intervals(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                                const DensePartition& partition,
                                                const EnumerationBudget& budget = {});

// Sequential-backend audits: exact conditional bookkeeping, no sampling.
CouplingAuditReport audit_single_anchor_sequential(const DenseMeasure& mu1,
                                                   const DenseMeasure& mu2, int anchor,
                                                   const EnumerationBudget& budget = {});
CouplingAuditReport audit_partitioned_sequential(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                                 const DensePartition& partition,
                                                 const EnumerationBudget& budget = {});

struct ContainmentOptions {
    long samples = 1000;
    std::uint64_t seed = 1;
    // Also sweep every nonempty boundary subset literally (only allowed for
    // small boundaries; singleton reach already decides all subsets exactly,
    // since the boundary cluster of a union is the union of the clusters).
    bool exhaustive_subsets = false;
    int exhaustive_subset_limit = 16;
};

struct ContainmentReport {
    bool anchor_identities_ok = false;
    long samples_checked = 0;
    long violations = 0;
    long subsets_checked = 0;       // literal subset sweeps, when enabled
    long case_counts[4] = {0, 0, 0, 0};
    bool ok() const { return anchor_identities_ok && violations == 0; }
};

// Draws coupled block pairs and verifies, per sample and per boundary subset,
// that the first configuration's boundary cluster map is contained in the
// second's. The anchor identities are re-verified as the deterministic part
// of the case analysis.
ContainmentReport exhaustive_containment_check(const BlockGeometry& block,
                                               const BlockCoupler& coupler,
                                               const ContainmentOptions& options);

}  // namespace perclab
