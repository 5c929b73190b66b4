#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "perclab/bitvec.hpp"
#include "perclab/measure.hpp"
#include "perclab/rng.hpp"

namespace perclab {

// Which clause of the coupling guarantee a sampled pair realizes. The
// single-anchor coupling only uses matched / first_anchor / second_anchor;
// the partitioned coupling adds mixed_to_cut (first lands in the cut part or
// on the open anchor while the second is forced onto the cut anchor).
enum class CouplingCase : std::uint8_t {
    matched,        // X == Y
    first_anchor,   // X is the (cut) anchor
    mixed_to_cut,   // X in cut-or-open-anchor, Y == cut anchor
    second_anchor,  // Y is the (open) anchor
};

const char* to_string(CouplingCase c);

// ---------------------------------------------------------------------------
// Enumerable instances.

struct DenseOutcome {
    int first = -1;
    int second = -1;
    CouplingCase tag = CouplingCase::matched;
};

struct SingleAnchorCheck {
    double excess_first = 0.0;   // off-anchor sum of [mu1 - mu2]^+
    double excess_second = 0.0;  // off-anchor sum of [mu2 - mu1]^+
    double anchor_mass_first = 0.0;
    double anchor_mass_second = 0.0;
    bool feasible = false;  // excess_second <= anchor_mass_first and excess_first <= anchor_mass_second
};

SingleAnchorCheck single_anchor_feasibility(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                            int anchor);

// Partition of the support into a cut part and its complement, with one
// anchor inside each. in_cut[x] != 0 marks the cut part.
struct DensePartition {
    std::vector<std::uint8_t> in_cut;
    int cut_anchor = -1;   // inside the cut part
    int open_anchor = -1;  // outside it
};

struct PartitionedCheck {
    double excess_first_cut = 0.0;    // sum over cut minus its anchor of [mu1 - mu2]^+
    double excess_first_open = 0.0;   // sum over complement minus its anchor
    double excess_second_cut = 0.0;   // same with [mu2 - mu1]^+
    double excess_second_open = 0.0;
    double cut_anchor_mass_first = 0.0, cut_anchor_mass_second = 0.0;
    double open_anchor_mass_first = 0.0, open_anchor_mass_second = 0.0;
    // Strict inequalities:
    //   excess_first_open < open_anchor_mass_second
    //   excess_first_open + open_anchor_mass_first + excess_first_cut
    //       < open_anchor_mass_second + cut_anchor_mass_second
    bool feasible = false;
};

PartitionedCheck partitioned_feasibility(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                         const DensePartition& partition);

// Two interval covers of [0,1]; one uniform picks an (X, Y) pair by reading
// its segment in each cover. Zero-length segments are dropped.
class CoupledIntervals {
public:
    struct Atom {
        double length;
        int first, second;
        CouplingCase tag;
    };

    std::pair<int, int> locate(double u) const;
    // Exact list of positive-mass atoms, by merging both covers' breakpoints.
    std::vector<Atom> atoms() const;

    // Cover segments: right endpoints plus the element owning each segment.
    std::vector<double> first_right, second_right;
    std::vector<int> first_elem, second_elem;
    // Tagging context so atoms() can label clauses.
    bool partitioned = false;
    int anchor_a = -1, anchor_b = -1;  // single: anchor,-1; partitioned: cut, open
    std::vector<std::uint8_t> in_cut;
};

CoupledIntervals single_anchor_intervals(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                         int anchor);
CoupledIntervals partitioned_intervals(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                       const DensePartition& partition);

// Interval backend: one uniform through the covers.
DenseOutcome couple_single_anchor(const CoupledIntervals& layout, Rng& rng);
DenseOutcome couple_partitioned(const CoupledIntervals& layout, Rng& rng);

// Sequential backend: draw X from mu1, then Y from the exact conditional.
// Same marginals and clause guarantees as the interval construction; the
// off-diagonal mass may be attributed to elements differently.
DenseOutcome couple_single_anchor_sequential(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                             int anchor, const SingleAnchorCheck& check, Rng& rng);
DenseOutcome couple_partitioned_sequential(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                           const DensePartition& partition,
                                           const PartitionedCheck& check, Rng& rng);

// Exact conditional tables of the sequential backend, for bookkeeping audits.
// joint[x][y] = P(X = x, Y = y).
std::vector<std::vector<double>> sequential_single_joint(const DenseMeasure& mu1,
                                                         const DenseMeasure& mu2, int anchor,
                                                         const SingleAnchorCheck& check);
std::vector<std::vector<double>> sequential_partitioned_joint(const DenseMeasure& mu1,
                                                              const DenseMeasure& mu2,
                                                              const DensePartition& partition,
                                                              const PartitionedCheck& check);

// ---------------------------------------------------------------------------
// Product-of-Bernoulli spaces (block couplings): support too large to
// enumerate, masses evaluable pointwise, excess sums by count profiles.

struct ProductOutcome {
    BitVec first, second;
    CouplingCase tag = CouplingCase::matched;
};

SingleAnchorCheck single_anchor_feasibility(const ProductMeasurePair& pair, const BitVec& anchor,
                                            std::uint64_t max_profiles);
PartitionedCheck partitioned_feasibility(const ProductMeasurePair& pair, const BitVec& cut_anchor,
                                         const BitVec& open_anchor, std::uint64_t max_profiles);

ProductOutcome couple_single_anchor_product(const ProductMeasurePair& pair, const BitVec& anchor,
                                            const SingleAnchorCheck& check, Rng& rng);
ProductOutcome couple_partitioned_product(const ProductMeasurePair& pair, const BitVec& cut_anchor,
                                          const BitVec& open_anchor, const PartitionedCheck& check,
                                          Rng& rng);

// Clause predicates, used by tests and per-sample hard assertions.
bool single_clause_holds(CouplingCase tag, int x, int y, int anchor);
bool partitioned_clause_holds(CouplingCase tag, int x, int y, const DensePartition& partition);

// First clause (in the order matched, first_anchor, mixed_to_cut,
// second_anchor) a pair realizes; nullopt when the pair is off-clause.
std::optional<CouplingCase> classify_single_pair(int x, int y, int anchor);
std::optional<CouplingCase> classify_partitioned_pair(int x, int y,
                                                      const DensePartition& partition);

}  // namespace perclab
