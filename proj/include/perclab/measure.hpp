#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "perclab/bitvec.hpp"
#include "perclab/rng.hpp"

namespace perclab {

// Explicit probability vector on {0..n-1}. Masses must be nonnegative and sum
// to one within 1e-12.
class DenseMeasure {
public:
    explicit DenseMeasure(std::vector<double> mass);

    int size() const { return static_cast<int>(mass_.size()); }
    double mass(int x) const { return mass_[static_cast<std::size_t>(x)]; }
    int sample(Rng& rng) const;

private:
    std::vector<double> mass_;
    std::vector<double> cdf_;
};

// A pair of product-of-Bernoulli measures over the same slots, organized in
// groups of exchangeable slots (same probabilities within a group). Both
// measures share the slot layout; they may differ only in per-group
// probabilities. `pinned` groups define the cut part of the space: an element
// lies in the cut iff every pinned slot is zero.
struct SlotGroup {
    int count = 0;
    double p_first = 0.0;
    double p_second = 0.0;
    bool pinned = false;
};

class ProductMeasurePair {
public:
    explicit ProductMeasurePair(std::vector<SlotGroup> groups);

    int slot_count() const { return slot_count_; }
    const std::vector<SlotGroup>& groups() const { return groups_; }
    int group_offset(int g) const { return offsets_[static_cast<std::size_t>(g)]; }

    double log_mass_first(const BitVec& x) const;
    double log_mass_second(const BitVec& x) const;
    // log mu2(x) - log mu1(x); only groups with differing probabilities contribute.
    double log_ratio_second_to_first(const BitVec& x) const;

    BitVec sample_first(Rng& rng) const;
    BitVec sample_second(Rng& rng) const;

    bool in_cut(const BitVec& x) const;

    enum class Region { whole, cut };
    // (sum over the region of [mu1-mu2]^+, of [mu2-mu1]^+), computed exactly by
    // enumerating per-group open-slot counts. Slots with equal probabilities
    // integrate out, so the profile count involves only differing groups.
    std::pair<double, double> positive_excess(Region region, std::uint64_t max_profiles) const;

private:
    std::vector<SlotGroup> groups_;
    std::vector<int> offsets_;
    int slot_count_ = 0;
};

}  // namespace perclab
