#include "perclab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

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

DenseMeasure::DenseMeasure(std::vector<double> mass) : mass_(std::move(mass)) {
    if (mass_.empty()) throw ValidationError("measure needs a nonempty support");
    KahanSum total;
    for (double m : mass_) {
        if (!(m >= 0.0)) throw ValidationError("negative probability mass");
        total.add(m);
    }
    if (std::abs(total.sum - 1.0) > 1e-12)
        throw ValidationError("masses sum to " + std::to_string(total.sum) + ", expected 1");
    cdf_.resize(mass_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
        acc += mass_[i];
        cdf_[i] = acc;
    }
    cdf_.back() = 1.0;
}

int DenseMeasure::sample(Rng& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<int>(std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1));
}

ProductMeasurePair::ProductMeasurePair(std::vector<SlotGroup> groups) : groups_(std::move(groups)) {
    offsets_.reserve(groups_.size() + 1);
    for (const auto& g : groups_) {
        if (g.count < 0) throw ValidationError("negative slot group size");
        if (!(g.p_first >= 0.0 && g.p_first <= 1.0 && g.p_second >= 0.0 && g.p_second <= 1.0))
            throw ValidationError("slot probabilities must lie in [0,1]");
        offsets_.push_back(slot_count_);
        slot_count_ += g.count;
    }
    offsets_.push_back(slot_count_);
}

namespace {

double log_mass_of(const std::vector<SlotGroup>& groups, const std::vector<int>& offsets,
                   const BitVec& x, bool second) {
    double lm = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double p = second ? groups[g].p_second : groups[g].p_first;
        int open = 0;
        for (int i = 0; i < groups[g].count; ++i) open += x.get(offsets[g] + i) ? 1 : 0;
        lm += open * std::log(p) + (groups[g].count - open) * std::log1p(-p);
    }
    return lm;
}

}  // namespace

double ProductMeasurePair::log_mass_first(const BitVec& x) const {
    return log_mass_of(groups_, offsets_, x, false);
}

double ProductMeasurePair::log_mass_second(const BitVec& x) const {
    return log_mass_of(groups_, offsets_, x, true);
}

double ProductMeasurePair::log_ratio_second_to_first(const BitVec& x) const {
    double lr = 0.0;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        const auto& gr = groups_[g];
        if (gr.p_first == gr.p_second) continue;
        int open = 0;
        for (int i = 0; i < gr.count; ++i) open += x.get(offsets_[g] + i) ? 1 : 0;
        lr += open * (std::log(gr.p_second) - std::log(gr.p_first)) +
              (gr.count - open) * (std::log1p(-gr.p_second) - std::log1p(-gr.p_first));
    }
    return lr;
}

BitVec ProductMeasurePair::sample_first(Rng& rng) const {
    BitVec x(slot_count_);
    for (std::size_t g = 0; g < groups_.size(); ++g)
        for (int i = 0; i < groups_[g].count; ++i)
            x.set(offsets_[g] + i, rng.uniform() < groups_[g].p_first);
    return x;
}

BitVec ProductMeasurePair::sample_second(Rng& rng) const {
    BitVec x(slot_count_);
    for (std::size_t g = 0; g < groups_.size(); ++g)
        for (int i = 0; i < groups_[g].count; ++i)
            x.set(offsets_[g] + i, rng.uniform() < groups_[g].p_second);
    return x;
}

bool ProductMeasurePair::in_cut(const BitVec& x) const {
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        if (!groups_[g].pinned) continue;
        for (int i = 0; i < groups_[g].count; ++i)
            if (x.get(offsets_[g] + i)) return false;
    }
    return true;
}

std::pair<double, double> ProductMeasurePair::positive_excess(Region region,
                                                              std::uint64_t max_profiles) const {
    // Fixed factors from groups that do not enter the odometer.
    double fixed_first = 1.0, fixed_second = 1.0;
    struct Table {
        std::vector<double> a, b;  // per open-count mass under first/second
    };
    std::vector<Table> tables;
    std::uint64_t profiles = 1;
    for (const auto& g : groups_) {
        const bool pin = region == Region::cut && g.pinned;
        if (pin) {
            fixed_first *= std::pow(1.0 - g.p_first, g.count);
            fixed_second *= std::pow(1.0 - g.p_second, g.count);
            continue;
        }
        if (g.p_first == g.p_second) continue;  // integrates to 1 on both sides
        Table t;
        t.a.resize(g.count + 1);
        t.b.resize(g.count + 1);
        double binom = 1.0;
        for (int k = 0; k <= g.count; ++k) {
            if (k > 0) binom = binom * (g.count - k + 1) / k;
            t.a[k] = binom * std::pow(g.p_first, k) * std::pow(1.0 - g.p_first, g.count - k);
            t.b[k] = binom * std::pow(g.p_second, k) * std::pow(1.0 - g.p_second, g.count - k);
        }
        profiles *= static_cast<std::uint64_t>(g.count) + 1;
        if (profiles > max_profiles)
            throw BudgetExceededError("excess enumeration needs " + std::to_string(profiles) +
                                      " count profiles, budget is " + std::to_string(max_profiles));
        tables.push_back(std::move(t));
    }

    KahanSum ex_first, ex_second;
    std::vector<int> counts(tables.size(), 0);
    for (;;) {
        double a = fixed_first, b = fixed_second;
        for (std::size_t g = 0; g < tables.size(); ++g) {
            a *= tables[g].a[static_cast<std::size_t>(counts[g])];
            b *= tables[g].b[static_cast<std::size_t>(counts[g])];
        }
        if (a > b) ex_first.add(a - b);
        if (b > a) ex_second.add(b - a);
        std::size_t g = 0;
        while (g < tables.size()) {
            if (++counts[g] <= static_cast<int>(tables[g].a.size()) - 1) break;
            counts[g] = 0;
            ++g;
        }
        if (g == tables.size()) break;
    }
    return {ex_first.sum, ex_second.sum};
}

}  // namespace perclab
