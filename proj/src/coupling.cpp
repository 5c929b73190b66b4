#include "perclab/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "perclab/errors.hpp"

namespace perclab {

std::optional<CouplingCase> classify_single_pair(int x, int y, int anchor) {
    if (x == y) return CouplingCase::matched;
    if (x == anchor) return CouplingCase::first_anchor;
    if (y == anchor) return CouplingCase::second_anchor;
    return std::nullopt;
}

std::optional<CouplingCase> classify_partitioned_pair(int x, int y, const DensePartition& p) {
    if (x == y) return CouplingCase::matched;
    if (x == p.cut_anchor) return CouplingCase::first_anchor;
    if ((p.in_cut[static_cast<std::size_t>(x)] || x == p.open_anchor) && y == p.cut_anchor)
        return CouplingCase::mixed_to_cut;
    if (y == p.open_anchor) return CouplingCase::second_anchor;
    return std::nullopt;
}

namespace {

constexpr long kMaxRejectionIterations = 20'000'000;

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

std::optional<CouplingCase> classify_single(int x, int y, int anchor) {
    return classify_single_pair(x, y, anchor);
}

std::optional<CouplingCase> classify_partitioned(int x, int y, const DensePartition& p) {
    return classify_partitioned_pair(x, y, p);
}

void validate_partition(const DenseMeasure& mu1, const DensePartition& p) {
    const int n = mu1.size();
    if (static_cast<int>(p.in_cut.size()) != n)
        throw ValidationError("partition size does not match support");
    if (p.cut_anchor < 0 || p.cut_anchor >= n || p.open_anchor < 0 || p.open_anchor >= n)
        throw ValidationError("partition anchors must be support elements");
    if (!p.in_cut[static_cast<std::size_t>(p.cut_anchor)])
        throw ValidationError("cut anchor must lie in the cut part");
    if (p.in_cut[static_cast<std::size_t>(p.open_anchor)])
        throw ValidationError("open anchor must lie outside the cut part");
    if (mu1.mass(p.cut_anchor) <= 0.0 || mu1.mass(p.open_anchor) <= 0.0)
        throw ValidationError("anchors need positive mass under the first measure");
}

}  // namespace

const char* to_string(CouplingCase c) {
    switch (c) {
        case CouplingCase::matched: return "matched";
        case CouplingCase::first_anchor: return "first_anchor";
        case CouplingCase::mixed_to_cut: return "mixed_to_cut";
        case CouplingCase::second_anchor: return "second_anchor";
    }
    return "?";
}

bool single_clause_holds(CouplingCase tag, int x, int y, int anchor) {
    switch (tag) {
        case CouplingCase::matched: return x == y;
        case CouplingCase::first_anchor: return x == anchor;
        case CouplingCase::second_anchor: return y == anchor;
        case CouplingCase::mixed_to_cut: return false;
    }
    return false;
}

bool partitioned_clause_holds(CouplingCase tag, int x, int y, const DensePartition& p) {
    switch (tag) {
        case CouplingCase::matched: return x == y;
        case CouplingCase::first_anchor: return x == p.cut_anchor;
        case CouplingCase::mixed_to_cut:
            return (p.in_cut[static_cast<std::size_t>(x)] || x == p.open_anchor) &&
                   y == p.cut_anchor;
        case CouplingCase::second_anchor: return y == p.open_anchor;
    }
    return false;
}

SingleAnchorCheck single_anchor_feasibility(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                            int anchor) {
    if (mu1.size() != mu2.size()) throw ValidationError("measures live on different supports");
    if (anchor < 0 || anchor >= mu1.size()) throw ValidationError("anchor is not a support element");
    if (mu1.mass(anchor) <= 0.0)
        throw ValidationError("anchor needs positive mass under the first measure");
    SingleAnchorCheck c;
    c.anchor_mass_first = mu1.mass(anchor);
    c.anchor_mass_second = mu2.mass(anchor);
    for (int y = 0; y < mu1.size(); ++y) {
        if (y == anchor) continue;
        c.excess_first += positive_part(mu1.mass(y) - mu2.mass(y));
        c.excess_second += positive_part(mu2.mass(y) - mu1.mass(y));
    }
    c.feasible = c.excess_second <= c.anchor_mass_first && c.excess_first <= c.anchor_mass_second;
    return c;
}

PartitionedCheck partitioned_feasibility(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                         const DensePartition& p) {
    if (mu1.size() != mu2.size()) throw ValidationError("measures live on different supports");
    validate_partition(mu1, p);
    PartitionedCheck c;
    c.cut_anchor_mass_first = mu1.mass(p.cut_anchor);
    c.cut_anchor_mass_second = mu2.mass(p.cut_anchor);
    c.open_anchor_mass_first = mu1.mass(p.open_anchor);
    c.open_anchor_mass_second = mu2.mass(p.open_anchor);
    for (int y = 0; y < mu1.size(); ++y) {
        if (y == p.cut_anchor || y == p.open_anchor) continue;
        const double e1 = positive_part(mu1.mass(y) - mu2.mass(y));
        const double e2 = positive_part(mu2.mass(y) - mu1.mass(y));
        if (p.in_cut[static_cast<std::size_t>(y)]) {
            c.excess_first_cut += e1;
            c.excess_second_cut += e2;
        } else {
            c.excess_first_open += e1;
            c.excess_second_open += e2;
        }
    }
    c.feasible = c.excess_first_open < c.open_anchor_mass_second &&
                 c.excess_first_open + c.open_anchor_mass_first + c.excess_first_cut <
                     c.open_anchor_mass_second + c.cut_anchor_mass_second;
    return c;
}

// ---------------------------------------------------------------------------
// Interval construction.

namespace {

struct CoverBuilder {
    std::vector<double>& right;
    std::vector<int>& elem;
    double pos = 0.0, carry = 0.0;  // compensated accumulation keeps
                                    // thousands of breakpoints at eps error

    void push(double len, int e) {
        if (len <= 0.0) return;
        const double y = len - carry;
        const double t = pos + y;
        carry = (t - pos) - y;
        pos = t;
        right.push_back(pos);
        elem.push_back(e);
    }
    void finish() {
        if (!right.empty()) right.back() = 1.0;
    }
};

}  // namespace

CoupledIntervals single_anchor_intervals(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                         int anchor) {
    const SingleAnchorCheck c = single_anchor_feasibility(mu1, mu2, anchor);
    if (!c.feasible)
        throw InfeasibleCouplingError("single-anchor coupling infeasible: off-anchor excesses " +
                                      std::to_string(c.excess_first) + "/" +
                                      std::to_string(c.excess_second) + " exceed anchor masses");
    CoupledIntervals out;
    out.anchor_a = anchor;
    CoverBuilder first{out.first_right, out.first_elem};
    CoverBuilder second{out.second_right, out.second_elem};
    for (int y = 0; y < mu1.size(); ++y) {
        if (y == anchor) continue;
        const double m = std::min(mu1.mass(y), mu2.mass(y));
        first.push(m, y);
        second.push(m, y);
    }
    first.push(mu1.mass(anchor), anchor);
    for (int y = 0; y < mu1.size(); ++y)
        if (y != anchor) first.push(positive_part(mu1.mass(y) - mu2.mass(y)), y);
    for (int y = 0; y < mu1.size(); ++y)
        if (y != anchor) second.push(positive_part(mu2.mass(y) - mu1.mass(y)), y);
    second.push(mu2.mass(anchor), anchor);
    first.finish();
    second.finish();
    return out;
}

CoupledIntervals partitioned_intervals(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                       const DensePartition& p) {
    const PartitionedCheck c = partitioned_feasibility(mu1, mu2, p);
    if (!c.feasible)
        throw InfeasibleCouplingError(
            "partitioned coupling infeasible: open-part excess " +
            std::to_string(c.excess_first_open) + " vs open anchor mass " +
            std::to_string(c.open_anchor_mass_second) + ", combined " +
            std::to_string(c.excess_first_open + c.open_anchor_mass_first + c.excess_first_cut) +
            " vs " + std::to_string(c.open_anchor_mass_second + c.cut_anchor_mass_second));
    CoupledIntervals out;
    out.partitioned = true;
    out.anchor_a = p.cut_anchor;
    out.anchor_b = p.open_anchor;
    out.in_cut = p.in_cut;
    CoverBuilder first{out.first_right, out.first_elem};
    CoverBuilder second{out.second_right, out.second_elem};
    auto is_anchor = [&](int y) { return y == p.cut_anchor || y == p.open_anchor; };
    for (int y = 0; y < mu1.size(); ++y) {
        if (is_anchor(y)) continue;
        const double m = std::min(mu1.mass(y), mu2.mass(y));
        first.push(m, y);
        second.push(m, y);
    }
    // First cover tail: cut anchor, cut excesses, open anchor, open excesses.
    first.push(mu1.mass(p.cut_anchor), p.cut_anchor);
    for (int y = 0; y < mu1.size(); ++y)
        if (!is_anchor(y) && p.in_cut[static_cast<std::size_t>(y)])
            first.push(positive_part(mu1.mass(y) - mu2.mass(y)), y);
    first.push(mu1.mass(p.open_anchor), p.open_anchor);
    for (int y = 0; y < mu1.size(); ++y)
        if (!is_anchor(y) && !p.in_cut[static_cast<std::size_t>(y)])
            first.push(positive_part(mu1.mass(y) - mu2.mass(y)), y);
    // Second cover tail: both excess blocks, then cut anchor, then open anchor.
    for (int y = 0; y < mu1.size(); ++y)
        if (!is_anchor(y) && p.in_cut[static_cast<std::size_t>(y)])
            second.push(positive_part(mu2.mass(y) - mu1.mass(y)), y);
    for (int y = 0; y < mu1.size(); ++y)
        if (!is_anchor(y) && !p.in_cut[static_cast<std::size_t>(y)])
            second.push(positive_part(mu2.mass(y) - mu1.mass(y)), y);
    second.push(mu2.mass(p.cut_anchor), p.cut_anchor);
    second.push(mu2.mass(p.open_anchor), p.open_anchor);
    first.finish();
    second.finish();
    return out;
}

std::pair<int, int> CoupledIntervals::locate(double u) const {
    auto pick = [u](const std::vector<double>& right, const std::vector<int>& elem) {
        const auto it = std::upper_bound(right.begin(), right.end(), u);
        const std::size_t i = std::min<std::size_t>(it - right.begin(), right.size() - 1);
        return elem[i];
    };
    return {pick(first_right, first_elem), pick(second_right, second_elem)};
}

std::vector<CoupledIntervals::Atom> CoupledIntervals::atoms() const {
    std::vector<Atom> out;
    std::size_t i = 0, j = 0;
    double left = 0.0;
    while (i < first_right.size() && j < second_right.size()) {
        const double r = std::min(first_right[i], second_right[j]);
        const double len = r - left;
        if (len > 0.0) {
            const int x = first_elem[i], y = second_elem[j];
            std::optional<CouplingCase> tag;
            if (partitioned) {
                DensePartition p;
                p.in_cut = in_cut;
                p.cut_anchor = anchor_a;
                p.open_anchor = anchor_b;
                tag = classify_partitioned(x, y, p);
            } else {
                tag = classify_single(x, y, anchor_a);
            }
            if (!tag)
                throw HardAssertionError("interval atom (" + std::to_string(x) + "," +
                                         std::to_string(y) + ") satisfies no coupling clause");
            out.push_back({len, x, y, *tag});
        }
        left = r;
        if (first_right[i] <= r) ++i;
        if (second_right[j] <= r) ++j;
    }
    return out;
}

DenseOutcome couple_single_anchor(const CoupledIntervals& layout, Rng& rng) {
    const auto [x, y] = layout.locate(rng.uniform());
    const auto tag = classify_single(x, y, layout.anchor_a);
    if (!tag) throw HardAssertionError("sampled pair satisfies no single-anchor clause");
    return {x, y, *tag};
}

DenseOutcome couple_partitioned(const CoupledIntervals& layout, Rng& rng) {
    const auto [x, y] = layout.locate(rng.uniform());
    DensePartition p;
    p.in_cut = layout.in_cut;
    p.cut_anchor = layout.anchor_a;
    p.open_anchor = layout.anchor_b;
    const auto tag = classify_partitioned(x, y, p);
    if (!tag) throw HardAssertionError("sampled pair satisfies no partitioned clause");
    if (x == p.open_anchor && !(y == p.cut_anchor || y == p.open_anchor))
        throw HardAssertionError("open-anchor draw paired with a non-anchor element");
    return {x, y, *tag};
}

// ---------------------------------------------------------------------------
// Sequential backend, enumerable case. Exact conditional bookkeeping: no
// rejection is needed because restricted excess distributions can be scanned.

DenseOutcome couple_single_anchor_sequential(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                             int anchor, const SingleAnchorCheck& check,
                                             Rng& rng) {
    if (!check.feasible) throw InfeasibleCouplingError("single-anchor coupling infeasible");
    const int x = mu1.sample(rng);
    int y;
    if (x != anchor) {
        const double keep = std::min(1.0, mu2.mass(x) / mu1.mass(x));
        y = rng.uniform() < keep ? x : anchor;
    } else {
        // Residual given X at the anchor: the second-measure excesses, then the
        // anchor soaks up the rest.
        const double u = rng.uniform() * check.anchor_mass_first;
        double acc = 0.0;
        y = anchor;
        for (int z = 0; z < mu1.size(); ++z) {
            if (z == anchor) continue;
            acc += positive_part(mu2.mass(z) - mu1.mass(z));
            if (u < acc) {
                y = z;
                break;
            }
        }
    }
    const auto tag = classify_single(x, y, anchor);
    if (!tag) throw HardAssertionError("sequential pair satisfies no single-anchor clause");
    return {x, y, *tag};
}

DenseOutcome couple_partitioned_sequential(const DenseMeasure& mu1, const DenseMeasure& mu2,
                                           const DensePartition& p, const PartitionedCheck& check,
                                           Rng& rng) {
    if (!check.feasible) throw InfeasibleCouplingError("partitioned coupling infeasible");
    const double excess2 = check.excess_second_cut + check.excess_second_open;
    // Second-cover breakpoints, relative to the shared diagonal section:
    // [cut excesses][open excesses][cut anchor][open anchor].
    const double second_cut_anchor_right = excess2 + check.cut_anchor_mass_second;
    const int x = mu1.sample(rng);
    int y;
    if (x == p.cut_anchor) {
        const double u = rng.uniform() * check.cut_anchor_mass_first;
        if (u < check.excess_second_cut) {
            y = p.cut_anchor;
            double acc = 0.0;
            for (int z = 0; z < mu1.size(); ++z) {
                if (z == p.cut_anchor || z == p.open_anchor ||
                    !p.in_cut[static_cast<std::size_t>(z)])
                    continue;
                acc += positive_part(mu2.mass(z) - mu1.mass(z));
                if (u < acc) {
                    y = z;
                    break;
                }
            }
        } else if (u < excess2) {
            const double v = u - check.excess_second_cut;
            y = p.open_anchor;
            double acc = 0.0;
            for (int z = 0; z < mu1.size(); ++z) {
                if (z == p.cut_anchor || z == p.open_anchor ||
                    p.in_cut[static_cast<std::size_t>(z)])
                    continue;
                acc += positive_part(mu2.mass(z) - mu1.mass(z));
                if (v < acc) {
                    y = z;
                    break;
                }
            }
        } else {
            y = u < second_cut_anchor_right ? p.cut_anchor : p.open_anchor;
        }
    } else if (x == p.open_anchor) {
        const double start = check.cut_anchor_mass_first + check.excess_first_cut;
        const double u = start + rng.uniform() * check.open_anchor_mass_first;
        y = u < second_cut_anchor_right ? p.cut_anchor : p.open_anchor;
    } else {
        const double keep = std::min(1.0, mu2.mass(x) / mu1.mass(x));
        if (rng.uniform() < keep) {
            y = x;
        } else if (p.in_cut[static_cast<std::size_t>(x)]) {
            const double u = check.cut_anchor_mass_first + rng.uniform() * check.excess_first_cut;
            y = u < second_cut_anchor_right ? p.cut_anchor : p.open_anchor;
        } else {
            y = p.open_anchor;
        }
    }
    const auto tag = classify_partitioned(x, y, p);
    if (!tag) throw HardAssertionError("sequential pair satisfies no partitioned clause");
    if (x == p.open_anchor && !(y == p.cut_anchor || y == p.open_anchor))
        throw HardAssertionError("open-anchor draw paired with a non-anchor element");
    return {x, y, *tag};
}

std::vector<std::vector<double>> sequential_single_joint(const DenseMeasure& mu1,
                                                         const DenseMeasure& mu2, int anchor,
                                                         const SingleAnchorCheck& check) {
    const int n = mu1.size();
    std::vector<std::vector<double>> joint(n, std::vector<double>(n, 0.0));
    for (int x = 0; x < n; ++x) {
        if (x == anchor) continue;
        const double m = std::min(mu1.mass(x), mu2.mass(x));
        joint[x][x] = m;
        joint[x][anchor] = mu1.mass(x) - m;
    }
    double residual = check.anchor_mass_first;
    for (int y = 0; y < n; ++y) {
        if (y == anchor) continue;
        const double e2 = positive_part(mu2.mass(y) - mu1.mass(y));
        joint[anchor][y] = e2;
        residual -= e2;
    }
    joint[anchor][anchor] = positive_part(residual);
    return joint;
}

std::vector<std::vector<double>> sequential_partitioned_joint(const DenseMeasure& mu1,
                                                              const DenseMeasure& mu2,
                                                              const DensePartition& p,
                                                              const PartitionedCheck& check) {
    const int n = mu1.size();
    std::vector<std::vector<double>> joint(n, std::vector<double>(n, 0.0));
    const double excess2 = check.excess_second_cut + check.excess_second_open;
    const double boundary = excess2 + check.cut_anchor_mass_second;  // cut/open split in 2nd cover
    auto overlap_with_cut_anchor = [&](double lo, double len) {
        if (len <= 0.0) return 0.0;
        const double hi = lo + len;
        return positive_part(std::min(hi, boundary) - std::max(lo, excess2));
    };
    for (int x = 0; x < n; ++x) {
        if (x == p.cut_anchor || x == p.open_anchor) continue;
        const double m = std::min(mu1.mass(x), mu2.mass(x));
        joint[x][x] = m;
        const double e1 = mu1.mass(x) - m;
        if (e1 <= 0.0) continue;
        if (p.in_cut[static_cast<std::size_t>(x)]) {
            // this element's excess is spread uniformly over the cut excess block
            const double lo = check.cut_anchor_mass_first;
            const double to_cut = check.excess_first_cut > 0.0
                                      ? e1 * overlap_with_cut_anchor(lo, check.excess_first_cut) /
                                            check.excess_first_cut
                                      : 0.0;
            joint[x][p.cut_anchor] = to_cut;
            joint[x][p.open_anchor] = e1 - to_cut;
        } else {
            joint[x][p.open_anchor] = e1;
        }
    }
    {
        const int x = p.cut_anchor;
        double used = 0.0;
        for (int y = 0; y < n; ++y) {
            if (y == p.cut_anchor || y == p.open_anchor) continue;
            const double e2 = positive_part(mu2.mass(y) - mu1.mass(y));
            joint[x][y] = e2;
            used += e2;
        }
        const double self = positive_part(
            std::min(check.cut_anchor_mass_first, boundary) - excess2);
        joint[x][x] = self;
        joint[x][p.open_anchor] = positive_part(check.cut_anchor_mass_first - used - self);
    }
    {
        const int x = p.open_anchor;
        const double lo = check.cut_anchor_mass_first + check.excess_first_cut;
        const double to_cut = overlap_with_cut_anchor(lo, check.open_anchor_mass_first);
        joint[x][p.cut_anchor] = to_cut;
        joint[x][x] = check.open_anchor_mass_first - to_cut;
    }
    return joint;
}

// ---------------------------------------------------------------------------
// Product spaces.

SingleAnchorCheck single_anchor_feasibility(const ProductMeasurePair& pair, const BitVec& anchor,
                                            std::uint64_t max_profiles) {
    if (anchor.size() != pair.slot_count()) throw ValidationError("anchor slot count mismatch");
    const double lm1 = pair.log_mass_first(anchor);
    if (!(lm1 > -std::numeric_limits<double>::infinity()))
        throw ValidationError("anchor needs positive mass under the first measure");
    SingleAnchorCheck c;
    c.anchor_mass_first = std::exp(lm1);
    c.anchor_mass_second = std::exp(pair.log_mass_second(anchor));
    const auto [w1, w2] = pair.positive_excess(ProductMeasurePair::Region::whole, max_profiles);
    c.excess_first = positive_part(w1 - positive_part(c.anchor_mass_first - c.anchor_mass_second));
    c.excess_second = positive_part(w2 - positive_part(c.anchor_mass_second - c.anchor_mass_first));
    c.feasible = c.excess_second <= c.anchor_mass_first && c.excess_first <= c.anchor_mass_second;
    return c;
}

PartitionedCheck partitioned_feasibility(const ProductMeasurePair& pair, const BitVec& cut_anchor,
                                         const BitVec& open_anchor, std::uint64_t max_profiles) {
    if (cut_anchor.size() != pair.slot_count() || open_anchor.size() != pair.slot_count())
        throw ValidationError("anchor slot count mismatch");
    if (!pair.in_cut(cut_anchor)) throw ValidationError("cut anchor must lie in the cut part");
    if (pair.in_cut(open_anchor)) throw ValidationError("open anchor must lie outside the cut part");
    const double lca1 = pair.log_mass_first(cut_anchor);
    const double loa1 = pair.log_mass_first(open_anchor);
    if (!(lca1 > -std::numeric_limits<double>::infinity()) ||
        !(loa1 > -std::numeric_limits<double>::infinity()))
        throw ValidationError("anchors need positive mass under the first measure");
    PartitionedCheck c;
    c.cut_anchor_mass_first = std::exp(lca1);
    c.cut_anchor_mass_second = std::exp(pair.log_mass_second(cut_anchor));
    c.open_anchor_mass_first = std::exp(loa1);
    c.open_anchor_mass_second = std::exp(pair.log_mass_second(open_anchor));
    const auto [w1, w2] = pair.positive_excess(ProductMeasurePair::Region::whole, max_profiles);
    const auto [c1, c2] = pair.positive_excess(ProductMeasurePair::Region::cut, max_profiles);
    c.excess_first_cut = positive_part(
        c1 - positive_part(c.cut_anchor_mass_first - c.cut_anchor_mass_second));
    c.excess_second_cut = positive_part(
        c2 - positive_part(c.cut_anchor_mass_second - c.cut_anchor_mass_first));
    c.excess_first_open = positive_part(
        (w1 - c1) - positive_part(c.open_anchor_mass_first - c.open_anchor_mass_second));
    c.excess_second_open = positive_part(
        (w2 - c2) - positive_part(c.open_anchor_mass_second - c.open_anchor_mass_first));
    c.feasible = c.excess_first_open < c.open_anchor_mass_second &&
                 c.excess_first_open + c.open_anchor_mass_first + c.excess_first_cut <
                     c.open_anchor_mass_second + c.cut_anchor_mass_second;
    return c;
}

ProductOutcome couple_single_anchor_product(const ProductMeasurePair& pair, const BitVec& anchor,
                                            const SingleAnchorCheck& check, Rng& rng) {
    if (!check.feasible) throw InfeasibleCouplingError("single-anchor coupling infeasible");
    ProductOutcome out;
    out.first = pair.sample_first(rng);
    if (out.first != anchor) {
        const double keep = std::min(1.0, std::exp(pair.log_ratio_second_to_first(out.first)));
        out.second = rng.uniform() < keep ? out.first : anchor;
    } else if (check.excess_second > 0.0 &&
               rng.uniform() < check.excess_second / check.anchor_mass_first) {
        // Draw from the second measure's excess by rejection.
        long iters = 0;
        for (;;) {
            if (++iters > kMaxRejectionIterations)
                throw HardAssertionError("excess rejection sampler exhausted its budget");
            BitVec z = pair.sample_second(rng);
            if (z == anchor) continue;
            const double accept = 1.0 - std::exp(-pair.log_ratio_second_to_first(z));
            if (accept > 0.0 && rng.uniform() < accept) {
                out.second = std::move(z);
                break;
            }
        }
    } else {
        out.second = anchor;
    }
    if (out.first == out.second)
        out.tag = CouplingCase::matched;
    else if (out.first == anchor)
        out.tag = CouplingCase::first_anchor;
    else if (out.second == anchor)
        out.tag = CouplingCase::second_anchor;
    else
        throw HardAssertionError("product pair satisfies no single-anchor clause");
    return out;
}

ProductOutcome couple_partitioned_product(const ProductMeasurePair& pair, const BitVec& cut_anchor,
                                          const BitVec& open_anchor, const PartitionedCheck& check,
                                          Rng& rng) {
    if (!check.feasible) throw InfeasibleCouplingError("partitioned coupling infeasible");
    const double excess2 = check.excess_second_cut + check.excess_second_open;
    const double second_cut_anchor_right = excess2 + check.cut_anchor_mass_second;
    auto reject_from_excess = [&](bool want_cut) {
        long iters = 0;
        for (;;) {
            if (++iters > kMaxRejectionIterations)
                throw HardAssertionError("excess rejection sampler exhausted its budget");
            BitVec z = pair.sample_second(rng);
            if (pair.in_cut(z) != want_cut) continue;
            if (z == cut_anchor || z == open_anchor) continue;
            const double accept = 1.0 - std::exp(-pair.log_ratio_second_to_first(z));
            if (accept > 0.0 && rng.uniform() < accept) return z;
        }
    };
    ProductOutcome out;
    out.first = pair.sample_first(rng);
    if (out.first == cut_anchor) {
        const double u = rng.uniform() * check.cut_anchor_mass_first;
        if (u < check.excess_second_cut)
            out.second = reject_from_excess(true);
        else if (u < excess2)
            out.second = reject_from_excess(false);
        else
            out.second = u < second_cut_anchor_right ? cut_anchor : open_anchor;
    } else if (out.first == open_anchor) {
        const double start = check.cut_anchor_mass_first + check.excess_first_cut;
        const double u = start + rng.uniform() * check.open_anchor_mass_first;
        out.second = u < second_cut_anchor_right ? cut_anchor : open_anchor;
    } else {
        const double keep = std::min(1.0, std::exp(pair.log_ratio_second_to_first(out.first)));
        if (rng.uniform() < keep) {
            out.second = out.first;
        } else if (pair.in_cut(out.first)) {
            const double u = check.cut_anchor_mass_first + rng.uniform() * check.excess_first_cut;
            out.second = u < second_cut_anchor_right ? cut_anchor : open_anchor;
        } else {
            out.second = open_anchor;
        }
    }
    if (out.first == out.second)
        out.tag = CouplingCase::matched;
    else if (out.first == cut_anchor)
        out.tag = CouplingCase::first_anchor;
    else if ((pair.in_cut(out.first) || out.first == open_anchor) && out.second == cut_anchor)
        out.tag = CouplingCase::mixed_to_cut;
    else if (out.second == open_anchor)
        out.tag = CouplingCase::second_anchor;
    else
        throw HardAssertionError("product pair satisfies no partitioned clause");
    if (out.first == open_anchor && !(out.second == cut_anchor || out.second == open_anchor))
        throw HardAssertionError("open-anchor draw paired with a non-anchor element");
    return out;
}

}  // namespace perclab
