#pragma once

#include <optional>
#include <vector>

#include "perclab/errors.hpp"

namespace perclab {

// Percolation parameters: bulk probability p, one probability per edge class,
// and the coupling boost epsilon (only couplings read it).
struct ParamSet {
    double p = 0.5;
    std::vector<double> q;
    std::optional<double> epsilon;

    void validate(int class_count) const {
        if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p must lie in [0,1]");
        if (static_cast<int>(q.size()) != class_count)
            throw ValidationError("expected " + std::to_string(class_count) +
                                  " class probabilities, got " + std::to_string(q.size()));
        for (double qi : q)
            if (!(qi > 0.0 && qi < 1.0)) throw ValidationError("each q_i must lie in (0,1)");
        if (epsilon && !(*epsilon > 0.0 && *epsilon < 1.0 - p))
            throw ValidationError("epsilon must lie in (0, 1-p)");
    }

    double edge_probability(int edge_class) const {
        return edge_class == 0 ? p : q[static_cast<std::size_t>(edge_class) - 1];
    }
};

}  // namespace perclab
