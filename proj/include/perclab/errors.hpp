#pragma once

#include <stdexcept>
#include <string>

namespace perclab {

// Error taxonomy mirrors the CLI exit-code contract:
//   validation 2, infeasible coupling 3, hard assertion 4, budget 5.

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct InfeasibleCouplingError : std::runtime_error {
    explicit InfeasibleCouplingError(const std::string& what) : std::runtime_error(what) {}
};

// A per-sample guarantee that must hold surely was violated. This always
// indicates a bug (or a broken instance), never statistical noise.
struct HardAssertionError : std::runtime_error {
    explicit HardAssertionError(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetExceededError : std::runtime_error {
    explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace perclab
