#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arrowlab/cnf.hpp"

namespace arrowlab {

enum class SolveMode { Decide, Enumerate };

struct SolveResult {
    bool sat = false;
    // Decide: at most one witness model. Enumerate: all models found.
    std::vector<std::vector<bool>> models;
    bool truncated = false;  // enumeration stopped at the limit
};

// Complete backtracking solver with unit propagation, independent of the
// axiom engine; enumeration proceeds via blocking clauses.
SolveResult solve_cnf(const CnfDoc& doc, SolveMode mode,
                      std::optional<std::int64_t> limit = std::nullopt);

}  // namespace arrowlab
