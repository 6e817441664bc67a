#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "arrowlab/engine.hpp"

namespace arrowlab {

// Raised when a branch reaches a complete conflict-free assignment while the
// non-dictatorship clauses are asserted. Unreachable unless the encoding is
// broken, so it is a hard error, never a silent fallback.
struct TheoremFalsifiedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RefBranch;

// Binary split node: True branch explored before False.
struct RefNode {
    CellIndex cell;
    std::unique_ptr<RefBranch> on_true;
    std::unique_ptr<RefBranch> on_false;
};

struct RefBranch {
    // Propagation steps after this decision (empty when the partner cell of
    // the pair is decided first, before any propagation).
    std::vector<Step> steps;
    std::unique_ptr<RefNode> child;    // nullptr at a leaf
    std::optional<Conflict> conflict;  // set at a leaf
    bool is_leaf() const { return !child; }
};

struct Refutation {
    Config cfg;
    std::uint64_t fingerprint = 0;
    std::vector<Step> preamble;  // initial unanimity seeding and its closure
    std::unique_ptr<RefNode> root;

    // The root-level cases: conflicts of the (up to four) branches obtained
    // by resolving both cells of the root split pair, in (T,T),(T,F),(F,T),
    // (F,F) order; nested subtrees are reported with kind unset.
    struct RootCase {
        TriState first, second;
        std::optional<Conflict> conflict;  // nullopt when the case nests further
    };
    std::vector<RootCase> root_cases() const;
};

// The next cell to split: scan profiles in id order for a pair on which one
// voter's strict preference is opposed by every other voter's strict reverse
// preference, lowest ordered pair first, cell still Unknown. Falls back to
// the lowest-indexed Unknown cell.
CellIndex pick_split_cell(const Engine& eng);

// Case-split refutation with the non-dictatorship clauses asserted. Splits
// resolve both cells of the chosen pair before propagating, so every
// "logically possible social preference" over the pair appears as a case.
Refutation refute(const Config& cfg);

struct Model {
    std::vector<TriState> cells;
    std::vector<int> dictators;
};

struct ModelList {
    std::vector<Model> models;
    bool truncated = false;  // limit reached before the enumeration finished
};

// Exhaustive enumeration of complete assignments satisfying completeness,
// transitivity, unanimity and IIA (no non-dictatorship clauses).
ModelList enumerate_models(const Config& cfg,
                           std::optional<std::int64_t> limit = std::nullopt);

}  // namespace arrowlab
