#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "arrowlab/constraints.hpp"

namespace arrowlab {

enum class TriState : std::uint8_t { Unknown, True, False };

inline TriState negate(TriState v) {
    return v == TriState::True ? TriState::False
         : v == TriState::False ? TriState::True
                                : TriState::Unknown;
}

enum class ReasonTag : std::uint8_t {
    Decision,
    Unanimity,
    Transitivity,
    Completeness,
    IIA,
    NonDictClause,
};

struct Reason {
    ReasonTag tag;
    std::int32_t clause = -1;  // index into ConstraintSet, -1 for decisions
};

struct Step {
    CellIndex cell;
    TriState value;
    Reason reason;
};

struct Conflict {
    enum class Kind : std::uint8_t {
        TransitivityViolation,
        CompletenessViolation,
        DictatorshipViolation,
    };
    Kind kind;
    std::int32_t clause;  // the falsified constraint instance
    int voter = -1;       // set for DictatorshipViolation
};

const char* conflict_kind_name(Conflict::Kind k);

// Tri-state assignment over society cells with a replayable trail and
// clause satisfaction counters for unit propagation. Single-threaded;
// backtracking restores by trail truncation.
class Engine {
  public:
    explicit Engine(const ConstraintSet& cs);

    const ConstraintSet& constraints() const { return cs_; }

    TriState state(CellIndex c) const { return states_[static_cast<size_t>(c)]; }
    bool complete() const { return assigned_ == cs_.cell_count(); }
    std::int64_t assigned_count() const { return assigned_; }

    const std::vector<Step>& trail() const { return trail_; }
    size_t mark() const { return trail_.size(); }
    void undo_to(size_t mark);

    // Records the assignment; propagation happens separately.
    // Throws StateError if the cell is already assigned.
    void assign(CellIndex c, TriState v, Reason r);

    // Unit propagation to fixpoint over all ground constraints. Steps are
    // appended to the trail; the first conflict (classified, tie-broken by
    // lowest profile then pair) is returned instead of being raised.
    // When rng is given, the pending queue is drained in random order.
    std::optional<Conflict> propagate_to_fixpoint(std::mt19937_64* rng = nullptr);

    // The cells a non-decision step was derived from (the other literals of
    // its clause). Empty for decisions and unanimity seeds.
    std::vector<CellIndex> antecedents(const Step& s) const;

    // Seeds every unit clause (unanimity) and runs to fixpoint.
    std::optional<Conflict> assert_initial_units(std::mt19937_64* rng = nullptr);

    // True iff no clause is currently falsified.
    bool consistent() const { return falsified_.empty(); }

  private:
    bool lit_true(std::int32_t lit) const;
    bool lit_false(std::int32_t lit) const;
    void apply_counts(CellIndex c, TriState v, int delta);
    std::optional<Conflict> classify_conflicts() const;

    const ConstraintSet& cs_;
    std::vector<TriState> states_;
    std::vector<Step> trail_;
    std::int64_t assigned_ = 0;
    std::vector<std::int32_t> n_sat_;
    std::vector<std::int32_t> n_false_;
    std::vector<std::int32_t> falsified_;  // currently falsified clauses
    // Trail indices awaiting propagation. IIA equalities are diffused to
    // fixpoint before any other family fires, so every class of
    // pair-agreeing profiles is uniformly assigned or untouched whenever a
    // completeness/transitivity unit fires; a falsified clause is then never
    // an equality link.
    std::vector<std::int32_t> q_iia_, q_main_;
    size_t h_iia_ = 0, h_main_ = 0;
};

// All voters whose every strict preference is socially reproduced.
// Requires a complete assignment.
std::vector<int> detect_dictators(const Engine& eng);

}  // namespace arrowlab
