#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arrowlab/core.hpp"

namespace arrowlab {

// One society atom R_pid(s, from, to), from != to. Cells are indexed densely:
// index = pid * m*(m-1) + pair, pairs in lexicographic (from, to) order.
struct Cell {
    ProfileId profile;
    Alt from;
    Alt to;

    bool operator==(const Cell&) const = default;
};

using CellIndex = std::int32_t;

int pair_index(int m, Alt from, Alt to);
int pairs_per_profile(int m);

enum class Family : std::uint8_t {
    Completeness,
    Transitivity,
    Unanimity,
    IIA,
    NonDict,
};

const char* family_name(Family f);

// Ground clause over society cells. Literals are encoded as +(cell+1) for the
// positive atom and -(cell+1) for its negation.
struct Clause {
    Family family;
    std::vector<std::int32_t> lits;
    // Location metadata used for conflict classification and trace checking:
    // completeness/unanimity: (profile, x, y); transitivity: (profile, x, y, z);
    // IIA: pair (x, y) linking profile and profile2; nondict: voter.
    ProfileId profile = -1;
    ProfileId profile2 = -1;
    Alt x = -1, y = -1, z = -1;
    int voter = -1;
};

struct ConstraintStats {
    std::int64_t cells = 0;
    std::int64_t completeness = 0;
    std::int64_t transitivity = 0;
    std::int64_t unanimity = 0;
    std::int64_t iia = 0;
    std::int64_t non_dict = 0;
    std::int64_t total() const {
        return completeness + transitivity + unanimity + iia + non_dict;
    }
};

// The ground instance: every axiom family instantiated over society's cells.
// IIA is realized as equality links along a chain through each class of
// pair-agreeing profiles; chains and full pairwise links have the same unit
// closure.
class ConstraintSet {
  public:
    ConstraintSet(const ProfileSpace& space, bool non_dict);

    const ProfileSpace& space() const { return space_; }
    const Config& config() const { return space_.config(); }
    bool has_non_dict() const { return non_dict_; }

    CellIndex cell_count() const { return cell_count_; }
    CellIndex cell_index(const Cell& c) const;
    Cell cell_at(CellIndex i) const;

    const std::vector<Clause>& clauses() const { return clauses_; }
    const std::vector<std::int32_t>& clauses_with_pos(CellIndex c) const {
        return pos_occ_[static_cast<size_t>(c)];
    }
    const std::vector<std::int32_t>& clauses_with_neg(CellIndex c) const {
        return neg_occ_[static_cast<size_t>(c)];
    }

    ConstraintStats stats() const;

    std::string cell_name(CellIndex c) const;

  private:
    void add_clause(Clause cl);

    const ProfileSpace& space_;
    bool non_dict_;
    CellIndex cell_count_;
    std::vector<Clause> clauses_;
    std::vector<std::vector<std::int32_t>> pos_occ_;
    std::vector<std::vector<std::int32_t>> neg_occ_;
};

}  // namespace arrowlab
