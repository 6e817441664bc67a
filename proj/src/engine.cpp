#include "arrowlab/engine.hpp"

#include <algorithm>
#include <limits>

namespace arrowlab {

const char* conflict_kind_name(Conflict::Kind k) {
    switch (k) {
        case Conflict::Kind::TransitivityViolation: return "transitivity";
        case Conflict::Kind::CompletenessViolation: return "completeness";
        case Conflict::Kind::DictatorshipViolation: return "dictatorship";
    }
    return "?";
}

Engine::Engine(const ConstraintSet& cs) : cs_(cs) {
    states_.assign(static_cast<size_t>(cs.cell_count()), TriState::Unknown);
    n_sat_.assign(cs.clauses().size(), 0);
    n_false_.assign(cs.clauses().size(), 0);
}

bool Engine::lit_true(std::int32_t lit) const {
    TriState v = states_[static_cast<size_t>(std::abs(lit) - 1)];
    return lit > 0 ? v == TriState::True : v == TriState::False;
}

bool Engine::lit_false(std::int32_t lit) const {
    TriState v = states_[static_cast<size_t>(std::abs(lit) - 1)];
    return lit > 0 ? v == TriState::False : v == TriState::True;
}

void Engine::apply_counts(CellIndex c, TriState v, int delta) {
    const auto& sat_occ = v == TriState::True ? cs_.clauses_with_pos(c) : cs_.clauses_with_neg(c);
    const auto& fal_occ = v == TriState::True ? cs_.clauses_with_neg(c) : cs_.clauses_with_pos(c);
    for (std::int32_t cl : sat_occ) n_sat_[static_cast<size_t>(cl)] += delta;
    for (std::int32_t cl : fal_occ) {
        auto len = static_cast<std::int32_t>(cs_.clauses()[static_cast<size_t>(cl)].lits.size());
        std::int32_t before = n_false_[static_cast<size_t>(cl)];
        n_false_[static_cast<size_t>(cl)] = before + delta;
        if (delta > 0 && before + delta == len) {
            falsified_.push_back(cl);
        } else if (delta < 0 && before == len) {
            falsified_.erase(std::find(falsified_.begin(), falsified_.end(), cl));
        }
    }
}

void Engine::assign(CellIndex c, TriState v, Reason r) {
    if (v == TriState::Unknown) throw StateError("cannot assign Unknown");
    if (states_[static_cast<size_t>(c)] != TriState::Unknown)
        throw StateError("cell assigned twice: " + cs_.cell_name(c));
    states_[static_cast<size_t>(c)] = v;
    ++assigned_;
    q_iia_.push_back(static_cast<std::int32_t>(trail_.size()));
    q_main_.push_back(static_cast<std::int32_t>(trail_.size()));
    trail_.push_back(Step{c, v, r});
    apply_counts(c, v, +1);
}

void Engine::undo_to(size_t mark) {
    while (trail_.size() > mark) {
        const Step& s = trail_.back();
        apply_counts(s.cell, s.value, -1);
        states_[static_cast<size_t>(s.cell)] = TriState::Unknown;
        --assigned_;
        trail_.pop_back();
    }
    auto drop = [mark](std::vector<std::int32_t>& q, size_t& head) {
        auto keep = std::remove_if(q.begin() + static_cast<std::ptrdiff_t>(head), q.end(),
                                   [mark](std::int32_t i) {
                                       return static_cast<size_t>(i) >= mark;
                                   });
        q.erase(keep, q.end());
        if (head > q.size()) head = q.size();
    };
    drop(q_iia_, h_iia_);
    drop(q_main_, h_main_);
}

std::optional<Conflict> Engine::classify_conflicts() const {
    const Clause* best = nullptr;
    std::int32_t best_idx = -1;
    auto key = [this](std::int32_t idx) {
        const Clause& cl = cs_.clauses()[static_cast<size_t>(idx)];
        ProfileId p = cl.family == Family::NonDict ? std::numeric_limits<ProfileId>::max()
                                                   : cl.profile;
        return std::tuple(p, cl.x, cl.y, cl.z, idx);
    };
    for (std::int32_t idx : falsified_) {
        if (best == nullptr || key(idx) < key(best_idx)) {
            best = &cs_.clauses()[static_cast<size_t>(idx)];
            best_idx = idx;
        }
    }
    if (best == nullptr) return std::nullopt;
    Conflict c;
    c.clause = best_idx;
    switch (best->family) {
        case Family::Transitivity:
            c.kind = Conflict::Kind::TransitivityViolation;
            break;
        case Family::Completeness:
            c.kind = Conflict::Kind::CompletenessViolation;
            break;
        case Family::NonDict:
            c.kind = Conflict::Kind::DictatorshipViolation;
            c.voter = best->voter;
            break;
        default:
            throw StateError("falsified equality clause; encoding bug");
    }
    return c;
}

std::optional<Conflict> Engine::propagate_to_fixpoint(std::mt19937_64* rng) {
    while (true) {
        if (!falsified_.empty()) return classify_conflicts();
        const bool iia_phase = h_iia_ < q_iia_.size();
        if (!iia_phase && h_main_ >= q_main_.size()) return std::nullopt;
        auto& q = iia_phase ? q_iia_ : q_main_;
        auto& head = iia_phase ? h_iia_ : h_main_;
        if (rng != nullptr) {
            std::uniform_int_distribution<size_t> pick(head, q.size() - 1);
            std::swap(q[head], q[pick(*rng)]);
        }
        const Step step = trail_[static_cast<size_t>(q[head++])];
        const auto& occ = step.value == TriState::True ? cs_.clauses_with_neg(step.cell)
                                                       : cs_.clauses_with_pos(step.cell);
        for (std::int32_t idx : occ) {
            const Clause& cl = cs_.clauses()[static_cast<size_t>(idx)];
            // Non-dictatorship clauses only ever close a branch; they are
            // never a unit-derivation source, matching the trace rule set.
            if (cl.family == Family::NonDict) continue;
            if (iia_phase != (cl.family == Family::IIA)) continue;
            auto len = static_cast<std::int32_t>(cl.lits.size());
            if (n_sat_[static_cast<size_t>(idx)] > 0) continue;
            if (n_false_[static_cast<size_t>(idx)] != len - 1) continue;
            for (std::int32_t lit : cl.lits) {
                CellIndex c = std::abs(lit) - 1;
                if (states_[static_cast<size_t>(c)] != TriState::Unknown) continue;
                ReasonTag tag;
                switch (cl.family) {
                    case Family::Completeness: tag = ReasonTag::Completeness; break;
                    case Family::Transitivity: tag = ReasonTag::Transitivity; break;
                    case Family::IIA: tag = ReasonTag::IIA; break;
                    default: tag = ReasonTag::Unanimity; break;
                }
                assign(c, lit > 0 ? TriState::True : TriState::False, Reason{tag, idx});
                break;
            }
        }
    }
}

std::vector<CellIndex> Engine::antecedents(const Step& s) const {
    std::vector<CellIndex> out;
    if (s.reason.clause < 0) return out;
    const Clause& cl = cs_.clauses()[static_cast<size_t>(s.reason.clause)];
    for (std::int32_t lit : cl.lits) {
        CellIndex c = std::abs(lit) - 1;
        if (c != s.cell) out.push_back(c);
    }
    return out;
}

std::optional<Conflict> Engine::assert_initial_units(std::mt19937_64* rng) {
    const auto& clauses = cs_.clauses();
    for (size_t i = 0; i < clauses.size(); ++i) {
        const Clause& cl = clauses[i];
        if (cl.family != Family::Unanimity) continue;
        std::int32_t lit = cl.lits[0];
        CellIndex c = std::abs(lit) - 1;
        if (states_[static_cast<size_t>(c)] != TriState::Unknown) continue;
        assign(c, lit > 0 ? TriState::True : TriState::False,
               Reason{ReasonTag::Unanimity, static_cast<std::int32_t>(i)});
    }
    return propagate_to_fixpoint(rng);
}

std::vector<int> detect_dictators(const Engine& eng) {
    if (!eng.complete()) throw StateError("assignment incomplete");
    const ConstraintSet& cs = eng.constraints();
    const ProfileSpace& space = cs.space();
    const Config& cfg = cs.config();
    int m = cfg.alternatives;
    std::vector<int> out;
    for (int d = 0; d < cfg.voters; ++d) {
        bool dictator = true;
        for (ProfileId p = 0; p < space.count() && dictator; ++p)
            for (Alt x = 0; x < m && dictator; ++x)
                for (Alt y = 0; y < m; ++y) {
                    if (x == y || !space.strict_prefers(p, d, x, y)) continue;
                    if (eng.state(cs.cell_index(Cell{p, x, y})) != TriState::True ||
                        eng.state(cs.cell_index(Cell{p, y, x})) != TriState::False) {
                        dictator = false;
                        break;
                    }
                }
        if (dictator) out.push_back(d);
    }
    return out;
}

}  // namespace arrowlab
