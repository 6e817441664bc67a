#include "arrowlab/search.hpp"

#include <functional>

namespace arrowlab {

namespace {

CellIndex partner_cell(const ConstraintSet& cs, CellIndex c) {
    Cell cell = cs.cell_at(c);
    return cs.cell_index(Cell{cell.profile, cell.to, cell.from});
}

class Refuter {
  public:
    explicit Refuter(Engine& eng) : eng_(eng), cs_(eng.constraints()) {}

    std::unique_ptr<RefNode> split(CellIndex cell, bool couple_partner) {
        auto node = std::make_unique<RefNode>();
        node->cell = cell;
        for (TriState v : {TriState::True, TriState::False}) {
            auto branch = std::make_unique<RefBranch>();
            size_t mark = eng_.mark();
            eng_.assign(cell, v, Reason{ReasonTag::Decision, -1});
            CellIndex partner = partner_cell(cs_, cell);
            if (couple_partner && eng_.state(partner) == TriState::Unknown) {
                // Resolve the whole pair before propagating so all four
                // social preferences over it appear as explicit cases.
                branch->child = split(partner, false);
            } else {
                size_t s0 = eng_.mark();
                auto conflict = eng_.propagate_to_fixpoint();
                branch->steps.assign(eng_.trail().begin() + static_cast<std::ptrdiff_t>(s0),
                                     eng_.trail().end());
                if (conflict) {
                    branch->conflict = *conflict;
                } else if (eng_.complete()) {
                    throw TheoremFalsifiedError(
                        "complete conflict-free assignment under non-dictatorship");
                } else {
                    branch->child = split(pick_split_cell(eng_), true);
                }
            }
            eng_.undo_to(mark);
            (v == TriState::True ? node->on_true : node->on_false) = std::move(branch);
        }
        return node;
    }

  private:
    Engine& eng_;
    const ConstraintSet& cs_;
};

}  // namespace

CellIndex pick_split_cell(const Engine& eng) {
    const ConstraintSet& cs = eng.constraints();
    const ProfileSpace& space = cs.space();
    const Config& cfg = cs.config();
    int m = cfg.alternatives;
    for (ProfileId p = 0; p < space.count(); ++p) {
        for (Alt x = 0; x < m; ++x)
            for (Alt y = 0; y < m; ++y) {
                if (x == y) continue;
                CellIndex c = cs.cell_index(Cell{p, x, y});
                if (eng.state(c) != TriState::Unknown) continue;
                // One voter strictly prefers x to y; everyone else holds the
                // opposite strict preference.
                for (int lone = 0; lone < cfg.voters; ++lone) {
                    if (!space.strict_prefers(p, lone, x, y)) continue;
                    bool opposed = true;
                    for (int v = 0; v < cfg.voters; ++v) {
                        if (v == lone) continue;
                        if (!space.strict_prefers(p, v, y, x)) {
                            opposed = false;
                            break;
                        }
                    }
                    if (opposed) return c;
                }
            }
    }
    for (CellIndex c = 0; c < cs.cell_count(); ++c)
        if (eng.state(c) == TriState::Unknown) return c;
    throw StateError("no undetermined cell to split");
}

Refutation refute(const Config& cfg) {
    cfg.validate();
    if (cfg.alternatives < 3) throw ParameterError("refutation needs at least 3 alternatives");
    OrderEnumeration orders(cfg.alternatives);
    ProfileSpace space(cfg, orders);
    ConstraintSet cs(space, /*non_dict=*/true);
    Engine eng(cs);

    Refutation r;
    r.cfg = cfg;
    r.fingerprint = orders.fingerprint();
    auto conflict = eng.assert_initial_units();
    if (conflict) throw StateError("axioms alone are contradictory; encoding bug");
    r.preamble = eng.trail();
    if (eng.complete())
        throw TheoremFalsifiedError("axioms determine a full assignment with no split");
    Refuter refuter(eng);
    r.root = refuter.split(pick_split_cell(eng), true);
    return r;
}

std::vector<Refutation::RootCase> Refutation::root_cases() const {
    std::vector<RootCase> out;
    if (!root) return out;
    for (TriState v1 : {TriState::True, TriState::False}) {
        const RefBranch& b1 = v1 == TriState::True ? *root->on_true : *root->on_false;
        if (b1.child && b1.steps.empty()) {
            for (TriState v2 : {TriState::True, TriState::False}) {
                const RefBranch& b2 =
                    v2 == TriState::True ? *b1.child->on_true : *b1.child->on_false;
                out.push_back(RootCase{v1, v2, b2.conflict});
            }
        } else {
            out.push_back(RootCase{v1, TriState::Unknown, b1.conflict});
        }
    }
    return out;
}

ModelList enumerate_models(const Config& cfg, std::optional<std::int64_t> limit) {
    cfg.validate();
    OrderEnumeration orders(cfg.alternatives);
    ProfileSpace space(cfg, orders);
    ConstraintSet cs(space, /*non_dict=*/false);
    Engine eng(cs);
    ModelList out;
    auto conflict = eng.assert_initial_units();
    if (conflict) throw StateError("axioms alone are contradictory; encoding bug");

    auto record = [&] {
        Model mdl;
        mdl.cells.reserve(static_cast<size_t>(cs.cell_count()));
        for (CellIndex c = 0; c < cs.cell_count(); ++c) mdl.cells.push_back(eng.state(c));
        mdl.dictators = detect_dictators(eng);
        out.models.push_back(std::move(mdl));
    };

    std::function<void()> rec = [&] {
        if (out.truncated) return;
        if (eng.complete()) {
            if (limit && static_cast<std::int64_t>(out.models.size()) >= *limit) {
                out.truncated = true;
                return;
            }
            record();
            return;
        }
        CellIndex c = 0;
        while (eng.state(c) != TriState::Unknown) ++c;
        for (TriState v : {TriState::True, TriState::False}) {
            size_t mark = eng.mark();
            eng.assign(c, v, Reason{ReasonTag::Decision, -1});
            if (!eng.propagate_to_fixpoint()) rec();
            eng.undo_to(mark);
            if (out.truncated) return;
        }
    };
    rec();
    return out;
}

}  // namespace arrowlab
