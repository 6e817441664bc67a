#include "arrowlab/dpll.hpp"

#include <cstdlib>

namespace arrowlab {

namespace {

class Dpll {
  public:
    explicit Dpll(const CnfDoc& doc) : nvars_(doc.var_count), clauses_(doc.clauses) {
        pos_occ_.resize(static_cast<size_t>(nvars_));
        neg_occ_.resize(static_cast<size_t>(nvars_));
        for (size_t i = 0; i < clauses_.size(); ++i) index_clause(static_cast<int>(i));
    }

    void add_clause(std::vector<int> cl) {
        clauses_.push_back(std::move(cl));
        index_clause(static_cast<int>(clauses_.size()) - 1);
    }

    std::optional<std::vector<bool>> solve() {
        val_.assign(static_cast<size_t>(nvars_), -1);
        n_sat_.assign(clauses_.size(), 0);
        n_false_.assign(clauses_.size(), 0);
        trail_.clear();
        qhead_ = 0;
        conflict_ = false;
        next_var_ = 0;
        for (size_t i = 0; i < clauses_.size(); ++i) {
            if (clauses_[i].empty()) return std::nullopt;
            if (clauses_[i].size() == 1) enqueue(clauses_[i][0]);
            if (conflict_) return std::nullopt;
        }
        if (!propagate()) return std::nullopt;
        if (!search()) return std::nullopt;
        std::vector<bool> model(static_cast<size_t>(nvars_));
        for (int v = 0; v < nvars_; ++v) model[static_cast<size_t>(v)] = val_[static_cast<size_t>(v)] == 1;
        return model;
    }

  private:
    void index_clause(int idx) {
        for (int lit : clauses_[static_cast<size_t>(idx)])
            (lit > 0 ? pos_occ_ : neg_occ_)[static_cast<size_t>(std::abs(lit) - 1)].push_back(idx);
    }

    void enqueue(int lit) {
        int v = std::abs(lit) - 1;
        int want = lit > 0 ? 1 : 0;
        if (val_[static_cast<size_t>(v)] != -1) {
            if (val_[static_cast<size_t>(v)] != want) conflict_ = true;
            return;
        }
        val_[static_cast<size_t>(v)] = static_cast<signed char>(want);
        trail_.push_back(lit);
        const auto& sat_occ = lit > 0 ? pos_occ_[static_cast<size_t>(v)] : neg_occ_[static_cast<size_t>(v)];
        const auto& fal_occ = lit > 0 ? neg_occ_[static_cast<size_t>(v)] : pos_occ_[static_cast<size_t>(v)];
        for (int c : sat_occ) ++n_sat_[static_cast<size_t>(c)];
        for (int c : fal_occ) {
            if (++n_false_[static_cast<size_t>(c)] ==
                    static_cast<int>(clauses_[static_cast<size_t>(c)].size()) &&
                n_sat_[static_cast<size_t>(c)] == 0)
                conflict_ = true;
        }
    }

    bool propagate() {
        while (!conflict_ && qhead_ < trail_.size()) {
            int lit = trail_[qhead_++];
            int v = std::abs(lit) - 1;
            const auto& occ = lit > 0 ? neg_occ_[static_cast<size_t>(v)] : pos_occ_[static_cast<size_t>(v)];
            for (int c : occ) {
                const auto& cl = clauses_[static_cast<size_t>(c)];
                if (n_sat_[static_cast<size_t>(c)] > 0) continue;
                if (n_false_[static_cast<size_t>(c)] != static_cast<int>(cl.size()) - 1) continue;
                for (int l : cl) {
                    if (val_[static_cast<size_t>(std::abs(l) - 1)] == -1) {
                        enqueue(l);
                        break;
                    }
                }
                if (conflict_) return false;
            }
        }
        return !conflict_;
    }

    void undo_to(size_t mark) {
        while (trail_.size() > mark) {
            int lit = trail_.back();
            trail_.pop_back();
            int v = std::abs(lit) - 1;
            val_[static_cast<size_t>(v)] = -1;
            const auto& sat_occ = lit > 0 ? pos_occ_[static_cast<size_t>(v)] : neg_occ_[static_cast<size_t>(v)];
            const auto& fal_occ = lit > 0 ? neg_occ_[static_cast<size_t>(v)] : pos_occ_[static_cast<size_t>(v)];
            for (int c : sat_occ) --n_sat_[static_cast<size_t>(c)];
            for (int c : fal_occ) --n_false_[static_cast<size_t>(c)];
        }
        qhead_ = trail_.size();
        conflict_ = false;
    }

    bool search() {
        int v = next_var_;
        while (v < nvars_ && val_[static_cast<size_t>(v)] != -1) ++v;
        if (v == nvars_) return true;
        int saved_next = next_var_;
        next_var_ = v;
        for (int lit : {v + 1, -(v + 1)}) {
            size_t mark = trail_.size();
            enqueue(lit);
            if (propagate() && search()) return true;
            undo_to(mark);
        }
        next_var_ = saved_next;
        return false;
    }

    int nvars_;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::vector<int>> pos_occ_, neg_occ_;
    std::vector<signed char> val_;
    std::vector<int> n_sat_, n_false_;
    std::vector<int> trail_;
    size_t qhead_ = 0;
    bool conflict_ = false;
    int next_var_ = 0;
};

}  // namespace

SolveResult solve_cnf(const CnfDoc& doc, SolveMode mode, std::optional<std::int64_t> limit) {
    SolveResult res;
    Dpll solver(doc);
    if (mode == SolveMode::Decide) {
        auto model = solver.solve();
        res.sat = model.has_value();
        if (model) res.models.push_back(std::move(*model));
        return res;
    }
    while (true) {
        if (limit && static_cast<std::int64_t>(res.models.size()) >= *limit) {
            // One more solve decides whether anything was cut off.
            res.truncated = solver.solve().has_value();
            break;
        }
        auto model = solver.solve();
        if (!model) break;
        std::vector<int> blocking;
        blocking.reserve(model->size());
        for (size_t v = 0; v < model->size(); ++v)
            blocking.push_back((*model)[v] ? -(static_cast<int>(v) + 1) : static_cast<int>(v) + 1);
        res.models.push_back(std::move(*model));
        solver.add_clause(std::move(blocking));
    }
    res.sat = !res.models.empty();
    return res;
}

}  // namespace arrowlab
