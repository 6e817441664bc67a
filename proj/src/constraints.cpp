#include "arrowlab/constraints.hpp"

#include <map>

namespace arrowlab {

int pairs_per_profile(int m) { return m * (m - 1); }

int pair_index(int m, Alt from, Alt to) {
    if (from == to || from < 0 || to < 0 || from >= m || to >= m)
        throw ParameterError("bad alternative pair");
    // Lexicographic over ordered pairs (from, to), from != to.
    return from * (m - 1) + (to < from ? to : to - 1);
}

const char* family_name(Family f) {
    switch (f) {
        case Family::Completeness: return "completeness";
        case Family::Transitivity: return "transitivity";
        case Family::Unanimity: return "unanimity";
        case Family::IIA: return "iia";
        case Family::NonDict: return "non_dict";
    }
    return "?";
}

CellIndex ConstraintSet::cell_index(const Cell& c) const {
    int m = config().alternatives;
    return static_cast<CellIndex>(c.profile * pairs_per_profile(m) +
                                  pair_index(m, c.from, c.to));
}

Cell ConstraintSet::cell_at(CellIndex i) const {
    int m = config().alternatives;
    int pp = pairs_per_profile(m);
    ProfileId pid = i / pp;
    int pi = i % pp;
    Alt from = pi / (m - 1);
    Alt to = pi % (m - 1);
    if (to >= from) ++to;
    return Cell{pid, from, to};
}

std::string ConstraintSet::cell_name(CellIndex c) const {
    Cell cell = cell_at(c);
    std::string s = "R[" + std::to_string(cell.profile) + "](s,";
    s += alt_letter(cell.from);
    s += ',';
    s += alt_letter(cell.to);
    s += ')';
    return s;
}

void ConstraintSet::add_clause(Clause cl) {
    std::int32_t idx = static_cast<std::int32_t>(clauses_.size());
    for (std::int32_t lit : cl.lits) {
        CellIndex c = std::abs(lit) - 1;
        (lit > 0 ? pos_occ_ : neg_occ_)[static_cast<size_t>(c)].push_back(idx);
    }
    clauses_.push_back(std::move(cl));
}

ConstraintSet::ConstraintSet(const ProfileSpace& space, bool non_dict)
    : space_(space), non_dict_(non_dict) {
    const Config& cfg = space.config();
    int m = cfg.alternatives;
    if (m < 2) throw ParameterError("constraints need at least two alternatives");
    std::int64_t n_profiles = space.count();
    std::int64_t cells = n_profiles * pairs_per_profile(m);
    if (cells > INT32_MAX) throw ParameterError("instance too large");
    cell_count_ = static_cast<CellIndex>(cells);
    pos_occ_.resize(static_cast<size_t>(cell_count_));
    neg_occ_.resize(static_cast<size_t>(cell_count_));

    auto pos = [&](ProfileId p, Alt x, Alt y) {
        return cell_index(Cell{p, x, y}) + 1;
    };

    for (ProfileId p = 0; p < n_profiles; ++p) {
        // Completeness: R(s,x,y) v R(s,y,x), one clause per unordered pair.
        for (Alt x = 0; x < m; ++x)
            for (Alt y = x + 1; y < m; ++y) {
                Clause cl;
                cl.family = Family::Completeness;
                cl.lits = {pos(p, x, y), pos(p, y, x)};
                cl.profile = p;
                cl.x = x;
                cl.y = y;
                add_clause(std::move(cl));
            }
        // Transitivity: ~R(s,x,y) v ~R(s,y,z) v R(s,x,z), ordered triples.
        for (Alt x = 0; x < m; ++x)
            for (Alt y = 0; y < m; ++y)
                for (Alt z = 0; z < m; ++z) {
                    if (x == y || y == z || x == z) continue;
                    Clause cl;
                    cl.family = Family::Transitivity;
                    cl.lits = {-pos(p, x, y), -pos(p, y, z), pos(p, x, z)};
                    cl.profile = p;
                    cl.x = x;
                    cl.y = y;
                    cl.z = z;
                    add_clause(std::move(cl));
                }
        // Unanimity: unit literals wherever all voters strictly agree.
        for (Alt x = 0; x < m; ++x)
            for (Alt y = 0; y < m; ++y) {
                if (x == y) continue;
                if (!space.unanimous_strict(p, x, y)) continue;
                Clause ct;
                ct.family = Family::Unanimity;
                ct.lits = {pos(p, x, y)};
                ct.profile = p;
                ct.x = x;
                ct.y = y;
                add_clause(std::move(ct));
                Clause cf;
                cf.family = Family::Unanimity;
                cf.lits = {-pos(p, y, x)};
                cf.profile = p;
                cf.x = x;
                cf.y = y;
                add_clause(std::move(cf));
            }
    }

    // IIA: for each unordered pair, chain the profiles of each agreement
    // class with cell equalities (two clauses per equality, both cells).
    for (Alt x = 0; x < m; ++x)
        for (Alt y = x + 1; y < m; ++y) {
            std::map<std::vector<int>, ProfileId> last_in_class;
            for (ProfileId p = 0; p < n_profiles; ++p) {
                std::vector<int> key;
                key.reserve(static_cast<size_t>(cfg.voters));
                for (int v = 0; v < cfg.voters; ++v) {
                    const WeakOrder& o = space.voter_order(p, v);
                    key.push_back((o.rel(x, y) ? 2 : 0) | (o.rel(y, x) ? 1 : 0));
                }
                auto it = last_in_class.find(key);
                if (it != last_in_class.end()) {
                    ProfileId q = it->second;
                    for (auto [fx, fy] : {std::pair{x, y}, std::pair{y, x}}) {
                        for (int dir = 0; dir < 2; ++dir) {
                            Clause cl;
                            cl.family = Family::IIA;
                            std::int32_t a = pos(q, fx, fy), b = pos(p, fx, fy);
                            cl.lits = dir == 0 ? std::vector<std::int32_t>{-a, b}
                                               : std::vector<std::int32_t>{a, -b};
                            cl.profile = q;
                            cl.profile2 = p;
                            cl.x = fx;
                            cl.y = fy;
                            add_clause(std::move(cl));
                        }
                    }
                    it->second = p;
                } else {
                    last_in_class.emplace(std::move(key), p);
                }
            }
        }

    // Non-dictatorship: per voter d, some strict preference of d must fail
    // socially somewhere. Flattened disjunction of (~R(s,x,y) v R(s,y,x))
    // over every (profile, pair) where d strictly prefers x to y.
    if (non_dict) {
        for (int d = 0; d < cfg.voters; ++d) {
            Clause cl;
            cl.family = Family::NonDict;
            cl.voter = d;
            for (ProfileId p = 0; p < n_profiles; ++p)
                for (Alt x = 0; x < m; ++x)
                    for (Alt y = 0; y < m; ++y) {
                        if (x == y || !space.strict_prefers(p, d, x, y)) continue;
                        cl.lits.push_back(-pos(p, x, y));
                        cl.lits.push_back(pos(p, y, x));
                    }
            add_clause(std::move(cl));
        }
    }
}

ConstraintStats ConstraintSet::stats() const {
    ConstraintStats st;
    st.cells = cell_count_;
    for (const Clause& cl : clauses_) {
        switch (cl.family) {
            case Family::Completeness: ++st.completeness; break;
            case Family::Transitivity: ++st.transitivity; break;
            case Family::Unanimity: ++st.unanimity; break;
            case Family::IIA: ++st.iia; break;
            case Family::NonDict: ++st.non_dict; break;
        }
    }
    return st;
}

}  // namespace arrowlab
