#include "arrowlab/checker.hpp"

#include <algorithm>
#include <array>
#include <vector>

#include "arrowlab/constraints.hpp"

namespace arrowlab {

namespace {

std::string rule_key(TraceRule r) {
    return r == TraceRule::ConfDict ? std::string("CONF-DICT") : rule_token(r);
}

}  // namespace

Verdict check_trace(const ProofTrace& t) {
    Verdict v;
    auto fail = [&](int line, std::string msg) {
        v.valid = false;
        v.line = line;
        v.violation = std::move(msg);
        return v;
    };

    try {
        t.cfg.validate();
    } catch (const std::exception& e) {
        return fail(0, std::string("bad configuration: ") + e.what());
    }
    if (t.cfg.alternatives < 2) return fail(0, "need at least two alternatives");
    OrderEnumeration orders(t.cfg.alternatives);
    if (orders.fingerprint() != t.fingerprint)
        return fail(0, "fingerprint does not match the canonical enumeration");
    ProfileSpace space(t.cfg, orders);
    const int m = t.cfg.alternatives;
    const int n = t.cfg.voters;
    const int ppp = pairs_per_profile(m);
    const std::int64_t cells = space.count() * ppp;
    if (cells > (std::int64_t{1} << 31)) return fail(0, "instance too large to check");

    // -1 unknown, 0 false, 1 true; def holds the line that assigned the cell.
    std::vector<signed char> val(static_cast<size_t>(cells), -1);
    std::vector<int> def(static_cast<size_t>(cells), 0);

    const auto& L = t.lines;
    if (L.empty()) return fail(0, "empty trace");

    auto cell_of = [&](const TraceLiteral& lit) -> std::int64_t {
        return lit.profile * ppp + pair_index(m, lit.from, lit.to);
    };
    auto lit_ok = [&](const TraceLiteral& lit) {
        return lit.profile >= 0 && lit.profile < space.count() && lit.from >= 0 &&
               lit.from < m && lit.to >= 0 && lit.to < m && lit.from != lit.to;
    };
    // The literal a ref introduced, provided it is still the active
    // definition of its cell (i.e. its scope has not been discharged).
    auto active_lit = [&](int r) -> const TraceLiteral* {
        const TraceLine& src = L[static_cast<size_t>(r) - 1];
        if (!src.literal) return nullptr;
        std::int64_t c = cell_of(*src.literal);
        if (def[static_cast<size_t>(c)] != r) return nullptr;
        return &*src.literal;
    };

    struct Frame {
        int open_line;
        int scope;
        std::vector<std::int64_t> undo;
    };
    std::vector<Frame> frames;
    std::vector<int> line_scope(L.size() + 1, 0);
    int next_scope = 1;
    int depth = 0;

    for (size_t i = 0; i < L.size(); ++i) {
        const TraceLine& tl = L[i];
        const int no = static_cast<int>(i) + 1;
        if (tl.number != no) return fail(no, "line numbers must be contiguous from 1");
        for (int r : tl.refs)
            if (r < 1 || r >= no) return fail(no, "ref to line " + std::to_string(r) + " out of range");
        v.rule_counts[rule_key(tl.rule)] += 1;

        switch (tl.kind) {
            case LineKind::Premises:
                if (no != 1 || tl.depth != 0 || tl.rule != TraceRule::Prem || tl.literal ||
                    !tl.refs.empty())
                    return fail(no, "malformed premises line");
                break;

            case LineKind::AssumeNonDict:
                if (no != 2 || tl.depth != 1 || tl.rule != TraceRule::NoDict || tl.literal ||
                    !tl.refs.empty())
                    return fail(no, "malformed assumption line");
                depth = 1;
                frames.push_back({no, next_scope++, {}});
                break;

            case LineKind::Case: {
                if (frames.empty()) return fail(no, "case before the assumption");
                if (tl.depth != depth + 1) return fail(no, "case must deepen the scope by one");
                if (tl.rule != TraceRule::Case || !tl.literal || !tl.refs.empty())
                    return fail(no, "malformed case line");
                if (!lit_ok(*tl.literal)) return fail(no, "literal out of range");
                std::int64_t c = cell_of(*tl.literal);
                if (val[static_cast<size_t>(c)] != -1)
                    return fail(no, "case reassigns an already assigned cell");
                depth += 1;
                frames.push_back({no, next_scope++, {}});
                val[static_cast<size_t>(c)] = tl.literal->value ? 1 : 0;
                def[static_cast<size_t>(c)] = no;
                frames.back().undo.push_back(c);
                break;
            }

            case LineKind::Prop: {
                if (frames.empty()) return fail(no, "derivation outside any scope");
                if (tl.depth != depth) return fail(no, "derivation at the wrong depth");
                if (!tl.literal) return fail(no, "derivation needs a literal");
                if (!lit_ok(*tl.literal)) return fail(no, "literal out of range");
                const TraceLiteral& d = *tl.literal;
                std::int64_t c = cell_of(d);
                if (val[static_cast<size_t>(c)] != -1) return fail(no, "cell assigned twice");

                switch (tl.rule) {
                    case TraceRule::Spu: {
                        if (tl.refs != std::vector<int>{1})
                            return fail(no, "unanimity must cite the premises line");
                        bool un = d.value ? space.unanimous_strict(d.profile, d.from, d.to)
                                          : space.unanimous_strict(d.profile, d.to, d.from);
                        if (!un) return fail(no, "pair is not unanimous in this profile");
                        break;
                    }
                    case TraceRule::Comp: {
                        const TraceLiteral* a =
                            tl.refs.size() == 1 ? active_lit(tl.refs[0]) : nullptr;
                        if (!a || a->profile != d.profile || a->from != d.to ||
                            a->to != d.from || a->value || !d.value)
                            return fail(no, "completeness step does not follow from its ref");
                        break;
                    }
                    case TraceRule::Iia: {
                        const TraceLiteral* a =
                            tl.refs.size() == 1 ? active_lit(tl.refs[0]) : nullptr;
                        if (!a || a->from != d.from || a->to != d.to || a->value != d.value ||
                            a->profile == d.profile ||
                            !space.agree_on_pair(a->profile, d.profile, d.from, d.to))
                            return fail(no, "independence step does not follow from its ref");
                        break;
                    }
                    case TraceRule::Spt: {
                        const TraceLiteral* a =
                            tl.refs.size() == 2 ? active_lit(tl.refs[0]) : nullptr;
                        const TraceLiteral* b =
                            tl.refs.size() == 2 ? active_lit(tl.refs[1]) : nullptr;
                        if (!a || !b || a->profile != d.profile || b->profile != d.profile)
                            return fail(no, "transitivity step needs two active refs in the profile");
                        // With the derived literal negated, the three must
                        // falsify some instance (u,w) & (w,t) -> (u,t).
                        std::array<TraceLiteral, 3> ls = {
                            *a, *b, TraceLiteral{d.profile, d.from, d.to, !d.value}};
                        bool ok = false;
                        for (int p1 = 0; p1 < 3 && !ok; ++p1)
                            for (int p2 = 0; p2 < 3 && !ok; ++p2) {
                                if (p1 == p2) continue;
                                const TraceLiteral& uw = ls[static_cast<size_t>(p1)];
                                const TraceLiteral& wt = ls[static_cast<size_t>(p2)];
                                const TraceLiteral& ut = ls[static_cast<size_t>(3 - p1 - p2)];
                                ok = uw.value && wt.value && !ut.value && uw.to == wt.from &&
                                     ut.from == uw.from && ut.to == wt.to;
                            }
                        if (!ok) return fail(no, "transitivity step does not follow from its refs");
                        break;
                    }
                    default:
                        return fail(no, "derivation has a non-derivation rule");
                }
                val[static_cast<size_t>(c)] = d.value ? 1 : 0;
                def[static_cast<size_t>(c)] = no;
                frames.back().undo.push_back(c);
                break;
            }

            case LineKind::Conflict: {
                if (frames.empty()) return fail(no, "conflict outside any scope");
                if (tl.depth != depth) return fail(no, "conflict at the wrong depth");
                if (tl.literal) return fail(no, "conflict carries no literal");
                std::vector<TraceLiteral> cited;
                for (int r : tl.refs) {
                    const TraceLiteral* a = active_lit(r);
                    if (!a) return fail(no, "conflict cites an inactive line");
                    cited.push_back(*a);
                }
                if (tl.rule == TraceRule::ConfTrans) {
                    bool ok = false;
                    size_t k = cited.size();
                    for (size_t p1 = 0; p1 < k && !ok; ++p1)
                        for (size_t p2 = 0; p2 < k && !ok; ++p2)
                            for (size_t p3 = 0; p3 < k && !ok; ++p3) {
                                if (p1 == p2 || p1 == p3 || p2 == p3) continue;
                                const TraceLiteral& uw = cited[p1];
                                const TraceLiteral& wt = cited[p2];
                                const TraceLiteral& ut = cited[p3];
                                ok = uw.profile == wt.profile && uw.profile == ut.profile &&
                                     uw.value && wt.value && !ut.value && uw.to == wt.from &&
                                     ut.from == uw.from && ut.to == wt.to;
                            }
                    if (!ok) return fail(no, "cited literals do not violate transitivity");
                } else if (tl.rule == TraceRule::ConfComp) {
                    bool ok = false;
                    for (const TraceLiteral& a : cited)
                        for (const TraceLiteral& b : cited)
                            if (!a.value && !b.value && a.profile == b.profile &&
                                a.from == b.to && a.to == b.from)
                                ok = true;
                    if (!ok) return fail(no, "cited literals do not violate completeness");
                } else if (tl.rule == TraceRule::ConfDict) {
                    int k = tl.dict_voter;
                    if (k < 0 || k >= n) return fail(no, "dictator voter out of range");
                    std::vector<int> need;
                    for (ProfileId pid = 0; pid < space.count(); ++pid)
                        for (Alt x = 0; x < m; ++x)
                            for (Alt y = 0; y < m; ++y) {
                                if (x == y || !space.strict_prefers(pid, k, x, y)) continue;
                                std::int64_t c = pid * ppp + pair_index(m, x, y);
                                std::int64_t cr = pid * ppp + pair_index(m, y, x);
                                if (val[static_cast<size_t>(c)] != 1 ||
                                    val[static_cast<size_t>(cr)] != 0)
                                    return fail(no,
                                                "a strict preference of the voter is not "
                                                "socially reproduced");
                                need.push_back(def[static_cast<size_t>(c)]);
                                need.push_back(def[static_cast<size_t>(cr)]);
                            }
                    std::sort(need.begin(), need.end());
                    need.erase(std::unique(need.begin(), need.end()), need.end());
                    std::vector<int> got = tl.refs;
                    std::sort(got.begin(), got.end());
                    got.erase(std::unique(got.begin(), got.end()), got.end());
                    if (got != need)
                        return fail(no,
                                    "dictatorship conflict must cite every reproduced "
                                    "preference");
                } else {
                    return fail(no, "conflict has a non-conflict rule");
                }
                break;
            }

            case LineKind::Discharge: {
                if (frames.size() < 2) return fail(no, "no open case to discharge");
                if (tl.depth != depth - 1) return fail(no, "discharge at the wrong depth");
                if (tl.rule != TraceRule::Disch || !tl.literal || tl.refs.size() != 2)
                    return fail(no, "malformed discharge line");
                Frame& f = frames.back();
                if (tl.refs[0] != f.open_line)
                    return fail(no, "discharge must cite the case it closes");
                const TraceLine& opener = L[static_cast<size_t>(f.open_line) - 1];
                if (opener.kind != LineKind::Case || !opener.literal ||
                    !(*opener.literal == *tl.literal))
                    return fail(no, "discharge literal differs from its case");
                int cl = tl.refs[1];
                if (cl != no - 1) return fail(no, "discharge must follow its closing line");
                LineKind ck = L[static_cast<size_t>(cl) - 1].kind;
                if (ck != LineKind::Conflict && ck != LineKind::CaseClose)
                    return fail(no, "case is not closed by a conflict");
                for (std::int64_t c : f.undo) {
                    val[static_cast<size_t>(c)] = -1;
                    def[static_cast<size_t>(c)] = 0;
                }
                frames.pop_back();
                depth -= 1;
                break;
            }

            case LineKind::CaseClose: {
                if (frames.empty()) return fail(no, "case close outside any scope");
                if (tl.depth != depth) return fail(no, "case close at the wrong depth");
                if (tl.rule != TraceRule::Disch || tl.literal || tl.refs.size() != 2)
                    return fail(no, "malformed case close line");
                int r1 = tl.refs[0], r2 = tl.refs[1];
                if (r2 != no - 1 || r1 >= r2)
                    return fail(no, "case close must cite its two discharges");
                const TraceLine& d1 = L[static_cast<size_t>(r1) - 1];
                const TraceLine& d2 = L[static_cast<size_t>(r2) - 1];
                if (d1.kind != LineKind::Discharge || d2.kind != LineKind::Discharge)
                    return fail(no, "case close must cite its two discharges");
                int scope = frames.back().scope;
                if (line_scope[static_cast<size_t>(r1)] != scope ||
                    line_scope[static_cast<size_t>(r2)] != scope)
                    return fail(no, "case close cites discharges from another scope");
                if (!d1.literal || !d2.literal ||
                    d1.literal->profile != d2.literal->profile ||
                    d1.literal->from != d2.literal->from || d1.literal->to != d2.literal->to)
                    return fail(no, "discharged cases split different cells");
                if (d1.literal->value == d2.literal->value)
                    return fail(no, "case analysis does not cover both truth values");
                break;
            }

            case LineKind::Conclude: {
                if (no != static_cast<int>(L.size()))
                    return fail(no, "conclusion must end the trace");
                if (frames.size() != 1 || depth != 1)
                    return fail(no, "conclusion with open cases");
                if (tl.depth != 0 || tl.rule != TraceRule::Concl || tl.literal ||
                    tl.refs.size() != 2)
                    return fail(no, "malformed conclusion line");
                if (tl.refs[0] != 2 || L[1].kind != LineKind::AssumeNonDict)
                    return fail(no, "conclusion must cite the assumption");
                int cl = tl.refs[1];
                if (cl != no - 1) return fail(no, "conclusion must follow its closing line");
                LineKind ck = L[static_cast<size_t>(cl) - 1].kind;
                if (ck != LineKind::CaseClose && ck != LineKind::Conflict)
                    return fail(no, "assumption was not fully refuted");
                frames.pop_back();
                depth = 0;
                break;
            }
        }
        line_scope[static_cast<size_t>(no)] = frames.empty() ? 0 : frames.back().scope;
    }

    if (L.back().kind != LineKind::Conclude)
        return fail(static_cast<int>(L.size()), "trace does not conclude");
    v.valid = true;
    v.line = 0;
    return v;
}

}  // namespace arrowlab
