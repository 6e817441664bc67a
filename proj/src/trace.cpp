#include "arrowlab/trace.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace arrowlab {

const char* line_kind_token(LineKind k) {
    switch (k) {
        case LineKind::Premises: return "PREMISES";
        case LineKind::AssumeNonDict: return "ASSUME";
        case LineKind::Case: return "CASE";
        case LineKind::Prop: return "PROP";
        case LineKind::Conflict: return "CONFLICT";
        case LineKind::Discharge: return "DISCHARGE";
        case LineKind::CaseClose: return "CASECLOSE";
        case LineKind::Conclude: return "CONCLUDE";
    }
    return "?";
}

std::string rule_token(TraceRule r, int dict_voter) {
    switch (r) {
        case TraceRule::Prem: return "PREM";
        case TraceRule::NoDict: return "NODICT";
        case TraceRule::Case: return "CASE";
        case TraceRule::Spu: return "SPU";
        case TraceRule::Spt: return "SPT";
        case TraceRule::Iia: return "IIA";
        case TraceRule::Comp: return "COMP";
        case TraceRule::ConfTrans: return "CONF-TRANS";
        case TraceRule::ConfComp: return "CONF-COMP";
        case TraceRule::ConfDict: return "CONF-DICT:" + std::to_string(dict_voter);
        case TraceRule::Disch: return "DISCH";
        case TraceRule::Concl: return "CONCL";
    }
    return "?";
}

namespace {

TraceRule rule_for_reason(ReasonTag t) {
    switch (t) {
        case ReasonTag::Unanimity: return TraceRule::Spu;
        case ReasonTag::Transitivity: return TraceRule::Spt;
        case ReasonTag::Completeness: return TraceRule::Comp;
        case ReasonTag::IIA: return TraceRule::Iia;
        default: throw StateError("no trace rule for this reason");
    }
}

// Shared context while rendering one refutation.
class Emitter {
  public:
    Emitter(const Refutation& r, const ConstraintSet& cs) : r_(r), cs_(cs) {
        cell_line_.assign(static_cast<size_t>(cs.cell_count()), 0);
    }

    ProofTrace run() {
        ProofTrace t;
        t.cfg = r_.cfg;
        t.fingerprint = r_.fingerprint;
        out_ = &t.lines;

        add(0, LineKind::Premises, std::nullopt, TraceRule::Prem, {});
        int assume_line = add(1, LineKind::AssumeNonDict, std::nullopt, TraceRule::NoDict, {});
        std::vector<CellIndex> preamble_undo;
        undo_ = &preamble_undo;
        for (const Step& s : r_.preamble) emit_step(s, 1);
        if (!r_.root) throw StateError("refutation has no root split");
        int close_line = emit_node(*r_.root, 1);
        add(0, LineKind::Conclude, std::nullopt, TraceRule::Concl, {assume_line, close_line});
        return t;
    }

  private:
    int add(int depth, LineKind kind, std::optional<TraceLiteral> lit, TraceRule rule,
            std::vector<int> refs, int dict_voter = -1) {
        TraceLine line;
        line.number = static_cast<int>(out_->size()) + 1;
        line.depth = depth;
        line.kind = kind;
        line.literal = std::move(lit);
        line.rule = rule;
        line.dict_voter = dict_voter;
        line.refs = std::move(refs);
        out_->push_back(std::move(line));
        return out_->back().number;
    }

    TraceLiteral literal_for(CellIndex c, TriState v) const {
        Cell cell = cs_.cell_at(c);
        return TraceLiteral{cell.profile, cell.from, cell.to, v == TriState::True};
    }

    void set_cell_line(CellIndex c, int line, std::vector<CellIndex>& undo) {
        cell_line_[static_cast<size_t>(c)] = line;
        undo.push_back(c);
    }

    void emit_step(const Step& s, int depth) {
        TraceRule rule = rule_for_reason(s.reason.tag);
        std::vector<int> refs;
        if (rule == TraceRule::Spu) {
            refs = {1};  // forced by the profile constants alone
        } else {
            for (std::int32_t l : cs_.clauses()[static_cast<size_t>(s.reason.clause)].lits) {
                CellIndex a = static_cast<CellIndex>(std::abs(l) - 1);
                if (a == s.cell) continue;
                int ln = cell_line_[static_cast<size_t>(a)];
                if (ln == 0) throw StateError("antecedent cell has no visible line");
                refs.push_back(ln);
            }
            std::sort(refs.begin(), refs.end());
        }
        int ln = add(depth, LineKind::Prop, literal_for(s.cell, s.value), rule, std::move(refs));
        set_cell_line(s.cell, ln, *undo_);
    }

    int emit_conflict(const Conflict& c, int depth) {
        const Clause& cl = cs_.clauses()[static_cast<size_t>(c.clause)];
        std::vector<int> refs;
        for (std::int32_t lit : cl.lits) {
            int ln = cell_line_[static_cast<size_t>(std::abs(lit) - 1)];
            if (ln == 0) throw StateError("conflict cell has no visible line");
            refs.push_back(ln);
        }
        std::sort(refs.begin(), refs.end());
        refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
        TraceRule rule = c.kind == Conflict::Kind::TransitivityViolation ? TraceRule::ConfTrans
                       : c.kind == Conflict::Kind::CompletenessViolation ? TraceRule::ConfComp
                                                                         : TraceRule::ConfDict;
        return add(depth, LineKind::Conflict, std::nullopt, rule, std::move(refs), c.voter);
    }

    // Emits the subtree and returns the line number of its closing line
    // (the CASECLOSE, or the single discharge for one-branch trees).
    int emit_node(const RefNode& node, int depth) {
        std::vector<std::pair<TriState, int>> discharges;
        for (TriState v : {TriState::True, TriState::False}) {
            const RefBranch* b = v == TriState::True ? node.on_true.get() : node.on_false.get();
            if (b == nullptr) continue;
            std::vector<CellIndex> undo;
            auto* saved = undo_;
            undo_ = &undo;
            int case_line = add(depth + 1, LineKind::Case, literal_for(node.cell, v),
                                TraceRule::Case, {});
            set_cell_line(node.cell, case_line, undo);
            for (const Step& s : b->steps) emit_step(s, depth + 1);
            int close;
            if (b->is_leaf()) {
                if (!b->conflict) throw StateError("open leaf in refutation");
                close = emit_conflict(*b->conflict, depth + 1);
            } else {
                close = emit_node(*b->child, depth + 1);
            }
            for (CellIndex c : undo) cell_line_[static_cast<size_t>(c)] = 0;
            undo_ = saved;
            int disch = add(depth, LineKind::Discharge, literal_for(node.cell, v),
                            TraceRule::Disch, {case_line, close});
            discharges.emplace_back(v, disch);
        }
        if (discharges.empty()) throw StateError("split with no branches");
        if (discharges.size() == 1) return discharges[0].second;
        return add(depth, LineKind::CaseClose, std::nullopt, TraceRule::Disch,
                   {discharges[0].second, discharges[1].second});
    }

    const Refutation& r_;
    const ConstraintSet& cs_;
    std::vector<int> cell_line_;
    std::vector<TraceLine>* out_ = nullptr;
    std::vector<CellIndex>* undo_ = nullptr;
};

}  // namespace

ProofTrace emit_trace(const Refutation& r) {
    OrderEnumeration orders(r.cfg.alternatives);
    if (orders.fingerprint() != r.fingerprint)
        throw StateError("refutation fingerprint does not match this enumeration");
    ProfileSpace space(r.cfg, orders);
    ConstraintSet cs(space, /*non_dict=*/true);
    Emitter em(r, cs);
    return em.run();
}

std::string render_trace(const ProofTrace& t) {
    std::ostringstream os;
    os << "apf 1\n";
    os << "voters " << t.cfg.voters << '\n';
    os << "alternatives " << t.cfg.alternatives << '\n';
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(t.fingerprint));
    os << "fingerprint " << buf << '\n';
    for (const TraceLine& l : t.lines) {
        os << l.number << '|' << l.depth << '|' << line_kind_token(l.kind) << '|';
        if (l.literal) {
            const TraceLiteral& lit = *l.literal;
            os << "R[" << lit.profile << "](s," << alt_letter(lit.from) << ','
               << alt_letter(lit.to) << ")=" << (lit.value ? 'T' : 'F');
        } else {
            os << '-';
        }
        os << '|' << rule_token(l.rule, l.dict_voter) << '|';
        if (l.refs.empty()) {
            os << '-';
        } else {
            for (size_t i = 0; i < l.refs.size(); ++i) {
                if (i) os << ',';
                os << l.refs[i];
            }
        }
        os << '\n';
    }
    return os.str();
}

namespace {

struct Cursor {
    const std::string& line;
    size_t pos = 0;
    int lineno;

    std::string field() {
        size_t bar = line.find('|', pos);
        std::string f = bar == std::string::npos ? line.substr(pos)
                                                 : line.substr(pos, bar - pos);
        pos = bar == std::string::npos ? line.size() : bar + 1;
        return f;
    }
};

int parse_int(const std::string& s, int lineno, const char* what) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ParseError(std::string("bad ") + what + ": '" + s + "'", lineno);
    return v;
}

std::int64_t parse_i64(const std::string& s, int lineno, const char* what) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ParseError(std::string("bad ") + what + ": '" + s + "'", lineno);
    return v;
}

TraceLiteral parse_literal(const std::string& s, int lineno) {
    // R[<pid>](s,<x>,<y>)=T|F
    if (s.size() < 12 || s.rfind("R[", 0) != 0)
        throw ParseError("bad literal: '" + s + "'", lineno);
    size_t rb = s.find(']');
    if (rb == std::string::npos) throw ParseError("bad literal: '" + s + "'", lineno);
    TraceLiteral lit;
    lit.profile = parse_i64(s.substr(2, rb - 2), lineno, "profile id");
    std::string rest = s.substr(rb + 1);
    if (rest.size() != 9 || rest.compare(0, 3, "(s,") != 0 || rest[4] != ',' ||
        rest[6] != ')' || rest[7] != '=')
        throw ParseError("bad literal: '" + s + "'", lineno);
    auto alt_of = [&](char c) -> Alt {
        if (c < 'a' || c > 'h') throw ParseError("bad alternative letter", lineno);
        return c - 'a';
    };
    lit.from = alt_of(rest[3]);
    lit.to = alt_of(rest[5]);
    char tv = rest[8];
    if (tv != 'T' && tv != 'F') throw ParseError("bad literal: '" + s + "'", lineno);
    lit.value = tv == 'T';
    return lit;
}

LineKind parse_kind(const std::string& s, int lineno) {
    for (LineKind k : {LineKind::Premises, LineKind::AssumeNonDict, LineKind::Case,
                       LineKind::Prop, LineKind::Conflict, LineKind::Discharge,
                       LineKind::CaseClose, LineKind::Conclude})
        if (s == line_kind_token(k)) return k;
    throw ParseError("unknown line kind: '" + s + "'", lineno);
}

std::pair<TraceRule, int> parse_rule(const std::string& s, int lineno) {
    for (TraceRule r : {TraceRule::Prem, TraceRule::NoDict, TraceRule::Case, TraceRule::Spu,
                        TraceRule::Spt, TraceRule::Iia, TraceRule::Comp, TraceRule::ConfTrans,
                        TraceRule::ConfComp, TraceRule::Disch, TraceRule::Concl})
        if (s == rule_token(r)) return {r, -1};
    if (s.rfind("CONF-DICT:", 0) == 0)
        return {TraceRule::ConfDict, parse_int(s.substr(10), lineno, "dictator voter")};
    throw ParseError("unknown rule tag: '" + s + "'", lineno);
}

}  // namespace

ProofTrace parse_trace(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    ProofTrace t;
    int lineno = 0;

    // Header: apf version, voters, alternatives, fingerprint.
    auto header_field = [&](const std::string& key) {
        if (!std::getline(is, line)) throw ParseError("missing header line '" + key + "'", lineno + 1);
        ++lineno;
        if (line.rfind(key + " ", 0) != 0)
            throw ParseError("expected header '" + key + "', got '" + line + "'", lineno);
        return line.substr(key.size() + 1);
    };
    if (header_field("apf") != "1") throw ParseError("unsupported apf version", lineno);
    t.cfg.voters = parse_int(header_field("voters"), lineno, "voter count");
    t.cfg.alternatives = parse_int(header_field("alternatives"), lineno, "alternative count");
    {
        std::string fp = header_field("fingerprint");
        if (fp.size() != 16 || fp.find_first_not_of("0123456789abcdef") != std::string::npos)
            throw ParseError("bad fingerprint", lineno);
        t.fingerprint = std::stoull(fp, nullptr, 16);
    }

    int depth = 0;
    std::vector<int> scope_ids;           // open scope stack (ids)
    std::vector<int> line_scope;          // scope id per body line (1-based index)
    int next_scope = 1;
    scope_ids.push_back(0);               // top level
    line_scope.push_back(0);              // sentinel for index 0

    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        Cursor cur{line, 0, lineno};
        TraceLine tl;
        tl.number = parse_int(cur.field(), lineno, "line number");
        int expected = static_cast<int>(t.lines.size()) + 1;
        if (tl.number != expected)
            throw ParseError("bad line number sequence: got " + std::to_string(tl.number) +
                                 ", expected " + std::to_string(expected),
                             lineno);
        tl.depth = parse_int(cur.field(), lineno, "depth");
        tl.kind = parse_kind(cur.field(), lineno);
        std::string body = cur.field();
        if (body != "-") tl.literal = parse_literal(body, lineno);
        auto [rule, voter] = parse_rule(cur.field(), lineno);
        tl.rule = rule;
        tl.dict_voter = voter;
        std::string refs = cur.field();
        if (cur.pos < line.size()) throw ParseError("trailing fields", lineno);
        if (refs != "-") {
            size_t p = 0;
            while (p <= refs.size()) {
                size_t comma = refs.find(',', p);
                std::string one = comma == std::string::npos ? refs.substr(p)
                                                             : refs.substr(p, comma - p);
                tl.refs.push_back(parse_int(one, lineno, "ref"));
                if (comma == std::string::npos) break;
                p = comma + 1;
            }
        }

        // Structural discipline.
        int closed_scope = -1;  // scope a closing line may still reference
        switch (tl.kind) {
            case LineKind::Premises:
                if (tl.number != 1) throw ParseError("premises must be line 1", lineno);
                if (tl.depth != 0) throw ParseError("premises must be at depth 0", lineno);
                break;
            case LineKind::AssumeNonDict:
            case LineKind::Case:
                if (tl.depth != depth + 1)
                    throw ParseError("scope-opening line must increment depth", lineno);
                depth += 1;
                scope_ids.push_back(next_scope++);
                break;
            case LineKind::Prop:
            case LineKind::Conflict:
            case LineKind::CaseClose:
                if (tl.depth != depth)
                    throw ParseError("line depth does not match current scope", lineno);
                break;
            case LineKind::Discharge:
            case LineKind::Conclude:
                if (depth == 0) throw ParseError("depth underflow", lineno);
                if (tl.depth != depth - 1)
                    throw ParseError("scope-closing line must decrement depth", lineno);
                depth -= 1;
                closed_scope = scope_ids.back();
                scope_ids.pop_back();
                break;
        }
        // Refs must point at earlier lines still visible in an open scope.
        for (int r : tl.refs) {
            if (r < 1 || r >= tl.number)
                throw ParseError("dangling ref to line " + std::to_string(r), lineno);
            int sid = line_scope[static_cast<size_t>(r)];
            if (sid != closed_scope &&
                std::find(scope_ids.begin(), scope_ids.end(), sid) == scope_ids.end())
                throw ParseError("ref to line " + std::to_string(r) +
                                     " in a closed scope",
                                 lineno);
        }
        // Closing lines belong to the scope they close; everything else to
        // the current one.
        line_scope.push_back(scope_ids.back());
        t.lines.push_back(std::move(tl));
    }

    if (t.lines.empty()) throw ParseError("empty trace", lineno);
    if (t.lines.back().kind != LineKind::Conclude)
        throw ParseError("final line must be CONCLUDE", lineno);
    if (depth != 0) throw ParseError("unclosed scopes at end of trace", lineno);
    return t;
}

}  // namespace arrowlab
