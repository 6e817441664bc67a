#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "arrowlab/trace.hpp"

using namespace arrowlab;

namespace {

std::string header23() {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(OrderEnumeration(3).fingerprint()));
    return std::string("apf 1\nvoters 2\nalternatives 3\nfingerprint ") + buf + "\n";
}

// Minimal structurally valid trace: one case, one conflict, discharged and
// concluded. (Semantic validity is the checker's business, not the parser's.)
const char* kDegenerateBody =
    "1|0|PREMISES|-|PREM|-\n"
    "2|1|ASSUME|-|NODICT|-\n"
    "3|2|CASE|R[1](s,b,c)=T|CASE|-\n"
    "4|2|CONFLICT|-|CONF-TRANS|3\n"
    "5|1|DISCHARGE|R[1](s,b,c)=T|DISCH|3,4\n"
    "6|0|CONCLUDE|-|CONCL|2,5\n";

}  // namespace

TEST_CASE("emit, render and parse round trip at (2,3)") {
    Refutation r = refute(Config{2, 3, false});
    ProofTrace t = emit_trace(r);
    CHECK(t.fingerprint == OrderEnumeration(3).fingerprint());
    CHECK(t.lines.size() == 1351);
    CHECK(t.lines.front().kind == LineKind::Premises);
    CHECK(t.lines[1].kind == LineKind::AssumeNonDict);
    CHECK(t.lines.back().kind == LineKind::Conclude);

    std::string text = render_trace(t);
    CHECK(text.rfind(header23(), 0) == 0);
    ProofTrace back = parse_trace(text);
    CHECK(back == t);
}

TEST_CASE("conflicts appear in the expected case order") {
    ProofTrace t = emit_trace(refute(Config{2, 3, false}));
    std::vector<std::string> conflicts;
    for (const TraceLine& l : t.lines)
        if (l.kind == LineKind::Conflict) conflicts.push_back(rule_token(l.rule, l.dict_voter));
    CHECK(conflicts == std::vector<std::string>{"CONF-TRANS", "CONF-DICT:0", "CONF-DICT:1",
                                                "CONF-COMP"});
}

TEST_CASE("line numbering and depth are well-formed") {
    ProofTrace t = emit_trace(refute(Config{3, 3, false}));
    int depth = 0;
    for (size_t i = 0; i < t.lines.size(); ++i) {
        const TraceLine& l = t.lines[i];
        REQUIRE(l.number == static_cast<int>(i) + 1);
        switch (l.kind) {
            case LineKind::AssumeNonDict:
            case LineKind::Case: CHECK(l.depth == ++depth); break;
            case LineKind::Discharge:
            case LineKind::Conclude: CHECK(l.depth == --depth); break;
            default: CHECK(l.depth == depth); break;
        }
        for (int r : l.refs) CHECK(r < l.number);
        if (l.kind == LineKind::Prop && l.rule == TraceRule::Spu)
            CHECK(l.refs == std::vector<int>{1});
    }
    CHECK(depth == 0);
}

TEST_CASE("rendered line format") {
    ProofTrace t;
    t.cfg = Config{2, 3, false};
    t.fingerprint = OrderEnumeration(3).fingerprint();
    t.lines.push_back(TraceLine{1, 0, LineKind::Premises, std::nullopt, TraceRule::Prem, -1, {}});
    t.lines.push_back(TraceLine{2, 1, LineKind::AssumeNonDict, std::nullopt, TraceRule::NoDict,
                                -1, {}});
    t.lines.push_back(TraceLine{3, 2, LineKind::Case, TraceLiteral{1, 1, 2, true},
                                TraceRule::Case, -1, {}});
    t.lines.push_back(TraceLine{4, 2, LineKind::Conflict, std::nullopt, TraceRule::ConfDict, 0,
                                {3}});
    t.lines.push_back(TraceLine{5, 1, LineKind::Discharge, TraceLiteral{1, 1, 2, true},
                                TraceRule::Disch, -1, {3, 4}});
    t.lines.push_back(TraceLine{6, 0, LineKind::Conclude, std::nullopt, TraceRule::Concl, -1,
                                {2, 5}});
    std::string expect = header23() +
                         "1|0|PREMISES|-|PREM|-\n"
                         "2|1|ASSUME|-|NODICT|-\n"
                         "3|2|CASE|R[1](s,b,c)=T|CASE|-\n"
                         "4|2|CONFLICT|-|CONF-DICT:0|3\n"
                         "5|1|DISCHARGE|R[1](s,b,c)=T|DISCH|3,4\n"
                         "6|0|CONCLUDE|-|CONCL|2,5\n";
    CHECK(render_trace(t) == expect);
    CHECK(parse_trace(expect) == t);
}

TEST_CASE("parser accepts the degenerate trace") {
    ProofTrace t = parse_trace(header23() + kDegenerateBody);
    CHECK(t.cfg.voters == 2);
    CHECK(t.lines.size() == 6);
    REQUIRE(t.lines[2].literal.has_value());
    CHECK(t.lines[2].literal->profile == 1);
    CHECK(t.lines[2].literal->from == 1);
    CHECK(t.lines[2].literal->to == 2);
    CHECK(t.lines[2].literal->value);
}

TEST_CASE("parser rejects malformed traces") {
    std::string good = header23() + kDegenerateBody;
    auto broken = [&](const std::string& from, const std::string& to) {
        std::string s = good;
        size_t p = s.find(from);
        REQUIRE(p != std::string::npos);
        s.replace(p, from.size(), to);
        return s;
    };

    SUBCASE("bad header version") {
        CHECK_THROWS_AS(parse_trace(broken("apf 1", "apf 2")), ParseError);
    }
    SUBCASE("bad fingerprint") {
        CHECK_THROWS_AS(parse_trace(broken("fingerprint ", "fingerprint zz")), ParseError);
    }
    SUBCASE("bad line numbering") {
        CHECK_THROWS_AS(parse_trace(broken("4|2|CONFLICT", "7|2|CONFLICT")), ParseError);
    }
    SUBCASE("unknown rule tag") {
        CHECK_THROWS_AS(parse_trace(broken("CONF-TRANS", "CONF-WEIRD")), ParseError);
    }
    SUBCASE("bad literal") {
        CHECK_THROWS_AS(parse_trace(broken("R[1](s,b,c)=T|CASE", "R[1](s,b,c)=X|CASE")),
                        ParseError);
        CHECK_THROWS_AS(parse_trace(broken("R[1](s,b,c)=T|CASE", "R[1](s,b)=T|CASE")),
                        ParseError);
    }
    SUBCASE("forward ref is dangling") {
        CHECK_THROWS_AS(parse_trace(broken("CONF-TRANS|3", "CONF-TRANS|5")), ParseError);
    }
    SUBCASE("depth underflow") {
        CHECK_THROWS_AS(parse_trace(header23() +
                                    "1|0|PREMISES|-|PREM|-\n"
                                    "2|0|CONCLUDE|-|CONCL|-\n"),
                        ParseError);
    }
    SUBCASE("truncated trace does not conclude") {
        std::string s = good.substr(0, good.rfind("6|0|CONCLUDE"));
        CHECK_THROWS_AS(parse_trace(s), ParseError);
    }
    SUBCASE("empty body") {
        CHECK_THROWS_AS(parse_trace(header23()), ParseError);
    }
    SUBCASE("ref into a closed sibling scope") {
        std::string s = header23() +
                        "1|0|PREMISES|-|PREM|-\n"
                        "2|1|ASSUME|-|NODICT|-\n"
                        "3|2|CASE|R[1](s,b,c)=T|CASE|-\n"
                        "4|2|CONFLICT|-|CONF-TRANS|3\n"
                        "5|1|DISCHARGE|R[1](s,b,c)=T|DISCH|3,4\n"
                        "6|2|CASE|R[1](s,b,c)=F|CASE|-\n"
                        "7|2|CONFLICT|-|CONF-TRANS|4\n"  // line 4 is closed
                        "8|1|DISCHARGE|R[1](s,b,c)=F|DISCH|6,7\n"
                        "9|1|CASECLOSE|-|DISCH|5,8\n"
                        "10|0|CONCLUDE|-|CONCL|2,9\n";
        CHECK_THROWS_AS(parse_trace(s), ParseError);
    }
    SUBCASE("trailing fields") {
        CHECK_THROWS_AS(parse_trace(broken("CONF-TRANS|3", "CONF-TRANS|3|x")), ParseError);
    }
    SUBCASE("the error carries the offending line number") {
        try {
            parse_trace(broken("4|2|CONFLICT", "7|2|CONFLICT"));
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 8);  // 4 header lines + body line 4
        }
    }
}
