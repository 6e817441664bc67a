#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "arrowlab/checker.hpp"

using namespace arrowlab;

namespace {

ProofTrace valid_trace(int voters) { return emit_trace(refute(Config{voters, 3, false})); }

// Literal equality with and without the profile component.
bool same_pair_value(const TraceLiteral& a, const TraceLiteral& b) {
    return a.from == b.from && a.to == b.to && a.value == b.value;
}

}  // namespace

TEST_CASE("the emitted refutation traces check out") {
    for (int voters : {2, 3}) {
        CAPTURE(voters);
        ProofTrace t = valid_trace(voters);
        Verdict v = check_trace(t);
        CAPTURE(v.line);
        CAPTURE(v.violation);
        CHECK(v.valid);
        CHECK(v.violation.empty());
        CHECK(v.rule_counts["PREM"] == 1);
        CHECK(v.rule_counts["NODICT"] == 1);
        CHECK(v.rule_counts["CONCL"] == 1);
        CHECK(v.rule_counts["CONF-DICT"] == voters);
        CHECK(v.rule_counts["SPU"] >= 1);
        if (voters == 2) {
            CHECK(v.rule_counts["CONF-TRANS"] == 1);
            CHECK(v.rule_counts["CONF-COMP"] == 1);
        } else {
            CHECK(v.rule_counts["CONF-TRANS"] == 2);
            CHECK(v.rule_counts["CONF-COMP"] == 2);
        }
    }
}

TEST_CASE("a parsed rendering checks the same as the original") {
    ProofTrace t = valid_trace(2);
    Verdict v = check_trace(parse_trace(render_trace(t)));
    CHECK(v.valid);
}

TEST_CASE("a wrong fingerprint is rejected up front") {
    ProofTrace t = valid_trace(2);
    t.fingerprint ^= 1;
    Verdict v = check_trace(t);
    CHECK_FALSE(v.valid);
    CHECK(v.line == 0);
}

TEST_CASE("flipping any single literal invalidates the trace") {
    ProofTrace t = valid_trace(2);
    // A targeted spot check with the exact failure line...
    for (size_t i = 0; i < t.lines.size(); ++i) {
        if (t.lines[i].kind != LineKind::Prop || t.lines[i].rule != TraceRule::Spu) continue;
        ProofTrace mut = t;
        mut.lines[i].literal->value = !mut.lines[i].literal->value;
        Verdict v = check_trace(mut);
        CHECK_FALSE(v.valid);
        CHECK(v.line == static_cast<int>(i) + 1);
        CHECK(v.violation == "pair is not unanimous in this profile");
        break;
    }
    // ...and the blanket property over every literal-bearing line.
    std::mt19937 rng(7);
    std::vector<size_t> with_lit;
    for (size_t i = 0; i < t.lines.size(); ++i)
        if (t.lines[i].literal) with_lit.push_back(i);
    std::shuffle(with_lit.begin(), with_lit.end(), rng);
    int tried = 0;
    for (size_t i : with_lit) {
        if (++tried > 60) break;
        ProofTrace mut = t;
        mut.lines[i].literal->value = !mut.lines[i].literal->value;
        CAPTURE(i);
        CHECK_FALSE(check_trace(mut).valid);
    }
}

TEST_CASE("a conflict may only cite still-active lines") {
    // Adversarial leak: the final completeness conflict cites the social
    // (c,b)=F of the open scope; retarget that ref to the first line in the
    // trace deriving the same literal, which sits in an already discharged
    // case. A checker that looks values up globally would accept it.
    ProofTrace t = valid_trace(2);
    size_t conf = 0;
    for (size_t i = 0; i < t.lines.size(); ++i)
        if (t.lines[i].kind == LineKind::Conflict && t.lines[i].rule == TraceRule::ConfComp)
            conf = i;
    REQUIRE(conf > 0);
    REQUIRE(t.lines[conf].refs.size() == 2);

    bool leaked = false;
    size_t leak_ri = 0;
    int leak_target = 0;
    for (size_t ri = 0; ri < 2 && !leaked; ++ri) {
        int orig = t.lines[conf].refs[ri];
        const TraceLiteral lit = *t.lines[orig - 1].literal;
        for (size_t j = 0; j + 1 < static_cast<size_t>(orig); ++j) {
            if (!t.lines[j].literal || !(*t.lines[j].literal == lit)) continue;
            ProofTrace mut = t;
            mut.lines[conf].refs[ri] = static_cast<int>(j) + 1;
            Verdict v = check_trace(mut);
            CHECK_FALSE(v.valid);
            CHECK(v.line == static_cast<int>(conf) + 1);
            CHECK(v.violation == "conflict cites an inactive line");
            leaked = true;
            leak_ri = ri;
            leak_target = static_cast<int>(j) + 1;
            break;
        }
    }
    CHECK(leaked);  // the same literal really does occur earlier in a closed case

    SUBCASE("the rendered form of the leak is already rejected by the parser") {
        // Scoping is enforced syntactically too: the rendered mutant refers
        // into a closed scope and never reaches the checker.
        REQUIRE(leaked);
        ProofTrace mut = t;
        mut.lines[conf].refs[leak_ri] = leak_target;
        CHECK_THROWS_AS(parse_trace(render_trace(mut)), ParseError);
    }
}

TEST_CASE("random mutations never slip past the checker") {
    ProofTrace t = valid_trace(2);
    REQUIRE(check_trace(t).valid);
    std::mt19937 rng(2026);
    auto pick = [&](size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); };

    int produced = 0;
    while (produced < 100) {
        ProofTrace mut = t;
        size_t cls = produced % 4;
        size_t i = pick(mut.lines.size());
        TraceLine& l = mut.lines[i];
        bool ok = false;
        switch (cls) {
            case 0: {  // flip a literal value
                if (l.literal) {
                    l.literal->value = !l.literal->value;
                    ok = true;
                }
                break;
            }
            case 1: {  // swap a derivation rule
                if (l.kind == LineKind::Prop) {
                    TraceRule rules[] = {TraceRule::Spu, TraceRule::Spt, TraceRule::Iia,
                                         TraceRule::Comp};
                    TraceRule r = rules[pick(4)];
                    if (r != l.rule) {
                        l.rule = r;
                        ok = true;
                    }
                }
                break;
            }
            case 2: {  // retarget one reference
                if (!l.refs.empty() && i > 0) {
                    size_t ri = pick(l.refs.size());
                    int orig = l.refs[ri];
                    int cand = static_cast<int>(pick(i)) + 1;
                    const auto& oldL = mut.lines[static_cast<size_t>(orig) - 1].literal;
                    const auto& newL = mut.lines[static_cast<size_t>(cand) - 1].literal;
                    // Keep only mutations that cannot be semantically
                    // neutral: an independence step genuinely accepts any
                    // active agreeing profile carrying the same pair state.
                    bool neutral = cand == orig;
                    if (!neutral && oldL && newL) {
                        if (l.kind == LineKind::Prop && l.rule == TraceRule::Iia)
                            neutral = same_pair_value(*oldL, *newL);
                        else
                            neutral = *oldL == *newL;
                    }
                    if (!neutral) {
                        l.refs[ri] = cand;
                        ok = true;
                    }
                }
                break;
            }
            case 3: {  // delete a discharge line
                if (l.kind == LineKind::Discharge) {
                    mut.lines.erase(mut.lines.begin() + static_cast<std::ptrdiff_t>(i));
                    ok = true;
                }
                break;
            }
        }
        if (!ok) continue;
        ++produced;
        Verdict v = check_trace(mut);
        CAPTURE(produced);
        CAPTURE(cls);
        CAPTURE(i);
        CAPTURE(v.violation);
        CHECK_FALSE(v.valid);
        CHECK(v.line >= 1);
        CHECK_FALSE(v.violation.empty());
    }
}

TEST_CASE("structural damage is pinned to the right line") {
    ProofTrace t = valid_trace(2);

    SUBCASE("conclusion citing something other than the assumption") {
        t.lines.back().refs[0] = 1;
        Verdict v = check_trace(t);
        CHECK_FALSE(v.valid);
        CHECK(v.line == static_cast<int>(t.lines.size()));
    }
    SUBCASE("truncated before the conclusion") {
        t.lines.pop_back();
        CHECK_FALSE(check_trace(t).valid);
    }
    SUBCASE("discharge pointing at the wrong case") {
        for (size_t i = 0; i < t.lines.size(); ++i)
            if (t.lines[i].kind == LineKind::Discharge) {
                t.lines[i].refs[0] -= 1;
                Verdict v = check_trace(t);
                CHECK_FALSE(v.valid);
                CHECK(v.line == static_cast<int>(i) + 1);
                CHECK(v.violation == "discharge must cite the case it closes");
                break;
            }
    }
    SUBCASE("a case close citing twice the same truth value") {
        // Point the case close at a sibling discharge pair from the other
        // truth value of an inner split: same cell, same value.
        bool done = false;
        for (size_t i = 0; i < t.lines.size() && !done; ++i) {
            if (t.lines[i].kind != LineKind::CaseClose) continue;
            TraceLine& cc = t.lines[i];
            const TraceLine& d1 = t.lines[static_cast<size_t>(cc.refs[0]) - 1];
            const TraceLine& d2 = t.lines[static_cast<size_t>(cc.refs[1]) - 1];
            // Forge d1's literal to match d2's value.
            t.lines[static_cast<size_t>(cc.refs[0]) - 1].literal = d2.literal;
            // Keep its own case in sync so the discharge itself still passes.
            t.lines[static_cast<size_t>(d1.refs[0]) - 1].literal = d2.literal;
            done = true;
        }
        REQUIRE(done);
        Verdict v = check_trace(t);
        CHECK_FALSE(v.valid);
    }
}
