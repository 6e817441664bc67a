#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "arrowlab/cnf.hpp"
#include "arrowlab/dpll.hpp"
#include "arrowlab/search.hpp"

using namespace arrowlab;

namespace {

Config cfg23{2, 3, false};

bool clause_satisfied(const std::vector<int>& cl, const std::vector<bool>& model) {
    for (int lit : cl) {
        bool v = model[static_cast<size_t>(std::abs(lit)) - 1];
        if (lit > 0 ? v : !v) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("export dimensions at (2,3)") {
    CnfExport e = export_cnf(cfg23, /*non_dict=*/true);
    CHECK(e.doc.var_count == 1014);
    CHECK(e.doc.clauses.size() == 3743);
    CHECK(e.map.var_count() == 1014);
    CHECK(e.map.names[0] == "R[0](s,a,b)");
    CHECK(e.map.names[1013] == "R[168](s,c,b)");

    // Dropping the non-dictatorship constraint removes exactly two clauses.
    CnfExport plain = export_cnf(cfg23, false);
    CHECK(plain.doc.clauses.size() == 3741);
    CHECK(plain.doc.var_count == 1014);

    // Clause inventory by length: 300 units, 507 + 1920 binaries, 1014
    // ternaries and 2 long non-dictatorship clauses.
    std::map<size_t, int> by_len;
    for (const auto& cl : e.doc.clauses) ++by_len[cl.size()];
    CHECK(by_len[1] == 300);
    CHECK(by_len[2] == 507 + 1920);
    CHECK(by_len[3] == 1014);
    int big = 0;
    for (auto [len, n] : by_len)
        if (len > 3) big += n;
    CHECK(big == 2);
}

TEST_CASE("variable map serializes cell names to dense indices") {
    CnfExport e = export_cnf(cfg23, true);
    std::string j = e.map.to_json();
    CHECK(j.find("\"R[0](s,a,b)\": 1") != std::string::npos);
    CHECK(j.find("\"R[168](s,c,b)\": 1014") != std::string::npos);
}

TEST_CASE("DIMACS rendering round trips") {
    CnfExport e = export_cnf(cfg23, true);
    std::string text = e.doc.to_dimacs();
    CHECK(text.rfind("p cnf 1014 3743\n", 0) == 0);
    CnfDoc back = CnfDoc::parse_dimacs(text);
    CHECK(back.var_count == e.doc.var_count);
    CHECK(back.clauses == e.doc.clauses);
}

TEST_CASE("DIMACS parser accepts comments and rejects damage") {
    CHECK(CnfDoc::parse_dimacs("c hello\np cnf 2 1\n1 -2 0\n").clauses ==
          std::vector<std::vector<int>>{{1, -2}});
    CHECK_THROWS_AS(CnfDoc::parse_dimacs("p sat 2 1\n1 0\n"), ParameterError);
    CHECK_THROWS_AS(CnfDoc::parse_dimacs("1 -2 0\n"), ParameterError);
    CHECK_THROWS_AS(CnfDoc::parse_dimacs("p cnf 2 1\n1 -2\n"), ParameterError);
    CHECK_THROWS_AS(CnfDoc::parse_dimacs("p cnf 2 2\n1 -2 0\n"), ParameterError);
    CHECK_THROWS_AS(CnfDoc::parse_dimacs("p cnf 2 1\n1 -3 0\n"), ParameterError);
    CHECK_THROWS_AS(CnfDoc::parse_dimacs("p cnf 2 1\n1 x 0\n"), ParameterError);
}

TEST_CASE("the full axiom set is unsatisfiable, without non-dictatorship it is not") {
    for (int voters : {2, 3}) {
        CAPTURE(voters);
        Config cfg{voters, 3, false};
        SolveResult r = solve_cnf(export_cnf(cfg, true).doc, SolveMode::Decide);
        CHECK_FALSE(r.sat);
        SolveResult s = solve_cnf(export_cnf(cfg, false).doc, SolveMode::Decide);
        CHECK(s.sat);
        REQUIRE(s.models.size() == 1);
    }
}

TEST_CASE("models through the variable map are dictatorial weak orders") {
    CnfExport e = export_cnf(cfg23, false);
    SolveResult r = solve_cnf(e.doc, SolveMode::Enumerate, 3);
    REQUIRE(r.models.size() == 3);
    CHECK(r.truncated);

    OrderEnumeration orders(3);
    ProfileSpace space(cfg23, orders);
    for (const auto& model : r.models) {
        // Every clause satisfied and every social relation a weak order.
        for (const auto& cl : e.doc.clauses) CHECK(clause_satisfied(cl, model));
        for (ProfileId p = 0; p < space.count(); ++p) {
            std::uint64_t bits = 0;
            for (Alt x = 0; x < 3; ++x) {
                bits |= std::uint64_t{1} << (x * 3 + x);
                for (Alt y = 0; y < 3; ++y) {
                    if (x == y) continue;
                    size_t v = static_cast<size_t>(p) * 6 +
                               static_cast<size_t>(pair_index(3, x, y));
                    if (model[v]) bits |= std::uint64_t{1} << (x * 3 + y);
                }
            }
            CHECK(is_weak_order(WeakOrder(3, bits)));
        }
    }
}

TEST_CASE("the solver and the engine agree on the model count") {
    CnfExport e = export_cnf(cfg23, false);
    SolveResult r = solve_cnf(e.doc, SolveMode::Enumerate);
    CHECK_FALSE(r.truncated);

    ModelList ml = enumerate_models(cfg23);
    REQUIRE_FALSE(ml.truncated);
    CHECK(r.models.size() == ml.models.size());

    // Same model sets, not only the same cardinality.
    std::set<std::vector<bool>> dpll_models(r.models.begin(), r.models.end());
    CHECK(dpll_models.size() == r.models.size());
    for (const Model& mo : ml.models) {
        std::vector<bool> bits;
        bits.reserve(mo.cells.size());
        for (TriState v : mo.cells) bits.push_back(v == TriState::True);
        CHECK(dpll_models.count(bits) == 1);
    }
}
