import pytest

import arrowlab


def test_fubini():
    assert [arrowlab.fubini(m) for m in (1, 2, 3, 4)] == [1, 3, 13, 75]


def test_orders():
    orders = arrowlab.orders(3)
    assert len(orders) == 13
    assert orders[0] == ["111", "011", "001"]  # a > b > c


def test_profile_count():
    assert arrowlab.profile_count(2, 3) == 169
    assert arrowlab.profile_count(3, 3) == 2197


def test_guard():
    with pytest.raises(ValueError):
        arrowlab.profile_count(5, 5)


def test_prove_and_check():
    trace = arrowlab.prove(2, 3)
    verdict = arrowlab.check(trace)
    assert verdict["valid"]
    assert verdict["rule_counts"]["CASE"] >= 4

    broken = trace.replace(")=T", ")=F", 1)
    assert not arrowlab.check(broken)["valid"]


def test_cnf_solver():
    dimacs, varmap = arrowlab.cnf(2, 3, non_dict=True)
    assert dimacs.startswith("p cnf 1014 ")
    assert '"R[0](s,a,b)": 1' in varmap
    assert not arrowlab.solve(dimacs)["sat"]

    sat_dimacs, _ = arrowlab.cnf(2, 3, non_dict=False)
    assert arrowlab.solve(sat_dimacs)["sat"]


def test_models():
    res = arrowlab.models(2, 3)
    assert res["count"] >= 2
    assert all(len(d) == 1 for d in res["dictators"])


def test_stats():
    s = arrowlab.stats(2, 3)
    assert s["cells"] == 1014
    assert s["completeness"] == 507
    assert s["transitivity"] == 1014
    assert s["non_dict"] == 2
