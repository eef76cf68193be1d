import pytest

import treelab

T1 = "a(y(p1(p2(p3)),r),s1(s2,s3))"
T2 = "a(p1(p2(p3)),z(r,s1(s2,s3)))"


def test_parse_and_canonical():
    assert treelab.normalize("a( b , c(d) )") == "a(b,c(d))"
    assert treelab.size("a(b,c(d))") == 4
    assert treelab.isomorphic("a(b,c(d))", "x(y(z),w)")
    assert treelab.canonical("a(b,c)") == treelab.canonical("x(y,z)")
    with pytest.raises(treelab.ParseError):
        treelab.normalize("a(b,,c)")


def test_enumerate_counts():
    assert [len(treelab.enumerate(n)) for n in range(1, 8)] == [1, 1, 2, 4, 9, 20, 48]


def test_minor():
    assert treelab.find_minor("p(q)", "a(b,c)")["p"] == "a"
    assert treelab.is_minor("a", "x(y)")
    assert not treelab.is_minor("a(b,c)", "x(y(z))")


def test_solvers_on_family_instance():
    assert treelab.lcs(T1, T2)["optimum_size"] == 8
    assert treelab.scs(T1, T2)["optimum_size"] == 11
    with pytest.raises(treelab.BudgetExceeded) as err:
        treelab.scs(T1, T2, max_size=10)
    assert err.value.args[1] == 11


def test_verify_gap():
    report = treelab.verify("p1(p2(p3))", "r", "s1(s2,s3)", jobs=2)
    assert report["gap"] == 1
    assert report["eq4_prediction"] == 10
    assert treelab.verify("p", "r", "s1(s2)")["gap"] == 0


def test_scan():
    report = treelab.scan(3)
    assert report["gap_histogram"] == {"0": report["pairs"]}
