import random

import pytest
from hypothesis import given, strategies as st

from qcanon import weights as W
from qcanon.exactpoly import LaurentPoly
from qcanon.quantumrep import GeneratorSymbol
from qcanon.wedge import (act_on_E, act_on_E_oracle, compare_wedge_bases, straighten_blocks, straighten_C,
                          wedge_canonical_via_inversion, wedge_canonical_via_projection)

q = LaurentPoly.monomial(1)
one = LaurentPoly.const(1)


def test_straightening_examples():
    assert straighten_C((1, 1)).entries == {}
    assert straighten_C((1, -1)).entries == {(1, -1): -q * q}
    assert straighten_C((3, 1)).entries == {(3, 1): -q}
    assert straighten_C((-3, 3)).entries == {(3, -3): one}


def test_straightening_cancel_pair_recursion():
    # pi(M_(r,-r)) = -q (pi(M_(r-1,1-r)) + pi(M_(1-r,r-1))) - q^2 F_(r,-r)
    lhs = straighten_C((3, -3)).entries
    rhs = {}
    for mu in ((1, -1), (-1, 1)):
        for lab, c in straighten_C(mu).entries.items():
            rhs[lab] = rhs.get(lab, LaurentPoly()) - q * c
    rhs[(3, -3)] = rhs.get((3, -3), LaurentPoly()) - q * q
    assert lhs == {k: v for k, v in rhs.items() if v}
    assert lhs == {(1, -1): q ** 3 - q, (3, -3): -q * q}


words = st.lists(st.integers(-3, 2).map(lambda x: 2 * x + 1), min_size=2, max_size=4)


@given(words, st.integers(0, 10 ** 6))
def test_straightening_confluent(word, seed):
    word = tuple(word)
    assert straighten_C(word, random.Random(seed)) == straighten_C(word)


def test_straightening_unitriangular_on_non_dominant():
    for mu in W.window_weights("C", 3, 4):
        base = W.w0(mu)
        if W.is_dominant("C", base):
            continue
        for lab, c in straighten_C(mu).entries.items():
            assert all(e > 0 for e, _ in c.terms)
            assert lab != base and W.bruhat_leq("C", base, lab)


def test_block_straightening_is_blockwise():
    for word in [(-1, -3, 1, 3), (-3, -1, 3, -1), (1, 1, 3, 1)]:
        out = straighten_blocks(word, (2, 2)).entries
        expect = {}
        for a, x in straighten_C(word[:2]).entries.items():
            for b, y in straighten_C(word[2:]).entries.items():
                expect[a + b] = x * y
        assert out == expect


def test_projection_vanishes_off_dominant(wedge_solver):
    ws = wedge_solver("C", 2, 4)
    for mu in ws.tensor.window():
        if not W.is_dominant("C", W.w0(mu)):
            assert ws.project_T(mu) == {}


def test_u_examples(wedge_solver):
    ws = wedge_solver("C", 2, 5)
    assert wedge_canonical_via_projection((1, -1), 5, ws).entries == {(1, -1): one, (3, -3): q}
    assert wedge_canonical_via_projection((3, 1), 5, ws).entries == {(3, 1): one}
    assert wedge_canonical_via_inversion((3, -3), 5, solver=ws).entries == {(3, -3): one, (5, -5): q}


@pytest.mark.parametrize("n,k", [(2, 5), (3, 3)])
def test_two_routes_agree(n, k, wedge_solver):
    ws = wedge_solver("C", n, k)
    for lam in ws.dominant():
        u = ws.u_projection(lam)
        assert u == ws.u_inversion(lam), lam
        assert u[lam] == one
        assert all(e > 0 for mu, p in u.items() if mu != lam for e, _ in p.terms)


@pytest.mark.parametrize("n,k", [(2, 4), (3, 3)])
def test_E_dual_to_monomials(n, k, wedge_solver):
    ws = wedge_solver("C", n, k)
    dom = set(ws.dominant())
    for lam in dom:
        vec = ws.E_in_M(lam)
        got = {mu: c for mu, c in vec.items() if mu in dom}
        assert got == {lam: one}, lam


def test_L_pairs_dually_with_U(wedge_solver):
    # sum over nu of u_{nu mu} bar(l_{-w0 nu, -w0 lam}) = delta
    ws = wedge_solver("C", 2, 5)
    dom = ws.dominant()
    for lam in dom:
        lcol = ws.l_dominant(W.neg_w0(lam))
        for mu in dom:
            if not ws.tensor.certified(W.neg_w0(mu), W.neg_w0(lam)):
                continue
            s = LaurentPoly()
            for nu, u in ws.u_projection(mu).items():
                x = lcol.get(W.neg_w0(nu))
                if x:
                    s = s + u * x.bar()
            assert s == (1 if mu == lam else 0), (lam, mu)


def test_action_on_E_single_factor():
    assert act_on_E(GeneratorSymbol("F", 0), (-1,)).entries == {(1,): one}
    assert act_on_E(GeneratorSymbol("E", 0), (1,)).entries == {(-1,): one}


def test_action_on_E_example():
    assert act_on_E(GeneratorSymbol("E", 1), (3, -1)).entries == {(1, -1): q, (3, -3): one}
    # no dominant target has the required weight
    assert act_on_E(GeneratorSymbol("F", 1), (3, -1)).entries == {}


@pytest.mark.parametrize("n,k", [(1, 4), (2, 5), (3, 4)])
def test_action_on_E_matches_oracle(n, k, wedge_solver):
    ws = wedge_solver("C", n, k)
    for lam in ws.dominant():
        if max(map(abs, lam)) > 2 * k - 5:
            continue
        for i in range(k - 2):
            for kind in "EF":
                g = GeneratorSymbol(kind, i)
                assert act_on_E(g, lam) == act_on_E_oracle(g, lam, ws), (g, lam)


def test_compare_example(wedge_solver):
    ok, diffs = compare_wedge_bases("a-vs-b", (1, -1), 5, b_solver=wedge_solver("B", 2, 6))
    assert ok and not diffs
    ub = wedge_solver("B", 2, 6).u_inversion((2, -2))
    assert ub[(4, -4)] == LaurentPoly.monomial(2, 1, "t")


@pytest.mark.parametrize("route", ["a-vs-c", "a-vs-b"])
def test_compare_exhaustive_n2(route, wedge_solver, sector_wedge):
    k = 4
    a = sector_wedge(2, k)
    for lam in wedge_solver("C", 2, k).dominant():
        ok, diffs = compare_wedge_bases(route, lam, k, wedge_solver("C", 2, k), a, wedge_solver("B", 2, k + 1))
        assert ok, (lam, diffs)


def test_compare_rejects_unknown_route():
    with pytest.raises(ValueError):
        compare_wedge_bases("b-vs-c", (1, -1), 3)
