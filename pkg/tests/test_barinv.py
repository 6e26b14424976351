import pytest
from hypothesis import given, strategies as st

from qcanon import weights as W
from qcanon.barinv import (BarEngine, ThetaOracle, bar_sector, bar_tensor, example_pair_C, solve_pair,
                           stability_check, theta_on_pair, truncate)
from qcanon.exactpoly import LaurentPoly
from qcanon.quantumrep import CartanData, apply_once

from example_formulas import expected_bar

q = LaurentPoly.monomial(1)
qi = LaurentPoly.monomial(-1)


def test_bar_example_half_pair():
    exp = bar_tensor((1, -1), 4)
    assert exp.coeff((-1, 1)) == q * q - qi * qi


def test_increasing_monomials_are_fixed():
    assert bar_tensor((-3, -1), 4).image == {(-3, -1): LaurentPoly.const(1)}
    assert bar_tensor((-5, -3, 1), 4).image == {(-5, -3, 1): LaurentPoly.const(1)}


def test_solved_pair_matches_closed_formulas():
    k = 4
    solved = solve_pair("C", k)
    for key, img in example_pair_C(k).table.items():
        assert dict(img) == dict(solved.table[key]), key


def test_solved_bar_matches_example_formulas():
    k = 5
    eng = BarEngine("C", k, pair_method="solve")
    for lam in W.window_weights("C", 2, k):
        assert eng.psi(lam) == expected_bar(*lam, k), lam


def test_type_a_restriction_matches_solve():
    k = 3
    assert theta_on_pair("A", k, "closed").as_dicts() == theta_on_pair("A", k, "solve").as_dicts()


@pytest.mark.parametrize("typ,duals", [("C", (False, False)), ("B", (False, False)),
                                       ("Amix", (False, True)), ("Amix", (True, False))])
def test_theta_oracle_intertwines(typ, duals):
    k = 3
    cart = CartanData(typ)
    lo = 0 if typ == "Amix" else None
    orc = ThetaOracle(cart, k, duals, lo)
    for a in W.window_entries(typ, k, lo):
        for b in orc.last.order:
            assert orc.check((a,), b)


@pytest.mark.parametrize("typ", ["C", "B", "A"])
def test_involutive_and_triangular(typ, engine):
    eng = engine(typ, 3)
    one = LaurentPoly.const(1, eng.var)
    for lam in W.window_weights(eng.lattice_type, 3, 3):
        img = eng.psi(lam)
        assert img[lam] == one
        assert all(eng.leq(mu, lam) for mu in img)
        assert eng.psi_vector(img) == {lam: one}


@pytest.mark.parametrize("typ", ["C", "B", "A"])
def test_psi_commutes_with_generators(typ, engine):
    k = 3
    eng = engine(typ, k)
    cart = CartanData(typ)
    one = cart.poly()
    for lam in W.window_weights(eng.lattice_type, 2, k):
        for i in cart.window_nodes(k):
            for kind in "EF":
                lhs = eng.psi_vector(apply_once(cart, kind, i, {lam: one}))
                assert lhs == apply_once(cart, kind, i, eng.psi(lam))


def test_descending_order_is_wrong():
    # the pair operators must be composed in ascending order
    eng = BarEngine("C", 3, order="descending")
    one = LaurentPoly.const(1)
    bad = [lam for lam in W.window_weights("C", 3, 3) if eng.psi_vector(eng.psi(lam)) != {lam: one}]
    assert bad


def test_sector_agrees_on_minimal_sector():
    assert bar_sector((-1, 1), 4).image == bar_tensor((-1, 1), 4).image
    assert bar_sector((1, -1), 4).coeff((-1, 1)) == 0
    assert bar_sector((3,), 4).image == {(3,): LaurentPoly.const(1)}


def test_sector_expansion_stays_in_sector(engine):
    eng = engine("A", 3)
    for lam in W.window_weights("C", 3, 3):
        assert {W.sign_pattern(mu) for mu in eng.psi(lam)} == {W.sign_pattern(lam)}


def test_stability_examples():
    assert stability_check((1, -1), 3, 5)
    assert stability_check((2, -2), 3, 5, "B")
    assert stability_check((3, 1), 3, 3)


@given(st.lists(st.integers(-3, 2).map(lambda x: 2 * x + 1), min_size=2, max_size=3))
def test_stability_property(lam):
    lam = tuple(lam)
    small = BarEngine("C", 3).psi(lam)
    big = BarEngine("C", 4).psi(lam)
    assert truncate(big, "C", 3) == small


def test_weight_preserved(engine):
    eng = engine("B", 3)
    for lam in W.window_weights("B", 3, 3):
        for mu in eng.psi(lam):
            assert W.wt("B", mu) == W.wt("B", lam)


def test_outside_window_rejected():
    with pytest.raises(ValueError):
        BarEngine("C", 2).psi((5, 1))
