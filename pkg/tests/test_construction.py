from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fanoforge import chow
from fanoforge.chow import GEOMETRIC, PAPER_FORMAL, BundleData
from fanoforge.construction import (ConstructionInput, CurveClass, build_threefold,
                                    choose_splitting, cyclic_cover, degree_for_n,
                                    family_distinctness, fano_anticanonical_bidegree,
                                    fano_bidegree_check, nef_pairing_check, p_cover,
                                    unbounded_search)
from fanoforge.errors import Infeasible, InvalidInput
from fanoforge.presets import ample_k_model, raynaud_model


def test_choose_splitting_examples(k3a):
    A = k3a.divisor(1)
    ext = choose_splitting(k3a, 3, 10)
    assert (ext.L, ext.Lp, ext.lenZ) == (A, -10 * A, 10)
    ext = choose_splitting(k3a, 1, 4)
    assert (ext.L, ext.Lp, ext.lenZ) == (A, -4 * A, 4)


def test_choose_splitting_infeasible_reports_neighbours(k3a):
    with pytest.raises(Infeasible) as err:
        choose_splitting(k3a, 3, 11)
    assert "10, 22" in str(err.value)


@given(st.integers(1, 10), st.integers(1, 200))
def test_splitting_feasibility_matches_brute_force(n, d):
    # rho = 1, A^2 = 1, K = 3A: L = kA gives k^2 + 3nk
    model = ample_k_model(9)
    feasible = any(k * k + 3 * n * k == d for k in range(1, d + 1))
    try:
        choose_splitting(model, n, d)
        assert feasible
    except Infeasible:
        assert not feasible


def test_construction_input_validation(k3a, p2):
    with pytest.raises(InvalidInput):
        ConstructionInput(k3a, 4, 3, 10)
    with pytest.raises(InvalidInput):
        ConstructionInput(p2, 3, 3, 10)          # K not ample
    with pytest.raises(InvalidInput):
        ConstructionInput(raynaud_model(9, 5), 3, 3, 10)
    assert ConstructionInput(k3a, 3, 3, 10).D == k3a.divisor(1)


def test_build_threefold_examples(k3a):
    rep = build_threefold(ConstructionInput(k3a, 3, 3, 10))
    assert (rep.deg_paper, rep.deg_geom) == (216, 216)
    assert rep.family_dim == 20 and rep.extension_space_dim == 9 and rep.parameter_count == 29
    assert rep.locally_free
    rep = build_threefold(ConstructionInput(k3a, 3, 4, choose_splitting(k3a, 4, 13).lenZ))
    assert (rep.deg_paper, rep.deg_geom) == (630, 342)
    rep = build_threefold(ConstructionInput(k3a, 3, 1, 4))
    assert rep.antiK == chow.hyperplane(k3a).scale(2)


def test_build_threefold_propagates_infeasible(k3a):
    with pytest.raises(Infeasible):
        build_threefold(ConstructionInput(k3a, 3, 3, 11))


def test_nef_pairing_examples(k3a):
    n = 3
    antiK = chow.hyperplane(k3a).scale(2) + chow.pullback(k3a, (n - 1) * k3a.canonical)
    rep = nef_pairing_check(antiK)
    assert rep.entries == [("fiber", 2, True)] and rep.verdict and rep.partial
    assert rep.note == "partial evidence only"
    # H-degree 0 and K.C = -1, i.e. A.C = -1/3
    rep = nef_pairing_check(antiK, [("bad", 0, [Fraction(-1, 3)])])
    assert rep.entries[1] == ("bad", -(n - 1), False) and not rep.verdict and not rep.partial
    with pytest.raises(InvalidInput):
        nef_pairing_check(antiK, [CurveClass("blank", Fraction(1), ())])
    with pytest.raises(InvalidInput):
        nef_pairing_check(antiK, ["nonsense"])


def test_p_cover_examples(k3a):
    E = BundleData(k3a, -9 * k3a.divisor(1), 0)
    A = k3a.divisor(1)
    assert p_cover(k3a, E, 3, A, GEOMETRIC).degree == 504
    rep = p_cover(k3a, E, 3, A, PAPER_FORMAL)
    assert rep.degree == 1800 and rep.ample_certified and rep.multiplier == 3
    with pytest.raises(InvalidInput):
        p_cover(k3a, E, 3, k3a.zero(), GEOMETRIC)
    with pytest.raises(InvalidInput):
        p_cover(k3a, E, 2, A, GEOMETRIC)


@pytest.mark.parametrize("mode", [GEOMETRIC, PAPER_FORMAL])
@pytest.mark.parametrize("p", [3, 5, 7])
def test_p_cover_is_quadratic_in_D(k3a, mode, p):
    # pullbacks of three surface divisors meet trivially, so the cube has no t^3 term
    E = BundleData(k3a, -9 * k3a.divisor(1), 0)
    A = k3a.divisor(1)
    deg = [p_cover(k3a, E, p, t * A, mode).degree for t in range(1, 5)]
    d1 = [b - a for a, b in zip(deg, deg[1:])]
    d2 = [b - a for a, b in zip(d1, d1[1:])]
    assert d2[0] == d2[1] == 2 * 6 * p * (p - 1) ** 2 * 1


def test_cyclic_cover_examples():
    rep = cyclic_cover(504, 3)
    assert (rep.canonical_multiple, rep.degree, rep.K_nef) == (1, 1512, True)
    rep = cyclic_cover(504, 2)
    assert (rep.canonical_multiple, rep.degree, rep.K_nef) == (0, 0, True)
    with pytest.raises(InvalidInput):
        cyclic_cover(504, 6, p=3)
    with pytest.raises(InvalidInput):
        cyclic_cover(504, 1)
    assert cyclic_cover(504, 4, p=3).degree == 4 * 8 * 504


def test_family_distinctness():
    assert family_distinctness(10, 22)
    assert not family_distinctness(10, 10)
    assert family_distinctness(1, 2)
    with pytest.raises(InvalidInput):
        family_distinctness(0, 2)


def test_unbounded_search_examples(k3a):
    assert unbounded_search(k3a, 1000, PAPER_FORMAL) == (5, 1224)
    assert unbounded_search(k3a, 1, PAPER_FORMAL) == (3, 216)
    assert unbounded_search(k3a, 1, GEOMETRIC) == (3, 216)
    assert unbounded_search(ample_k_model(1), 216, PAPER_FORMAL) == (6, 222)
    with pytest.raises(InvalidInput):
        unbounded_search(k3a, 0, PAPER_FORMAL)


@pytest.mark.parametrize("mode", [GEOMETRIC, PAPER_FORMAL])
@given(st.integers(1, 10 ** 7), st.integers(1, 10 ** 7))
def test_unbounded_search_monotone(mode, a, b):
    model = ample_k_model(9)
    lo, hi = sorted((a, b))
    n1, d1 = unbounded_search(model, lo, mode)
    n2, d2 = unbounded_search(model, hi, mode)
    assert n1 <= n2 and d1 >= lo and d2 >= hi
    if n2 > 3:
        assert degree_for_n(9, n2 - 1, mode) < hi


def test_degree_for_n():
    assert degree_for_n(9, 4, PAPER_FORMAL) == 630
    assert degree_for_n(9, 4, GEOMETRIC) == 342


def test_fano_bidegree():
    assert fano_bidegree_check(3, 3)
    assert not fano_bidegree_check(5, 4)
    assert fano_bidegree_check(2, 7)
    assert fano_anticanonical_bidegree(3, 5) == (3, 5)
    with pytest.raises(InvalidInput):
        fano_bidegree_check(4, 5)
