from math import comb
from pathlib import Path

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from katalan.combinatorics import DomainError, Multiset, bounded_partitions
from katalan.katalan import (KatalanTerm, closed_gkk, evaluate, evaluate_combination,
                             evaluate_series_oracle, gkk, gkk_term, lower, lower_power, mirror_case,
                             mirror_rhs, mirror_straighten, recurrence_addable, recurrence_multiset_add,
                             recurrence_multiset_remove, recurrence_removable, render_grid)
from katalan.rootideal import RootIdeal, all_root_ideals, delta_k
from katalan.symfunc import HExpansion, jacobi_trudi, schur_expand
from katalan.verify import SweepConfig, gen_mirror_straightening, gen_mirror_vanishing

from oracles import g_sym, k_sym, to_sympy

h = HExpansion.h
one = HExpansion.one()
GOLDEN = Path(__file__).parent / "golden"


@st.composite
def terms(draw, max_ell=4, max_size=6):
    ell = draw(st.integers(1, max_ell))
    psi = draw(st.sampled_from(list(all_root_ideals(ell))))
    gamma = tuple(draw(st.lists(st.integers(-1, 3), min_size=ell, max_size=ell)))
    if abs(sum(gamma)) > max_size:
        gamma = (0,) * ell
    M = Multiset(draw(st.lists(st.integers(1, ell), max_size=3)))
    return KatalanTerm(psi, M, gamma)


def test_small_evaluations():
    assert evaluate(KatalanTerm(RootIdeal.empty(1), Multiset(), (3,))) == h(3)
    assert gkk((1,), 1) == h(1)
    # Delta^1(1,1) = {(1,2)} and Delta^2(1,1) is empty
    assert gkk_term((1, 1), 1).ideal.roots() == {(1, 2)}
    assert gkk((1, 1), 1) == h(1, 1) + h(1)
    t = KatalanTerm(RootIdeal.from_roots(2, {(1, 2)}), Multiset(), (1, 1))
    assert evaluate_series_oracle(t) == h(1, 1) + h(1)


def test_empty_ideal_is_g():
    # with no roots and no lowering the function is the determinant g_gamma
    for gamma in [(1, 1, 0), (2, 0, 1), (0, 2, 2), (-1, 3, 1), (3, 1, 2)]:
        t = KatalanTerm(RootIdeal.empty(3), Multiset(), gamma)
        assert to_sympy(evaluate(t)) == g_sym(gamma)


def _full_ideal_sym(gamma, M):
    # the full ideal cancels every (1 - R_ij): a product of k-functions
    out = sympy.Integer(1)
    for z, g in enumerate(gamma, 1):
        m = M.count(z)
        out *= sum((-1) ** j * comb(m, j) * k_sym(g - j, z - 1) for j in range(m + 1))
    return sympy.expand(out)


def test_full_ideal_is_product_of_k():
    for gamma in [(1, 1, 1), (2, 0, 1), (0, 0, 3), (2, 2, -1)]:
        for M in [Multiset(), Multiset([3]), Multiset([1, 2, 2]), Multiset([3, 3])]:
            t = KatalanTerm(RootIdeal.full(3), M, gamma)
            assert to_sympy(evaluate(t)) == _full_ideal_sym(gamma, M)


@settings(max_examples=200, deadline=None)
@given(terms())
def test_dual_routes_agree(t):
    assert evaluate(t) == evaluate_series_oracle(t)


@settings(deadline=None)
@given(terms(), st.data())
def test_removable_recurrence(t, data):
    roots = sorted(t.ideal.removable_roots())
    if roots:
        beta = data.draw(st.sampled_from(roots))
        assert evaluate(t) == evaluate_combination(recurrence_removable(t, beta))


@settings(deadline=None)
@given(terms(), st.data())
def test_addable_recurrence(t, data):
    roots = sorted(t.ideal.addable_roots())
    if roots:
        alpha = data.draw(st.sampled_from(roots))
        assert evaluate(t) == evaluate_combination(recurrence_addable(t, alpha))


@settings(deadline=None)
@given(terms(), st.data())
def test_multiset_recurrences_are_inverse(t, data):
    m = data.draw(st.integers(1, t.ell))
    added = recurrence_multiset_add(t, m)
    assert evaluate(t) == evaluate_combination(added)
    bigger = added[0][1]
    assert evaluate(bigger) == evaluate_combination(recurrence_multiset_remove(bigger, m))


def test_addable_on_empty_ideal():
    t = KatalanTerm(RootIdeal.empty(2), Multiset(), (1, 1))
    combo = recurrence_addable(t, (1, 2))
    assert [c for c, _ in combo] == [1, -1]
    assert combo[1][1].gamma == (2, 0)
    assert evaluate_combination(combo) == evaluate(t)


def test_recurrence_argument_errors():
    t = KatalanTerm(RootIdeal.empty(2), Multiset(), (1, 1))
    with pytest.raises(DomainError):
        recurrence_removable(t, (1, 2))
    with pytest.raises(DomainError):
        recurrence_multiset_remove(t, 1)
    with pytest.raises(DomainError):
        recurrence_multiset_add(t, 3)


def test_mirror_vanishing_instances():
    cfg = SweepConfig(random_instances=60)
    insts = gen_mirror_vanishing(cfg)
    assert len(insts) >= 50
    branches = set()
    for tj, y, z in insts:
        t = KatalanTerm.from_json(tj)
        branches.add(mirror_case(t, y, z)[0])
        assert evaluate(t) == evaluate_combination(mirror_rhs(t, y, z))
    assert branches == {"zero", "shift"}


def test_mirror_straightening_instances():
    insts = gen_mirror_straightening(SweepConfig(random_instances=60))
    assert len(insts) >= 50
    for tj, y, z in insts:
        t = KatalanTerm.from_json(tj)
        assert evaluate(t) == evaluate_combination(mirror_straighten(t, y, z))


def test_mirror_needs_hypotheses():
    t = KatalanTerm(RootIdeal.empty(3), Multiset(), (0, 0, 0))
    assert mirror_case(t, 1, 1)[0] is None
    assert mirror_rhs(t, 1, 1) is None
    assert mirror_straighten(t, 1, 3) is None


def test_large_k_gives_schur_top():
    for ell in range(1, 4):
        for lam in bounded_partitions(ell, 3):
            if sum(lam) == 0:
                continue
            top = gkk(lam, max(sum(lam), 1)).top_degree_component()
            assert top == jacobi_trudi(lam)


def test_closed_equals_gkk_when_ideal_empty():
    for ell in range(1, 4):
        for k in range(1, 4):
            for lam in bounded_partitions(ell, k):
                if not delta_k(lam, k).roots():
                    assert closed_gkk(lam, k) == gkk(lam, k)


def test_top_component_schur_positive():
    for ell in range(1, 4):
        for k in range(1, 4):
            for lam in bounded_partitions(ell, k):
                top = gkk(lam, k).top_degree_component()
                coeffs = schur_expand(top) if sum(lam) else {(): 1}
                assert coeffs is not None and all(c > 0 for c in coeffs.values()), (lam, k)


def test_gkk_rejects_bad_input():
    with pytest.raises(DomainError):
        gkk((2, 1), 1)
    with pytest.raises(DomainError):
        gkk((1, 2), 2)
    # generalized members may have ascents; this one collapses to the constant
    assert gkk((0, 1), 2, generalized=True) == one == gkk((0, 0), 2)


def test_lowering_vanishes_past_bound():
    for ell in range(1, 4):
        for k in range(1, 3):
            for lam in bounded_partitions(ell, k):
                t = gkk_term(lam, k)
                for z in range(1, ell + 1):
                    n = lam[z - 1] + ell - z + 1
                    assert evaluate_combination(lower_power(t, z, n)) == 0


def test_lower_is_structural():
    t = KatalanTerm(RootIdeal.empty(3), Multiset([2]), (1, 2, 0))
    assert lower(t, 2) == [(1, t.with_gamma((1, 1, 0)))]
    assert lower_power(t, 1, 3) == [(1, t.with_gamma((-2, 2, 0)))]
    assert lower_power(t, 4, 1) == []
    assert lower_power(t, 2, 0) == [(1, t)]
    with pytest.raises(IndexError):
        lower(t, 0)


def test_grid_golden():
    t = KatalanTerm(RootIdeal.from_roots(4, {(1, 3), (1, 4), (2, 4)}), Multiset([2, 3, 4, 4]),
                    (3, 2, 1, 3))
    assert render_grid(t) == (GOLDEN / "example_grid.txt").read_text()


def test_grid_without_roots_or_bullets():
    t = KatalanTerm(RootIdeal.empty(3), Multiset(), (-1, 10, 0))
    assert render_grid(t) == (
        "+--+--+--+\n"
        "|-1|  |  |\n"
        "+--+--+--+\n"
        "|  |10|  |\n"
        "+--+--+--+\n"
        "|  |  | 0|\n"
        "+--+--+--+\n")


@given(terms())
def test_term_json_round_trip(t):
    assert KatalanTerm.from_json(t.to_json()) == t


def test_term_validation():
    with pytest.raises(DomainError):
        KatalanTerm(RootIdeal.empty(2), Multiset(), (1,))
    with pytest.raises(DomainError):
        KatalanTerm(RootIdeal.empty(2), Multiset([3]), (1, 1))
