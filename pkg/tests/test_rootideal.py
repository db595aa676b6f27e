import pytest
from hypothesis import given, strategies as st

from katalan.combinatorics import DomainError, Multiset, bounded_partitions, extended_vectors
from katalan.rootideal import (RootIdeal, all_root_ideals, delta_k, delta_k_plus_one_relation,
                               second_components)

from oracles import all_ideals_bruteforce, is_root_ideal

LAM = (5, 4, 4, 3, 3, 2, 2, 2, 2, 1)


@st.composite
def ideals(draw, max_ell=6):
    ell = draw(st.integers(1, max_ell))
    return draw(st.sampled_from(list(all_root_ideals(ell))))


def test_running_example_structure():
    psi = delta_k(LAM, 6)
    assert psi.start_col == (3, 5, 6, 8, 9, None, None, None, None, None)
    assert psi.bottom() == 5
    assert (4, 8) in psi.removable_roots()
    assert psi.down(4) == 8
    assert psi.top(8) == 4 and psi.bot(4) == 8


def test_zero_partition_gives_empty_ideal():
    for ell in range(1, 5):
        assert delta_k((0,) * ell, ell).roots() == set()
        assert delta_k((0,) * ell, ell).bottom() == 0


def test_delta_k_rejects_large_entries():
    with pytest.raises(DomainError):
        delta_k((3, 1), 2)


def test_constructor_validation():
    with pytest.raises(DomainError):
        RootIdeal(3, [None, 3, None])
    with pytest.raises(DomainError):
        RootIdeal(3, [3, 2, None])
    with pytest.raises(DomainError):
        RootIdeal(3, [1, None, None])


def test_enumeration_matches_bruteforce():
    for ell in range(1, 6):
        got = {frozenset(p.roots()) for p in all_root_ideals(ell)}
        assert got == set(all_ideals_bruteforce(ell))


def test_removable_and_addable_match_definition():
    for ell in range(1, 5):
        pos = {(i, j) for i in range(1, ell + 1) for j in range(i + 1, ell + 1)}
        for psi in all_root_ideals(ell):
            roots = psi.roots()
            assert psi.removable_roots() == {a for a in roots if is_root_ideal(roots - {a}, ell)}
            assert psi.addable_roots() == {a for a in pos - roots if is_root_ideal(roots | {a}, ell)}


def test_empty_ideal_examples():
    psi = RootIdeal.empty(3)
    assert psi.addable_roots() == {(1, 3)}
    assert psi.down(1) is None
    assert psi.bounce_paths() == [(1,), (2,), (3,)]
    assert RootIdeal.full(4).addable_roots() == set()


def test_from_roots_and_json():
    psi = RootIdeal.from_roots(4, {(1, 3), (1, 4), (2, 4)})
    assert psi.start_col == (3, 4, None, None)
    assert RootIdeal.from_json(psi.to_json()) == psi
    with pytest.raises(DomainError):
        RootIdeal.from_roots(4, {(1, 3)})


@given(ideals())
def test_bounce_graph_properties(psi):
    ell = psi.ell
    paths = psi.bounce_paths()
    assert sorted(x for p in paths for x in p) == list(range(1, ell + 1))
    for x in range(1, ell + 1):
        d = psi.down(x)
        if d is not None:
            assert psi.up(d) == x
        assert psi.top(x) <= x <= psi.bot(x)
        assert psi.uppath(x)[-1] == x and psi.uppath(x)[0] == psi.top(x)


@given(ideals())
def test_add_remove_round_trip(psi):
    for a in psi.removable_roots():
        assert psi.remove(a).add(a) == psi
    for a in psi.addable_roots():
        assert psi.add(a).remove(a) == psi


def test_path_errors_and_empty():
    psi = delta_k(LAM, 6)
    assert psi.path(8, 4) == ()
    assert psi.path(4, 8) == (4, 8)
    with pytest.raises(DomainError):
        psi.path(1, 2)


def test_second_components():
    assert second_components({(1, 3), (1, 4), (2, 4)}) == Multiset([3, 4, 4])
    assert second_components(set()) == Multiset()


def test_removable_root_per_row_up_to_bottom():
    for ell in range(1, 6):
        for k in range(1, 5):
            for lam in bounded_partitions(ell, k):
                psi = delta_k(lam, k)
                for z in range(1, psi.bottom() + 1):
                    assert (z, k - lam[z - 1] + z + 1) in psi.removable_roots()


def test_leftmost_root_strip_sweep():
    for ell in range(1, 6):
        for k in range(1, 5):
            for lam in bounded_partitions(ell, k):
                big, stripped = delta_k_plus_one_relation(lam, k)
                psi = delta_k(lam, k)
                removed = Multiset(psi.down(z) for z in range(1, psi.bottom() + 1))
                expected = dict(second_components(psi.roots()).items())
                for a, n in removed.items():
                    expected[a] -= n
                assert second_components(big.roots()) == Multiset({a: n for a, n in expected.items() if n})


def test_wall_mirror_ceiling_trichotomy():
    for ell in range(2, 5):
        for k in range(1, 4):
            for mu in extended_vectors(ell, k, low=-1):
                psi = delta_k(mu, k)
                b = psi.bottom()
                for z in range(1, ell):
                    if mu[z - 1] + 1 == mu[z]:
                        assert psi.has_wall(z)
                    elif mu[z - 1] == mu[z] and z <= b - 1 and (z + 1 == ell or mu[z] >= mu[z + 1]):
                        # the mirror definition excludes c = z + 1; there the pair
                        # (z, z+1), (z+1, z+2) is removable but does not count
                        degenerate = {(z, z + 1), (z + 1, z + 2)} <= psi.removable_roots()
                        assert psi.has_mirror(z) != degenerate
                    elif mu[z - 1] > mu[z] and psi.down(z) is not None and psi.down(z) + 1 <= ell:
                        assert psi.has_ceiling(psi.down(z))


def test_equal_rows_before_an_ascent_have_no_mirror():
    # rows 1, 2 are equal and below the bottom, but the ascent at 2 puts a
    # wall in rows 2, 3, so row 2 has no removable root
    psi = delta_k((0, 0, 1, 1), 1)
    assert psi.bottom() == 3
    assert sorted(psi.removable_roots()) == [(1, 3), (3, 4)]
    assert not psi.has_mirror(1)
