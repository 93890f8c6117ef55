from collections import Counter

from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from local_structure import is_p_group, omega1, omega1_radical, p_residual, sylow_subgroup
from perm_core import PermGroup, _element_tuples, conjugacy_classes

#random subgroups of the symmetric group on six points against brute force

DEGREE = 6
PRIMES = (2, 3, 5)

generator_lists = st.lists(st.permutations(range(DEGREE)), min_size=1, max_size=3)


def _members(H):
    return set(_element_tuples(H.group))


@settings(derandomize=True, max_examples=20, deadline=None)
@given(generator_lists)
def test_order_and_classes(gens):
    G = PermGroup(DEGREE, gens)
    group = oracles.closure(gens, DEGREE)
    assert G.order == len(group)
    assert set(_element_tuples(G)) == group

    classes = conjugacy_classes(G)
    expected = Counter(len(c) for c in oracles.conjugacy_partition(group))
    assert Counter(classes.sizes) == expected


@settings(derandomize=True, max_examples=20, deadline=None)
@given(generator_lists)
def test_local_structure(gens):
    G = PermGroup(DEGREE, gens)
    group = oracles.closure(gens, DEGREE)
    for p in PRIMES:
        S = sylow_subgroup(G, p)
        sylow = _members(S)
        assert oracles.is_subgroup_of_order(sylow, oracles.p_part(len(group), p), DEGREE)
        assert sylow <= group
        assert is_p_group(S, p)
        assert all(oracles.p_part(oracles.order_of(x), p) == oracles.order_of(x) for x in sylow)

        assert omega1(S, p).order == len(oracles.omega1(sylow, p, DEGREE))
        assert omega1_radical(G, p).order == len(oracles.omega1(group, p, DEGREE))
        assert p_residual(G, p).order == len(oracles.p_residual(group, p, DEGREE))
