import pytest

import oracles
from algebra.builtins import alternating, psl3_3, suzuki, symmetric, thevenaz
from errors import NotSylow
from fusion import (
    fusion_closure,
    fusion_controlled_by_normalizer,
    fusion_equivalent,
    fusion_partition,
    normalizer_permutes_center,
    sylow_conjugates,
    ti_sylow,
)
from local_structure import sylow_subgroup
from perm_core import PermGroup, SubgroupHandle, _element_tuples, as_tuple, conjugate, normalizer, subgroup_generated


def _check_witness_triples(report):
    omega = report.omega1_S
    for s, g, t in report.witnesses:
        assert report.sylow.contains(s)
        assert omega.contains(t)
        assert as_tuple(conjugate(g, s)) == as_tuple(t)


def test_partition_leaders_and_conjugators():
    G = symmetric(4)
    elements = sorted(_element_tuples(G))
    partition = fusion_partition(G, elements)
    assert len({leader for leader, _ in partition.values()}) == 5
    for s, (leader, g) in partition.items():
        assert as_tuple(conjugate(g, s)) == leader


def test_thevenaz_fusion_closure_generates():
    G = thevenaz()
    S = sylow_subgroup(G, 2)
    report = fusion_closure(G, S, 2)
    assert report.omega1_S.order == 16
    assert report.closure_generates
    assert report.closure.order == 32
    _check_witness_triples(report)


def test_psl3_3_fusion_closure_generates():
    G = psl3_3()
    S = sylow_subgroup(G, 2)
    report = fusion_closure(G, S, 2)
    assert report.closure_generates
    _check_witness_triples(report)


def test_suzuki_fusion():
    G = suzuki(8)
    S = sylow_subgroup(G, 2)
    report = fusion_closure(G, S, 2)
    assert not report.closure_generates
    assert report.closure.order == 8

    assert ti_sylow(G, 2, S)
    conjugates = sylow_conjugates(G, S)
    assert len(conjugates) == 65
    assert oracles.sylow_count_divides(G.order, 2, len(conjugates))

    N = normalizer(G, S)
    assert N.order == 448
    control = fusion_controlled_by_normalizer(G, S, partition=report.partition, N=N)
    assert control.controlled
    assert control.counterexample is None
    assert normalizer_permutes_center(G, S, N)


def test_fusion_not_controlled_in_s4():
    #the three double transpositions are fused in S4 but the Sylow is self-normalising
    G = symmetric(4)
    S = sylow_subgroup(G, 2)
    control = fusion_controlled_by_normalizer(G, S)
    assert control.normalizer.order == 8
    assert not control.controlled
    s, t = control.counterexample
    assert S.contains(s) and S.contains(t)


def test_ti_sylow_false_for_s4():
    assert not ti_sylow(symmetric(4), 2)


def test_fusion_equivalence():
    A5 = alternating(5)
    A4 = SubgroupHandle(A5, PermGroup(5, [[1, 2, 0, 3, 4], [0, 2, 3, 1, 4]]))
    assert A4.order == 12
    assert fusion_equivalent(A5, A4, 2)
    V = subgroup_generated(A5, [[1, 0, 3, 2, 4], [2, 3, 0, 1, 4]])
    assert not fusion_equivalent(A5, V, 2)
    assert not fusion_equivalent(symmetric(4), PermGroup(4, [[1, 0, 2, 3]]), 2)


def test_closure_needs_a_sylow():
    G = symmetric(4)
    V = subgroup_generated(G, [[1, 0, 3, 2], [2, 3, 0, 1]])
    with pytest.raises(NotSylow):
        fusion_closure(G, V, 2)
