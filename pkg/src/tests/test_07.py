import cmath
import copy
import json
import time
from functools import lru_cache

import pytest

from algebra.builtins import BUILTINS, alternating, builtin, cyclic, dihedral, psl2, psl3_3, suzuki, symmetric, thevenaz
from classifier import INDEX_TWO_NOTE, TrichotomyVerdict, classify, reverify
from errors import NotPrime, StaleCertificate
from local_structure import omega1_radical, sylow_subgroup
from perm_core import PermGroup, _element_tuples, _order
from settings import ClassifyOptions
from witnesses import CHECK_NAMES

#end-to-end classification and re-verification


def _round_trip(verdict):
    return TrichotomyVerdict.from_dict(json.loads(json.dumps(verdict.to_dict())))


@pytest.fixture(scope="module")
def sz8_verdict():
    G = suzuki(8)
    return G, classify(G, 2)


def test_s3_is_torsion_free_by_criterion_a():
    start = time.perf_counter()
    verdict = classify(symmetric(3), 2)
    assert time.perf_counter() - start < 1.0
    assert verdict.branch == "torsion_free"
    assert verdict.criterion == "A"
    assert verdict.primes == [3]
    assert verdict.certified
    assert verdict.cellularity_of_completion is True
    assert reverify(verdict, symmetric(3), 2)


@pytest.mark.parametrize("n", [4, 8])
def test_symmetric_groups_criterion_a(n):
    verdict = classify(symmetric(n), 2)
    assert verdict.branch == "torsion_free"
    assert verdict.criterion == "A"


def test_a4_reduces_to_klein_group():
    verdict = classify(alternating(4), 2)
    assert verdict.branch == "aspherical"
    assert verdict.aspherical_kind == "p_group"
    assert [stage["order"] for stage in verdict.reduction] == [12, 4]
    assert reverify(_round_trip(verdict), alternating(4), 2)


def test_a5_criterion_a():
    verdict = classify(alternating(5), 2)
    assert verdict.branch == "torsion_free"
    assert verdict.criterion == "A"
    assert verdict.facts["sylow_order"] == 4
    assert verdict.primes == [3, 5]


def test_p_not_dividing_the_order():
    verdict = classify(cyclic(5), 2)
    assert verdict.branch == "aspherical"
    assert verdict.aspherical_kind == "trivial"
    assert verdict.cellularity_of_completion is True
    assert "contractible" in verdict.fundamental_group_note
    assert reverify(verdict, cyclic(5), 2)


def test_p_group_is_aspherical():
    verdict = classify(dihedral(4), 2)
    assert verdict.branch == "aspherical"
    assert verdict.aspherical_kind == "p_group"


def test_thevenaz_criterion_b():
    G = thevenaz()
    verdict = classify(G, 2)
    assert verdict.branch == "torsion_free"
    assert verdict.criterion == "B"
    assert verdict.criteria == {"A": False, "B": True}
    assert verdict.facts["omega1_index"] == 2
    assert INDEX_TWO_NOTE in verdict.notes
    assert verdict.certificate["conjugators"]
    assert reverify(_round_trip(verdict), G, 2)


def test_psl3_3_criterion_b():
    verdict = classify(psl3_3(), 2)
    assert verdict.branch == "torsion_free"
    assert verdict.criterion == "B"
    assert verdict.primes == [3, 13]
    assert INDEX_TWO_NOTE in verdict.notes


def test_suzuki_torsion(sz8_verdict):
    G, verdict = sz8_verdict
    assert verdict.branch == "torsion"
    assert verdict.certified
    assert verdict.witness.provenance == "suzuki"
    assert verdict.witness.passed
    assert verdict.cellularity_of_completion is False
    assert verdict.facts["sylow_order"] == 64
    assert verdict.facts["omega1_S_order"] == 8


def test_suzuki_verdict_reverifies_from_its_serialised_form(sz8_verdict):
    G, verdict = sz8_verdict
    assert reverify(_round_trip(verdict), G, 2)


def test_psl2_19_at_three():
    G = psl2(19)
    verdict = classify(G, 3)
    assert verdict.branch == "torsion"
    assert verdict.witness.provenance == "psl2"
    assert verdict.witness.passed
    assert reverify(_round_trip(verdict), G, 3)


def test_corrupted_conjugator_is_rejected():
    G = thevenaz()
    data = classify(G, 2).to_dict()
    tampered = copy.deepcopy(data)
    for triple in tampered["certificate"]["conjugators"]:
        if triple[0] != triple[2]:
            triple[1] = list(range(12))
            break
    assert not reverify(TrichotomyVerdict.from_dict(tampered), G, 2)


def test_foreign_element_is_stale():
    G = thevenaz()
    data = classify(G, 2).to_dict()
    data["certificate"]["omega1_seeds"][0] = [1, 0] + list(range(2, 12))
    with pytest.raises(StaleCertificate):
        reverify(TrichotomyVerdict.from_dict(data), G, 2)


def test_corrupted_witness_is_rejected():
    G = psl2(19)
    data = classify(G, 3).to_dict()
    identity = [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]
    data["witness"]["generator_images"] = [identity for _ in data["witness"]["generator_images"]]
    assert not reverify(TrichotomyVerdict.from_dict(data), G, 3)


def test_forged_normalizer_is_rejected():
    #a cyclic Sylow 3-subgroup passed off as its own normaliser, with a
    #character that is not constant on the G-fusion of S
    G = psl2(19)
    data = classify(G, 3).to_dict()
    c = next(x for x in _element_tuples(sylow_subgroup(G, 3).group) if _order(x) == 9)
    powers = [tuple(range(G.degree))]
    for _ in range(8):
        powers.append(tuple(c[i] for i in powers[-1]))
    zeta = cmath.exp(2j * cmath.pi / 3)
    image = [[[zeta.real, zeta.imag], [0.0, 0.0]], [[0.0, 0.0], [zeta.real, zeta.imag]]]
    witness = data["witness"]
    witness["sylow_generators"] = [list(c)]
    witness["omega1_generators"] = [list(powers[3])]
    witness["normalizer_generators"] = [list(c)]
    witness["generator_images"] = [image]
    witness["fusion"] = [[list(s), list(powers[0]), list(s)] for s in powers]
    witness["checks"] = {name: True for name in CHECK_NAMES}
    assert not reverify(TrichotomyVerdict.from_dict(data), G, 3)


SMALL_PARAMS = {
    "cyclic": (6,),
    "elem_abelian": (2, 3),
    "dihedral": (6,),
    "semidihedral": (16,),
    "symmetric": (4,),
    "alternating": (5,),
    "sylow2_symmetric": (2,),
    "thevenaz": (),
    "psl2": (19,),
    "psl3_3": (),
    "suzuki": (8,),
}


@lru_cache(maxsize=None)
def _classified(name, p):
    G = builtin(name, SMALL_PARAMS[name])
    return G, classify(G, p, ClassifyOptions(evaluate_all_criteria=True))


def test_every_builtin_has_small_params():
    assert set(SMALL_PARAMS) == set(BUILTINS)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("name", sorted(SMALL_PARAMS))
def test_criterion_a_implies_b(name, p):
    G, verdict = _classified(name, p)
    if G.order % p == 0 and "A" in verdict.criteria:
        assert "B" in verdict.criteria
        if verdict.criteria["A"]:
            assert verdict.criteria["B"]


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("name", sorted(SMALL_PARAMS))
def test_omega1_radical_has_the_same_branch(name, p):
    G, verdict = _classified(name, p)
    radical = omega1_radical(G, p)
    if radical.order == G.order:
        pytest.skip("G is its own Omega_1 radical")
    assert classify(radical.group, p).branch == verdict.branch


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("name", sorted(SMALL_PARAMS))
def test_builtin_verdicts_reverify(name, p):
    G, verdict = _classified(name, p)
    assert verdict.branch != "unknown"
    assert reverify(_round_trip(verdict), G, p)


def test_reduction_is_monotone():
    S4 = symmetric(4)
    full = classify(S4, 3)
    A4 = PermGroup(4, [[1, 2, 0, 3], [0, 2, 3, 1]])
    reduced = classify(A4, 3)
    assert full.reduction[-1]["order"] == 12
    assert full.branch == reduced.branch == "torsion_free"
    assert full.criterion == reduced.criterion

    klein = PermGroup(4, [[1, 0, 3, 2], [2, 3, 0, 1]])
    assert classify(alternating(4), 2).branch == classify(klein, 2).branch


def test_classification_is_deterministic():
    first = classify(thevenaz(), 2, ClassifyOptions(seed=7)).to_dict()
    second = classify(thevenaz(), 2, ClassifyOptions(seed=7)).to_dict()
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)


def test_resource_limits_give_uncertified_unknown():
    verdict = classify(symmetric(8), 2, ClassifyOptions(enum_limit=100))
    assert verdict.branch == "unknown"
    assert not verdict.certified
    assert verdict.cellularity_of_completion is None
    assert any("resource limit" in d for d in verdict.diagnostics)

    sampled = classify(symmetric(4), 3, ClassifyOptions(enum_limit=10))
    assert sampled.branch == "unknown"
    assert not sampled.certified


def test_prime_is_checked():
    with pytest.raises(NotPrime):
        classify(symmetric(3), 4)
