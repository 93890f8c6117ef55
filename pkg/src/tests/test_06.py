import cmath

import numpy as np
import pytest

from algebra.builtins import psl2, psl3_3, suzuki, thevenaz
from errors import BadParams, FusionNotControlled, NotFound
from fusion import fusion_partition
from local_structure import sylow_subgroup
from perm_core import PermGroup, SubgroupHandle, _element_tuples, _order, conjugacy_classes, element_order_census
from unitary_reps import UnitaryRep
from witnesses import (
    CHECK_NAMES,
    decode_matrix,
    generic_quotient_witness,
    psl2_parameters,
    psl2_witness,
    suzuki_witness,
    witness_checks,
)

#torsion witnesses for the Suzuki and PSL2 families and the generic quotient

TOL = 1e-9


@pytest.fixture(scope="module")
def sz8():
    return suzuki(8)


def test_suzuki_witness(sz8):
    witness = suzuki_witness(8, sz8, tolerance=TOL)
    assert witness.passed
    assert witness.provenance == "suzuki"
    assert all(witness.checks[name] for name in CHECK_NAMES)
    assert witness.rep.dimension == 7
    assert witness.normalizer.order == 448
    assert witness.sylow.order == 64
    assert witness.facts["omega1_index"] == 8
    assert witness.facts["extends_to_group"] is False
    assert len(witness.fusion) == 64


def test_suzuki_witness_serialises(sz8):
    data = suzuki_witness(8, sz8).to_dict()
    assert data["provenance"] == "suzuki"
    assert data["dimension"] == 7
    assert set(data["checks"]) == set(CHECK_NAMES)
    first = decode_matrix(data["generator_images"][0])
    assert first.shape == (7, 7)
    assert np.allclose(first @ first.conj().T, np.eye(7))


def test_suzuki_witness_parameters():
    with pytest.raises(BadParams):
        suzuki_witness(2)
    with pytest.raises(BadParams):
        suzuki_witness(16)


def test_psl2_witness_at_three():
    G = psl2(19)
    witness = psl2_witness(3, 2, 2, G)
    assert witness.passed
    assert witness.provenance == "psl2"
    S = witness.sylow
    assert S.order == 9
    assert element_order_census(S) == {1: 1, 3: 2, 9: 6}
    assert witness.normalizer.order == 18
    for x in _element_tuples(S.group):
        if _order(x) == 3:
            assert np.abs(witness.rep.evaluate(x) - np.eye(2)).max() <= TOL


def test_psl2_witness_needs_a_square():
    #with |S| = p the order-p elements already generate S
    with pytest.raises(BadParams):
        psl2_witness(3, 1, 2)
    with pytest.raises(BadParams):
        psl2_witness(2, 2, 1)
    with pytest.raises(BadParams):
        psl2_witness(3, 2, 3)


def test_psl2_parameters():
    assert psl2_parameters(19, 3) == (2, 2)
    assert psl2_parameters(19, 5) is None
    assert psl2_parameters(37, 3) == (2, 4)


def test_generic_quotient_witness_on_suzuki(sz8):
    S = sylow_subgroup(sz8, 2)
    witness = generic_quotient_witness(sz8, S, 2, tolerance=TOL)
    assert witness.passed
    assert witness.provenance == "generic_quotient"
    assert witness.facts["quotient_order"] == 56
    assert witness.facts["kernel_order"] == 8


def test_generic_quotient_witness_not_found():
    for G in (thevenaz(), psl3_3()):
        S = sylow_subgroup(G, 2)
        with pytest.raises(NotFound):
            generic_quotient_witness(G, S, 2)


def test_psl2_witness_in_characteristic_two():
    #q = 64: N_G(S) is dihedral of order 2(q - 1)
    witness = psl2_witness(3, 2, 7)
    assert witness.passed
    assert witness.facts["q"] == 64
    assert witness.normalizer.order == 126
    assert witness.facts["cyclic_part_order"] == 63


def test_suzuki_class_sizes(sz8):
    classes = conjugacy_classes(sz8)
    assert classes.complete
    assert len(classes.sizes) == 11
    assert sum(classes.sizes) == 29120


def _wreath_z4_s3():
    #(Z/4)^3 ⋊ Σ₃ on three blocks of four points
    shift = [1, 2, 3, 0] + list(range(4, 12))
    swap01 = [4, 5, 6, 7, 0, 1, 2, 3] + list(range(8, 12))
    swap12 = list(range(4)) + [8, 9, 10, 11, 4, 5, 6, 7]
    return PermGroup(12, [shift, swap01, swap12])


def test_generic_quotient_witness_needs_controlled_fusion():
    G = _wreath_z4_s3()
    assert G.order == 384
    S = sylow_subgroup(G, 2)
    assert S.order == 128
    with pytest.raises(FusionNotControlled):
        generic_quotient_witness(G, S, 2)


def test_fusion_is_read_from_the_group():
    #diag(ζ, ζ) on the cyclic Sylow 3-subgroup of PSL2(19) kills its order-3
    #subgroup, but c and c⁻¹ are fused in G and have different traces
    G = psl2(19)
    c = next(x for x in _element_tuples(sylow_subgroup(G, 3).group) if _order(x) == 9)
    S = SubgroupHandle(G, PermGroup(G.degree, [c]))
    zeta = cmath.exp(2j * cmath.pi / 3)
    rep = UnitaryRep(S.group, [np.diag([zeta, zeta])])
    identity_fusion = [(s, tuple(range(G.degree)), s) for s in _element_tuples(S.group)]
    assert witness_checks(S, rep, identity_fusion, 3)["fusion_invariant_character"]

    partition = fusion_partition(G, sorted(_element_tuples(S.group)))
    fusion = [(s, g, leader) for s, (leader, g) in partition.items()]
    checks = witness_checks(S, rep, fusion, 3)
    assert checks["trivial_on_order_p"]
    assert not checks["fusion_invariant_character"]
