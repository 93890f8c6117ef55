"""
Torsion witnesses: representations of N_G(S) that are nontrivial on S,
trivial on every element of order p and constant on G-fusion classes.
"""
import cmath
import logging

import numpy as np
import sympy

from algebra.builtins import psl2, suzuki, suzuki_sylow2
from algebra.fields import field_of_order
from errors import BadParams, CheckFailed, FusionNotControlled, IndexExceedsLimit, NotFound, NotPrime
from fusion import fusion_closure, fusion_controlled_by_normalizer, fusion_partition
from local_structure import omega1, order_p_seeds, sylow_subgroup
from perm_core import (
    _compose,
    _conjugate,
    _element_tuples,
    _invert,
    _order,
    as_perm,
    as_tuple,
    coset_action,
    identity_tuple,
    normal_closure,
    normalizer,
)
from settings import DEFAULT_ENUM_LIMIT, DEFAULT_TOLERANCE, MAX_INDUCED_INDEX
from unitary_reps import (
    UnitaryRep,
    is_identity,
    is_unitary,
    permutation_rep,
    suzuki_sigma,
    verify_homomorphism,
)

logger = logging.getLogger(__name__)

# Order in which checks are run and reported
CHECK_NAMES = (
    "unitary",
    "homomorphism_verified",
    "nontrivial_on_S",
    "trivial_on_order_p",
    "fusion_invariant_character",
)


class WitnessCertificate:
    """
    Everything needed to re-derive a Torsion verdict

    ...

    Attributes
    ----------
    p : int
    group : PermGroup
        G, the group the witness is for
    sylow : SubgroupHandle
    omega1_S : SubgroupHandle
    normalizer : SubgroupHandle
        N = N_G(S), the source of rep
    rep : UnitaryRep
    fusion : list of (s, g, leader)
        one triple per element of S, g·s·g⁻¹ = leader, leaders pairwise
        non-conjugate in G
    checks : dict
        the five booleans, keyed as in CHECK_NAMES
    provenance : str
        "suzuki", "psl2" or "generic_quotient"
    facts : dict
        provenance-specific extras (omega1_index, extends_to_group, ...)
    """

    def __init__(self, p, group, sylow, omega1_S, normalizer, rep, fusion, provenance, facts=None):
        self.p = p
        self.group = group
        self.sylow = sylow
        self.omega1_S = omega1_S
        self.normalizer = normalizer
        self.rep = rep
        self.fusion = fusion
        self.provenance = provenance
        self.facts = dict(facts or {})
        self.facts.setdefault("omega1_index", sylow.order // omega1_S.order)
        self.checks = {}


    @property
    def passed(self):
        return bool(self.checks) and all(self.checks[name] for name in CHECK_NAMES)


    def run_checks(self):
        self.checks = witness_checks(self.sylow, self.rep, self.fusion, self.p, self.rep.tolerance)
        return self.checks


    def require(self):
        """Raise CheckFailed naming the first failing check."""
        for name in CHECK_NAMES:
            if not self.checks.get(name):
                raise CheckFailed(name, f"{self.provenance} witness")
        return self


    def to_dict(self):
        return {
            "p": self.p,
            "provenance": self.provenance,
            "dimension": self.rep.dimension,
            "sylow_generators": [list(as_tuple(g)) for g in self.sylow.generators],
            "omega1_generators": [list(as_tuple(g)) for g in self.omega1_S.generators],
            "normalizer_generators": [list(as_tuple(g)) for g in self.normalizer.generators],
            "generator_images": [_encode_matrix(m) for m in self.rep.generator_images],
            "fusion": [[list(as_tuple(x)) for x in triple] for triple in self.fusion],
            "checks": {name: bool(self.checks.get(name)) for name in CHECK_NAMES},
            "facts": self.facts,
        }


def _encode_matrix(matrix):
    # [[re, im], ...] rows; rounding keeps serialisation stable, +0.0 folds -0.0
    return [[[round(float(z.real), 12) + 0.0, round(float(z.imag), 12) + 0.0] for z in row] for row in matrix]


def decode_matrix(rows):
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def witness_checks(sylow, rep, fusion, p, tolerance=DEFAULT_TOLERANCE):
    """
    Run the five witness checks; pure in its arguments.

    Params
    ------
    sylow:
        SubgroupHandle S, contained in rep's source
    rep:
        UnitaryRep on N_G(S)
    fusion:
        (s, g, leader) triples covering S
    """
    checks = {}
    checks["unitary"] = all(is_unitary(m, tolerance) for m in rep.generator_images)
    homomorphism = verify_homomorphism(rep)
    checks["homomorphism_verified"] = homomorphism.passed and homomorphism.exhaustive
    checks["nontrivial_on_S"] = any(not is_identity(rep.evaluate(s), tolerance) for s in sylow.generators)
    checks["trivial_on_order_p"] = all(
        is_identity(rep.evaluate(x), tolerance)
        for x in _element_tuples(sylow.group) if _order(x) == p
    )
    invariant = True
    for s, g, leader in fusion:
        s, g, leader = as_tuple(s), as_tuple(g), as_tuple(leader)
        if _conjugate(g, s) != leader or abs(rep.trace(s) - rep.trace(leader)) > tolerance:
            invariant = False
            break
    checks["fusion_invariant_character"] = invariant
    logger.info("witness checks: %s", ", ".join(f"{k}={v}" for k, v in checks.items()))
    return checks


def _fusion_triples(G, S, limit, partition=None):
    if partition is None:
        partition = fusion_partition(G, list(_element_tuples(S.group, limit)), limit)
    return [(as_perm(s), as_perm(g), as_perm(leader)) for s, (leader, g) in sorted(partition.items())]


################################################################################
# Suzuki family
################################################################################

def _suzuki_projection(G):
    """
    x-coordinate action of N_G(S) on the points (1, x, 0, ·): a map from the
    Borel subgroup onto AGL(1, q), killing Z(S).
    """
    q = G.family[1][0]
    labels = G.labels
    lookup = {}
    for index, point in enumerate(labels):
        if point[0] == 1 and point[2] == 0:
            lookup[point[1]] = index

    def project(g):
        g = as_tuple(g)
        return tuple(labels[g[lookup[x]]][1] for x in range(q))

    return project


def suzuki_witness(q, G=None, limit=DEFAULT_ENUM_LIMIT, tolerance=DEFAULT_TOLERANCE, partition=None):
    """
    Witness for Sz(q) at p = 2: rho = sigma ∘ (N_G(S) -> N_G(S)/Z(S)).

    Raises BadParams for q not an odd power of 2 with q >= 8, CheckFailed
    when a structural fact or one of the five checks fails.
    """
    n = q.bit_length() - 1
    if q < 8 or q != 2 ** n or n % 2 == 0:
        raise BadParams(f"suzuki_witness needs q = 2^n with n odd and n >= 3, got {q}")
    if G is None:
        G = suzuki(q)
    elif not G.family or G.family[0] != "suzuki" or G.family[1][0] != q:
        raise BadParams("suzuki_witness needs the builtin Suzuki group")

    S = suzuki_sylow2(G)
    omega = omega1(S, 2, limit)
    center = {
        x for x in _element_tuples(S.group, limit)
        if all(_compose(x, h) == _compose(h, x) for h in map(as_tuple, S.generators))
    }
    if set(_element_tuples(omega.group, limit)) != center or omega.order != q:
        raise CheckFailed("omega1_is_center", "Omega_1(S) should be the centre of S, of order q")

    N = normalizer(G, S, limit)
    if N.order != q * q * (q - 1):
        raise CheckFailed("normalizer_order", f"|N_G(S)| = {N.order}, expected {q * q * (q - 1)}")

    sigma = suzuki_sigma(n, tolerance)
    agl = sigma.group
    project = _suzuki_projection(G)
    images = []
    for g in N.generators:
        image = project(g)
        if not agl.contains(as_perm(image)):
            raise CheckFailed("projection", "normaliser element does not act affinely")
        images.append(sigma.evaluate(image))
    rep = UnitaryRep(N, images, tolerance)

    generated = order_p_seeds(G, 2, limit).closure.order == G.order
    facts = {
        "sigma_dimension": sigma.dimension,
        "normalizer_order": N.order,
        "group_generated_by_order_p": generated,
        "extends_to_group": False if generated else None,
    }
    certificate = WitnessCertificate(2, G, S, omega, N, rep, _fusion_triples(G, S, limit, partition), "suzuki", facts)
    certificate.run_checks()
    return certificate.require()


################################################################################
# PSL2 family
################################################################################

def psl2_witness(p, n, m, G=None, limit=DEFAULT_ENUM_LIMIT, tolerance=DEFAULT_TOLERANCE,
                 partition=None):
    """
    Witness for PSL2(q), q = m·p^n + 1, at an odd prime p with n >= 2.

    N_G(S) is dihedral with cyclic part C of order (q - 1)/gcd(2, q - 1), so
    of order q - 1 for odd q and 2(q - 1) for even q; rho sends a
    generator c of C to diag(x, x̄), x = e^(2πi/p), and every reflection to
    the swap matrix, so rho factors through Z/p ⋊ Z/2 and kills the order-p
    subgroup of S.
    """
    if p == 2 or not sympy.isprime(p):
        raise BadParams(f"psl2_witness needs an odd prime, got {p}")
    if n < 2:
        raise BadParams("psl2_witness needs n >= 2; for n = 1 the order-p elements generate S")
    if m < 1 or m % p == 0:
        raise BadParams(f"m must be positive and prime to p, got {m}")
    q = m * p ** n + 1
    try:
        field_of_order(q)
    except NotPrime as error:
        raise BadParams(f"q = {q} is not a prime power") from error
    if G is None:
        G = psl2(q)

    S = sylow_subgroup(G, p, limit)
    if S.order != p ** n:
        raise CheckFailed("sylow_order", f"|S| = {S.order}, expected {p ** n}")
    omega = omega1(S, p, limit)
    N = normalizer(G, S, limit)
    expected = q - 1 if q % 2 else 2 * (q - 1)
    if N.order != expected:
        raise CheckFailed("normalizer_order", f"|N_G(S)| = {N.order}, expected {expected}")

    elements = list(_element_tuples(N.group, limit))
    half = N.order // 2
    c = next((x for x in elements if _order(x) == half), None)
    if c is None:
        raise CheckFailed("normalizer_structure", "N_G(S) has no cyclic subgroup of index 2")
    powers = {}
    x = identity_tuple(G.degree)
    for k in range(half):
        powers[x] = k
        x = _compose(c, x)
    c_inverse = _invert(c)
    t = next((y for y in elements if y not in powers and _conjugate(y, c) == c_inverse), None)
    if t is None:
        raise CheckFailed("normalizer_structure", "no reflection inverting the cyclic part")
    t_inverse = _invert(t)

    zeta = cmath.exp(2j * cmath.pi / p)
    swap = np.array([[0, 1], [1, 0]], dtype=complex)

    def evaluate(g):
        g = as_tuple(g)
        if g in powers:
            k = powers[g]
            return np.diag([zeta ** k, zeta ** -k])
        k = powers[_compose(g, t_inverse)]
        return np.diag([zeta ** k, zeta ** -k]) @ swap

    rep = UnitaryRep(N, [evaluate(g) for g in N.generators], tolerance)
    facts = {"q": q, "normalizer_order": N.order, "cyclic_part_order": half}
    certificate = WitnessCertificate(p, G, S, omega, N, rep, _fusion_triples(G, S, limit, partition), "psl2", facts)
    certificate.run_checks()
    return certificate.require()


def psl2_parameters(q, p):
    """(n, m) with q - 1 = m·p^n and p not dividing m, or None when p ∤ q - 1."""
    n, m = 0, q - 1
    while m % p == 0:
        m //= p
        n += 1
    return (n, m) if n else None


################################################################################
# Generic quotient witness
################################################################################

def generic_quotient_witness(G, S, p, limit=DEFAULT_ENUM_LIMIT, tolerance=DEFAULT_TOLERANCE,
                             report=None):
    """
    Regular representation of N/K lifted to N = N_G(S), where K is the normal
    closure in N of the fusion closure of Omega_1(S).

    Raises NotFound when the fusion closure is all of S or S maps trivially
    to N/K, FusionNotControlled when G-fusion on S is not realised in N.
    """
    if report is None:
        report = fusion_closure(G, S, p, limit)
    if report.closure_generates:
        raise NotFound("the fusion closure of Omega_1(S) is all of S")
    control = fusion_controlled_by_normalizer(G, S, limit, partition=report.partition)
    if not control.controlled:
        raise FusionNotControlled("G-fusion on S is not controlled by N_G(S)")

    N = control.normalizer
    K = normal_closure(N.group, report.closure.generators)
    index = N.order // K.order
    if index > MAX_INDUCED_INDEX:
        raise IndexExceedsLimit(index, MAX_INDUCED_INDEX)
    action = coset_action(N.group, K, limit)
    identity = identity_tuple(action.group.degree)
    if all(as_tuple(action.image(s)) == identity for s in S.generators):
        raise NotFound("S maps trivially to the quotient")

    rep = permutation_rep(N, action, tolerance)
    facts = {"quotient_order": index, "normalizer_order": N.order, "kernel_order": K.order}
    certificate = WitnessCertificate(p, G, S, report.omega1_S, N, rep,
                                     _fusion_triples(G, S, limit, report.partition),
                                     "generic_quotient", facts)
    certificate.run_checks()
    return certificate.require()
