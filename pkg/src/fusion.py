"""
Element fusion inside a fixed Sylow subgroup.

A fusion partition maps every element s of S to (leader, g) where leader is
the first element of S met in the G-class of s and g·s·g⁻¹ = leader.
"""
import logging
from collections import deque, namedtuple

from errors import NotSylow, OrderExceedsLimit
from local_structure import is_p_group, omega1, p_part, sylow_subgroup
from perm_core import (
    PermGroup,
    SubgroupHandle,
    _compose,
    _conjugate,
    _element_tuples,
    _invert,
    as_perm,
    as_tuple,
    identity_tuple,
    normalizer,
)
from settings import DEFAULT_ENUM_LIMIT

logger = logging.getLogger(__name__)

# controlled: bool; counterexample: (s, t) fused in G but not in N, or None
FusionControl = namedtuple("FusionControl", ["controlled", "counterexample", "normalizer"])


class FusionReport:
    """
    Fusion of Omega_1(S) inside S

    ...

    Attributes
    ----------
    p : int
    sylow : SubgroupHandle
    omega1_S : SubgroupHandle
    fused_generators : list of Permutation
        elements of S that are G-conjugate into Omega_1(S); their span is the
        closure
    witnesses : list of (s, g, t) tuples
        one per fused generator, g·s·g⁻¹ = t with t in Omega_1(S)
    closure : SubgroupHandle
    closure_generates : bool
        closure == S
    partition : dict
        the G-fusion partition of S (see module docstring)
    fusion_controlled_by_normalizer, ti_sylow : bool or None
        filled in by callers that evaluate them
    """

    def __init__(self, p, sylow, omega1_S, fused_generators, witnesses, closure, partition):
        self.p = p
        self.sylow = sylow
        self.omega1_S = omega1_S
        self.fused_generators = fused_generators
        self.witnesses = witnesses
        self.closure = closure
        self.closure_generates = closure.order == sylow.order
        self.partition = partition
        self.fusion_controlled_by_normalizer = None
        self.ti_sylow = None


def _class_with_conjugators(generators, x, limit):
    """G-class of x as a dict y -> c with c·x·c⁻¹ = y."""
    conjugators = {x: identity_tuple(len(x))}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        c = conjugators[y]
        for s in generators:
            z = _conjugate(s, y)
            if z not in conjugators:
                conjugators[z] = _compose(s, c)
                if len(conjugators) > limit:
                    raise OrderExceedsLimit(len(conjugators), limit)
                queue.append(z)
    return conjugators


def fusion_partition(G, elements, limit=DEFAULT_ENUM_LIMIT):
    """
    Partition the given elements (array-form tuples, in priority order) by
    G-conjugacy. Earlier elements become class leaders.
    """
    generators = [as_tuple(g) for g in G.generators]
    wanted = set(elements)
    partition = {}
    for s in elements:
        if s in partition:
            continue
        for y, c in _class_with_conjugators(generators, s, limit).items():
            if y in wanted and y not in partition:
                partition[y] = (s, _invert(c))
    return partition


def _blocks(partition):
    blocks = {}
    for s, (leader, _) in partition.items():
        blocks.setdefault(leader, set()).add(s)
    return {frozenset(block) for block in blocks.values()}


def _check_sylow(G, S, p):
    if not is_p_group(S, p) or S.order != p_part(G.order, p):
        raise NotSylow(f"subgroup of order {S.order} is not a Sylow {p}-subgroup of a group of order {G.order}")


def fusion_closure(G, S, p, limit=DEFAULT_ENUM_LIMIT):
    """
    Subgroup of S generated by the elements that are G-conjugate into
    Omega_1(S), with a conjugator recorded for each generator used.
    """
    _check_sylow(G, S, p)
    omega = omega1(S, p, limit)
    inner = list(_element_tuples(omega.group, limit))
    inner_set = set(inner)
    outer = [s for s in _element_tuples(S.group, limit) if s not in inner_set]
    logger.info("fusion scan of %d elements against |Omega_1(S)| = %d", S.order, omega.order)
    partition = fusion_partition(G, inner + outer, limit)

    fused_generators = list(omega.generators)
    witnesses = [(g, as_perm(identity_tuple(G.degree)), g) for g in fused_generators]
    closure = PermGroup(G.degree, fused_generators)
    for s in outer:
        if closure.order == S.order:
            break
        leader, g = partition[s]
        if leader not in inner_set or closure.contains(as_perm(s)):
            continue
        fused_generators.append(as_perm(s))
        witnesses.append((as_perm(s), as_perm(g), as_perm(leader)))
        closure = PermGroup(G.degree, fused_generators)

    handle = SubgroupHandle(S.parent, closure)
    return FusionReport(p, S, omega, fused_generators, witnesses, handle, partition)


def fusion_controlled_by_normalizer(G, S, limit=DEFAULT_ENUM_LIMIT, partition=None, N=None):
    """
    Whether every G-conjugacy between elements of S is realised in N_G(S).

    Returns FusionControl; counterexample is a pair (s, t) of S-elements
    conjugate in G but not in N_G(S).
    """
    if N is None:
        N = normalizer(G, S, limit)
    elements = list(_element_tuples(S.group, limit))
    if partition is None:
        partition = fusion_partition(G, elements, limit)
    local = fusion_partition(N.group, elements, limit)
    if _blocks(partition) == _blocks(local):
        return FusionControl(True, None, N)
    for s in elements:
        leader, _ = partition[s]
        if local[s][0] != local[leader][0]:
            return FusionControl(False, (as_perm(s), as_perm(leader)), N)
    return FusionControl(False, None, N)


def _conjugate_sets(G, S, limit):
    generators = [as_tuple(g) for g in G.generators]
    start = frozenset(_element_tuples(S.group, limit))
    conjugators = {start: identity_tuple(G.degree)}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        c = conjugators[current]
        for s in generators:
            image = frozenset(_conjugate(s, x) for x in current)
            if image not in conjugators:
                conjugators[image] = _compose(s, c)
                queue.append(image)
    return conjugators


def sylow_conjugates(G, S, limit=DEFAULT_ENUM_LIMIT):
    """All distinct conjugates g·S·g⁻¹, S first; there are |G : N_G(S)| of them."""
    handles = []
    for c in _conjugate_sets(G, S, limit).values():
        generators = [as_perm(_conjugate(c, as_tuple(h))) for h in S.generators]
        handles.append(SubgroupHandle(G, PermGroup(G.degree, generators)))
    return handles


def ti_sylow(G, p, S=None, limit=DEFAULT_ENUM_LIMIT):
    """True iff distinct Sylow p-subgroups of G intersect trivially."""
    if S is None:
        S = sylow_subgroup(G, p, limit)
    sets = list(_conjugate_sets(G, S, limit))
    identity = identity_tuple(G.degree)
    first = sets[0]
    logger.info("%d Sylow %d-subgroups", len(sets), p)
    return all(first & other == {identity} for other in sets[1:])


def normalizer_permutes_center(G, S, N=None, limit=DEFAULT_ENUM_LIMIT):
    """
    N_G(S) acts transitively by conjugation on the nontrivial elements of
    Z(S).
    """
    if N is None:
        N = normalizer(G, S, limit)
    generators = [as_tuple(h) for h in S.generators]
    identity = identity_tuple(G.degree)
    center = {
        x for x in _element_tuples(S.group, limit)
        if x != identity and all(_compose(x, h) == _compose(h, x) for h in generators)
    }
    if not center:
        return False
    start = next(iter(sorted(center)))
    orbit = _class_with_conjugators([as_tuple(g) for g in N.generators], start, limit)
    return set(orbit) == center


def fusion_equivalent(G, H, p, limit=DEFAULT_ENUM_LIMIT):
    """
    H contains a Sylow p-subgroup S of G and H-fusion on S equals G-fusion.
    """
    group = H.group if isinstance(H, SubgroupHandle) else H
    S = sylow_subgroup(group, p, limit)
    if S.order != p_part(G.order, p):
        return False
    elements = list(_element_tuples(S.group, limit))
    return _blocks(fusion_partition(G, elements, limit)) == _blocks(fusion_partition(group, elements, limit))
