"""
Sylow subgroups, Omega_1 subgroups and the p-residual.
"""
import logging
from collections import namedtuple

import sympy

from algebra.builtins import suzuki_sylow2, symmetric_sylow
from errors import NotPrime, OrderExceedsLimit
from perm_core import (
    PermGroup,
    SubgroupHandle,
    _conjugate,
    _element_tuples,
    _order,
    _power,
    as_perm,
    as_tuple,
    normal_closure,
    random_elements,
    trivial_subgroup,
    whole_group,
)
from settings import DEFAULT_ENUM_LIMIT, DEFAULT_SEED, SAMPLE_BUDGET

logger = logging.getLogger(__name__)

LocalData = namedtuple("LocalData", [
    "p", "sylow", "omega1_S", "omega1_G", "p_residual",
    "is_p_group", "S_generated_by_order_p", "G_generated_by_order_p",
])

# seeds: order-p elements whose normal closure is the radical;
# certified: False when the seeds came from random sampling and the closure
# is a proper subgroup
RadicalSeeds = namedtuple("RadicalSeeds", ["seeds", "closure", "certified"])


def _check_prime(p):
    if not sympy.isprime(p):
        raise NotPrime(f"{p} is not prime")


def _group(H):
    return H.group if isinstance(H, SubgroupHandle) else H


def p_part(n, p):
    """Largest power of p dividing n."""
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


def is_p_group(G, p):
    order = _group(G).order
    return p_part(order, p) == order


def _greedy_generators(degree, members, target=None):
    """
    Greedy generating set for the subgroup generated by members.

    Stops early once target (when known) is reached.
    """
    generators = []
    current = PermGroup(degree, [])
    for m in members:
        if target is not None and current.order == target:
            break
        perm = as_perm(m)
        if perm.is_Identity or current.contains(perm):
            continue
        generators.append(perm)
        current = PermGroup(degree, generators)
    return generators, current


def _generated_by(parent, members, target=None):
    _, current = _greedy_generators(parent.degree, members, target)
    if current.order == parent.order:
        return whole_group(parent)
    return SubgroupHandle(parent, current)


################################################################################
# Sylow subgroups
################################################################################

def _direct_sylow(G, p):
    if not G.family:
        return None
    name, params = G.family
    if name == "symmetric" or (name == "alternating" and p != 2):
        generators = symmetric_sylow(params[0], p)
        return SubgroupHandle(G, PermGroup(G.degree, generators))
    if name == "suzuki" and p == 2:
        return suzuki_sylow2(G)
    return None


def _ascend(G, p, target, limit):
    """
    Grow a p-subgroup one factor p at a time: find y normalising H with
    y outside H and y^p inside, then replace H by <H, y>.
    """
    if G.order > limit:
        raise OrderExceedsLimit(G.order, limit)
    generators = []
    current = PermGroup(G.degree, [])
    while current.order < target:
        members = [as_tuple(h) for h in current.generators]
        found = None
        for x in _element_tuples(G, limit):
            order = _order(x)
            if order % p:
                continue
            y = _power(x, order // p_part(order, p))
            if current.contains(as_perm(y)):
                continue
            if not all(current.contains(as_perm(_conjugate(y, h))) for h in members):
                continue
            while not current.contains(as_perm(_power(y, p))):
                y = _power(y, p)
            found = y
            break
        generators.append(as_perm(found))
        current = PermGroup(G.degree, generators)
        logger.debug("Sylow ascent reached order %d of %d", current.order, target)
    return SubgroupHandle(G, current)


def sylow_subgroup(G, p, limit=DEFAULT_ENUM_LIMIT):
    """
    A Sylow p-subgroup of G.

    Direct constructions are used for symmetric groups (any p), alternating
    groups (odd p), Suzuki groups (p = 2) and p-groups; everything else goes
    through the exact-tier ascent.
    """
    _check_prime(p)
    target = p_part(G.order, p)
    if target == 1:
        return trivial_subgroup(G)
    if target == G.order:
        return whole_group(G)
    direct = _direct_sylow(G, p)
    if direct is not None and direct.order == target:
        return direct
    logger.info("searching for a Sylow %d-subgroup of order %d", p, target)
    return _ascend(G, p, target, limit)


################################################################################
# Omega_1 and friends
################################################################################

def omega1(H, p, limit=DEFAULT_ENUM_LIMIT):
    """Subgroup of H generated by its elements of order p."""
    _check_prime(p)
    handle = H if isinstance(H, SubgroupHandle) else whole_group(H)
    group = handle.group
    members = (x for x in _element_tuples(group, limit) if _order(x) == p)
    inner = _generated_by(group, members)
    if inner.group is group:
        return handle
    return SubgroupHandle(handle.parent, inner.group)


def order_p_seeds(G, p, limit=DEFAULT_ENUM_LIMIT, seed=DEFAULT_SEED, budget=SAMPLE_BUDGET):
    """
    Order-p elements of G whose normal closure is Omega_1(G)_p.

    Exact tier: a greedy pass over the element stream (the generated
    subgroup is normal since the set of order-p elements is). Beyond it:
    order-p powers of product-replacement samples, certified only when their
    normal closure is all of G.
    """
    _check_prime(p)
    if G.order % p:
        return RadicalSeeds([], trivial_subgroup(G), True)
    if G.order <= limit:
        logger.info("collecting order-%d elements of a group of order %d", p, G.order)
        members = (x for x in _element_tuples(G, limit) if _order(x) == p)
        seeds, current = _greedy_generators(G.degree, members, target=G.order)
        closure = whole_group(G) if current.order == G.order else SubgroupHandle(G, current)
        return RadicalSeeds(seeds, closure, True)

    logger.info("group of order %d is past the exact tier, sampling %d elements", G.order, budget)
    seeds = []
    for g in random_elements(G, budget, seed):
        x = as_tuple(g)
        order = _order(x)
        if order % p == 0:
            seeds.append(as_perm(_power(x, order // p)))
    seeds = list({as_tuple(s): s for s in seeds}.values())
    closure = normal_closure(G, seeds)
    return RadicalSeeds(seeds, closure, closure.order == G.order)


def omega1_radical(G, p, limit=DEFAULT_ENUM_LIMIT, seed=DEFAULT_SEED, budget=SAMPLE_BUDGET):
    """
    Omega_1(G)_p, the normal subgroup generated by all elements of order p.

    The handle is flagged certified=False when it came from sampling.
    """
    result = order_p_seeds(G, p, limit, seed, budget)
    closure = result.closure
    closure.certified = result.certified
    return closure


def p_residual(G, p, limit=DEFAULT_ENUM_LIMIT):
    """O^p(G): the subgroup generated by the elements of order prime to p."""
    _check_prime(p)
    members = (x for x in _element_tuples(G, limit) if _order(x) % p)
    return _generated_by(G, members, target=G.order)


def generated_by_order_p(H, p, limit=DEFAULT_ENUM_LIMIT):
    return omega1(H, p, limit).order == _group(H).order


def local_data(G, p, limit=DEFAULT_ENUM_LIMIT, seed=DEFAULT_SEED, budget=SAMPLE_BUDGET):
    """Assemble the Sylow / Omega_1 / residual picture of G at p."""
    sylow = sylow_subgroup(G, p, limit)
    omega1_S = omega1(sylow, p, limit)
    omega1_G = omega1_radical(G, p, limit, seed, budget)
    return LocalData(
        p=p,
        sylow=sylow,
        omega1_S=omega1_S,
        omega1_G=omega1_G,
        p_residual=p_residual(G, p, limit),
        is_p_group=is_p_group(G, p),
        S_generated_by_order_p=omega1_S.order == sylow.order,
        G_generated_by_order_p=omega1_G.order == G.order,
    )
