"""
Builtin group families, each delivered as a PermGroup tagged with
family = (name, params).
"""
import logging
from collections import deque, namedtuple

import sympy

from algebra.fields import field, field_of_order
from algebra.matrix_groups import (
    matrix_group_spec,
    matrix_to_perm,
    special_linear_generators,
    suzuki_matrices,
)
from errors import ActionNotAutomorphism, BadParams, CheckFailed, NotPrime, SizeExceeded
from perm_core import (
    PermGroup,
    SubgroupHandle,
    _compose,
    _element_tuples,
    as_tuple,
    identity_tuple,
)
from settings import MAX_SEMIDIRECT_DEGREE, MAX_SEMIDIRECT_FACTOR, MAX_SUZUKI_Q

logger = logging.getLogger(__name__)

BuiltinInfo = namedtuple("BuiltinInfo", ["name", "params", "description"])


def _cycle(points, degree):
    images = list(range(degree))
    for a, b in zip(points, points[1:] + points[:1]):
        images[a] = b
    return images


def _require(condition, message):
    if not condition:
        raise BadParams(message)


def _is_power_of(n, base):
    while n > 1 and n % base == 0:
        n //= base
    return n == 1


################################################################################
# Small families
################################################################################

def cyclic(n):
    _require(n >= 1, "cyclic(n) needs n >= 1")
    return PermGroup(n, [_cycle(list(range(n)), n)] if n > 1 else [],
                     family=("cyclic", (n,)))


def elem_abelian(p, n):
    """(Z/p)^n as n disjoint p-cycles on p·n points."""
    _require(n >= 1, "elem_abelian(p, n) needs n >= 1")
    if not sympy.isprime(p):
        raise BadParams(f"elem_abelian needs a prime, got {p}")
    degree = p * n
    generators = [_cycle(list(range(p * i, p * (i + 1))), degree) for i in range(n)]
    return PermGroup(degree, generators, family=("elem_abelian", (p, n)))


def dihedral(n):
    """Dihedral group of order 2n; n = 2 is the Klein group on 4 points."""
    _require(n >= 2, "dihedral(n) needs n >= 2")
    if n == 2:
        return PermGroup(4, [[1, 0, 3, 2], [2, 3, 0, 1]], family=("dihedral", (2,)))
    rotation = [(x + 1) % n for x in range(n)]
    reflection = [(-x) % n for x in range(n)]
    return PermGroup(n, [rotation, reflection], family=("dihedral", (n,)))


def semidihedral(order):
    """
    Semidihedral group of order 2^k (k >= 4) as affine maps of Z/M, M = 2^(k-1):
    x -> x+1 and x -> (M/2 - 1)·x.
    """
    _require(order >= 16 and _is_power_of(order, 2), "semidihedral(order) needs a power of 2, at least 16")
    modulus = order // 2
    rotation = [(x + 1) % modulus for x in range(modulus)]
    twist = [((modulus // 2 - 1) * x) % modulus for x in range(modulus)]
    return PermGroup(modulus, [rotation, twist], family=("semidihedral", (order,)))


def symmetric(n):
    _require(n >= 1, "symmetric(n) needs n >= 1")
    generators = []
    if n >= 2:
        generators = [_cycle([0, 1], n), _cycle(list(range(n)), n)]
    return PermGroup(n, generators, family=("symmetric", (n,)))


def alternating(n):
    _require(n >= 1, "alternating(n) needs n >= 1")
    generators = [_cycle([0, 1, i], n) for i in range(2, n)]
    return PermGroup(n, generators, family=("alternating", (n,)))


def _wreath_generators(start, p, depth, degree):
    # iterated wreath product of Z/p acting on the block [start, start + p^depth)
    generators = []
    for level in range(depth):
        step = p ** level
        span = p ** (level + 1)
        images = list(range(degree))
        for x in range(span):
            images[start + x] = start + (x + step) % span
        generators.append(images)
    return generators


def symmetric_sylow(n, p):
    """
    Generators of a Sylow p-subgroup of Σ_n on n points: one iterated wreath
    product of Z/p per base-p digit of n, on consecutive blocks.
    """
    generators = []
    start = 0
    depth = 0
    remaining = n
    blocks = []
    while remaining:
        blocks.append((depth, remaining % p))
        remaining //= p
        depth += 1
    for depth, count in reversed(blocks):
        for _ in range(count):
            generators += _wreath_generators(start, p, depth, n)
            start += p ** depth
    return generators


def sylow2_symmetric(k):
    """The Sylow 2-subgroup of Σ_{2^k} as a group in its own right."""
    _require(k >= 1, "sylow2_symmetric(k) needs k >= 1")
    degree = 2 ** k
    return PermGroup(degree, symmetric_sylow(degree, 2), family=("sylow2_symmetric", (k,)))


def thevenaz():
    """
    (Z/4 × Z/4) ⋊ Σ₃ on 12 points: three blocks of Z/4, the translations
    (a, b, c) with a + b + c = 0, and Σ₃ permuting the blocks.
    """
    def translation(shift):
        images = []
        for block, a in enumerate(shift):
            images += [4 * block + (r + a) % 4 for r in range(4)]
        return images

    def block_swap(i, j):
        images = list(range(12))
        for r in range(4):
            images[4 * i + r], images[4 * j + r] = 4 * j + r, 4 * i + r
        return images

    generators = [translation((1, 3, 0)), translation((0, 1, 3)), block_swap(0, 1), block_swap(1, 2)]
    return PermGroup(12, generators, family=("thevenaz", ()))


################################################################################
# Matrix families
################################################################################

def psl2(q):
    """PSL₂(q) on the q+1 points of the projective line."""
    _require(q >= 2, "psl2(q) needs q >= 2")
    try:
        f = field_of_order(q)
    except NotPrime as error:
        raise BadParams(str(error)) from error
    spec = matrix_group_spec(f, special_linear_generators(f, 2))
    return matrix_to_perm(spec, "projective", family=("psl2", (q,))).group


def projective_special_linear(n, q, family=None):
    """PSL_n(q) on the (q^n - 1)/(q - 1) projective points."""
    _require(n >= 2, "projective_special_linear(n, q) needs n >= 2")
    try:
        f = field_of_order(q)
    except NotPrime as error:
        raise BadParams(str(error)) from error
    spec = matrix_group_spec(f, special_linear_generators(f, n))
    return matrix_to_perm(spec, "projective", family=family or ("psl", (n, q))).group


def psl3_3():
    return projective_special_linear(3, 3, family=("psl3_3", ()))


def suzuki(q):
    """Sz(q), q = 2^(2m+1), on its q²+1 ovoid points."""
    _require(q >= 2 and _is_power_of(q, 2), f"suzuki(q) needs q a power of 2, got {q}")
    k = q.bit_length() - 1
    _require(k % 2 == 1, f"suzuki(q) needs an odd power of 2, got {q}")
    if q > MAX_SUZUKI_Q:
        raise SizeExceeded(f"Sz({q}) is beyond the supported q <= {MAX_SUZUKI_Q}")
    f = field(2, k)
    spec = matrix_group_spec(f, suzuki_matrices(f))
    action = matrix_to_perm(spec, "ovoid", faithful=True, family=("suzuki", (q,)))
    if not action.two_transitive:
        raise CheckFailed("two_transitive", f"Sz({q}) on the ovoid")
    return action.group


def suzuki_sylow2(G):
    """
    The unipotent Sylow 2-subgroup fixing the point at infinity (point 0),
    generated by the first 2k generators of a builtin Sz(q).
    """
    if not G.family or G.family[0] != "suzuki":
        raise BadParams("suzuki_sylow2 needs a builtin Suzuki group")
    q = G.family[1][0]
    k = q.bit_length() - 1
    return SubgroupHandle(G, PermGroup(G.degree, G.generators[:2 * k]))


################################################################################
# Semidirect products
################################################################################

def _automorphism_table(H, elements, index, images):
    """
    Extend generator images to a map on all of H, failing unless it is a
    bijective homomorphism. Returns a tuple: element index -> image index.
    """
    generators = [as_tuple(g) for g in H.generators]
    images = [as_tuple(g) for g in images]
    if len(images) != len(generators):
        raise ActionNotAutomorphism("one image per generator of H is required")
    for image in images:
        if image not in index:
            raise ActionNotAutomorphism("an automorphism image lies outside H")

    identity = identity_tuple(H.degree)
    table = {identity: identity}
    queue = deque([identity])
    while queue:
        h = queue.popleft()
        for s, image in zip(generators, images):
            target = _compose(s, h)
            value = _compose(image, table[h])
            if target not in table:
                table[target] = value
                queue.append(target)
            elif table[target] != value:
                raise ActionNotAutomorphism("generator images do not respect the relations of H")
    if len(set(table.values())) != len(elements):
        raise ActionNotAutomorphism("generator images do not define a bijection")
    return tuple(index[table[h]] for h in elements)


def semidirect(H, K, action):
    """
    H ⋊ K realised by its left regular action on |H|·|K| points.

    Params
    ------
    H, K:
        PermGroups of order at most MAX_SEMIDIRECT_FACTOR
    action:
        one list per generator of K, giving the images of H's generators
        under that generator's automorphism
    """
    for name, factor in (("H", H), ("K", K)):
        if factor.order > MAX_SEMIDIRECT_FACTOR:
            raise SizeExceeded(f"{name} has order {factor.order} > {MAX_SEMIDIRECT_FACTOR}")
    if H.order * K.order > MAX_SEMIDIRECT_DEGREE:
        raise SizeExceeded(f"regular action on {H.order * K.order} points is too large")
    if len(action) != len(K.generators):
        raise ActionNotAutomorphism("one automorphism per generator of K is required")

    h_elements = list(_element_tuples(H))
    h_index = {h: i for i, h in enumerate(h_elements)}
    autos = [_automorphism_table(H, h_elements, h_index, images) for images in action]

    # K -> Aut(H) must be a homomorphism: extend along K's Cayley graph
    k_generators = [as_tuple(g) for g in K.generators]
    identity = identity_tuple(K.degree)
    phi = {identity: tuple(range(len(h_elements)))}
    queue = deque([identity])
    while queue:
        k = queue.popleft()
        for x, auto in zip(k_generators, autos):
            target = _compose(x, k)
            value = tuple(auto[i] for i in phi[k])
            if target not in phi:
                phi[target] = value
                queue.append(target)
            elif phi[target] != value:
                raise ActionNotAutomorphism("the automorphisms do not respect the relations of K")
    k_elements = list(phi)
    k_index = {k: i for i, k in enumerate(k_elements)}

    width = len(k_elements)
    generators = []
    for s in H.generators:
        s = as_tuple(s)
        generators.append([
            h_index[_compose(s, h)] * width + j
            for h in h_elements for j in range(width)
        ])
    for x, auto in zip(k_generators, autos):
        generators.append([
            auto[i] * width + k_index[_compose(x, k)]
            for i in range(len(h_elements)) for k in k_elements
        ])
    degree = len(h_elements) * width
    logger.info("semidirect product of orders %d and %d on %d points", H.order, K.order, degree)
    return PermGroup(degree, generators, family=("semidirect", ()))


################################################################################
# Registry
################################################################################

BUILTINS = {
    "cyclic": (cyclic, ("n",), "cyclic group Z/n"),
    "elem_abelian": (elem_abelian, ("p", "n"), "elementary abelian group (Z/p)^n"),
    "dihedral": (dihedral, ("n",), "dihedral group of order 2n"),
    "semidihedral": (semidihedral, ("order",), "semidihedral group of order 2^k, k >= 4"),
    "symmetric": (symmetric, ("n",), "symmetric group on n points"),
    "alternating": (alternating, ("n",), "alternating group on n points"),
    "sylow2_symmetric": (sylow2_symmetric, ("k",), "Sylow 2-subgroup of the symmetric group on 2^k points"),
    "thevenaz": (thevenaz, (), "(Z/4 x Z/4) semidirect Sigma_3, order 96"),
    "psl2": (psl2, ("q",), "PSL_2(q) on the projective line"),
    "psl3_3": (psl3_3, (), "PSL_3(3) on 13 projective points"),
    "suzuki": (suzuki, ("q",), "Suzuki group Sz(q), q = 2^(2m+1), on the ovoid"),
}


def list_builtins():
    return [BuiltinInfo(name, params, description)
            for name, (_, params, description) in BUILTINS.items()]


def builtin(name, params=()):
    """
    Build the named family member. "semidirect" takes (H, K, action) as in
    semidirect().

    Raises BadParams for an unknown name, the wrong number of parameters or
    parameters the family rejects.
    """
    if name == "semidirect":
        if len(params) != 3:
            raise BadParams(f"semidirect takes 3 parameters (H, K, action), got {len(params)}")
        return semidirect(*params)
    if name not in BUILTINS:
        raise BadParams(f"unknown builtin {name!r}")
    constructor, names, _ = BUILTINS[name]
    if len(params) != len(names):
        raise BadParams(f"{name} takes {len(names)} parameter(s) ({', '.join(names) or 'none'}), got {len(params)}")
    return constructor(*params)
