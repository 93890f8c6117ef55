"""
Permutation arithmetic and group queries.

Groups are sympy PermutationGroups underneath (Schreier-Sims for order and
membership). The exact tier walks the element stream as array-form tuples,
which keeps scans over a few 10^4 elements cheap enough for the desk-scale
examples.

Points are 0-based. Products are functional: compose(a, b) applies b first,
conjugate(g, x) is g x g^-1. sympy's own `*` is the opposite order, so it is
never used on elements outside this module.
"""
import logging
import math
from collections import Counter, deque, namedtuple

import sympy.core.random
from sympy.combinatorics import Permutation, PermutationGroup

from errors import (
    DegreeMismatch,
    EmptyDegree,
    IndexExceedsLimit,
    NonMember,
    NotNormal,
    OrderExceedsLimit,
)
from settings import DEFAULT_ENUM_LIMIT, DEFAULT_SEED, SAMPLE_BUDGET

logger = logging.getLogger(__name__)

# Normal subgroups up to this order get canonical coset keys by brute force;
# larger ones go through sympy membership.
COSET_KEY_LIMIT = 4096

# Result of are_conjugate. conjugator is None when conjugate is False.
Conjugacy = namedtuple("Conjugacy", ["conjugate", "conjugator"])


################################################################################
# Element arithmetic on array-form tuples
################################################################################

def as_tuple(g):
    if isinstance(g, Permutation):
        return tuple(g.array_form)
    return tuple(g)


def as_perm(t):
    return Permutation(list(t))


def identity_tuple(degree):
    return tuple(range(degree))


def _compose(a, b):
    return tuple(a[i] for i in b)


def _invert(a):
    inverse = [0] * len(a)
    for i, image in enumerate(a):
        inverse[image] = i
    return tuple(inverse)


def _conjugate(g, x):
    result = [0] * len(x)
    for i, image in enumerate(x):
        result[g[i]] = g[image]
    return tuple(result)


def _power(a, k):
    result = identity_tuple(len(a))
    base = a
    while k:
        if k & 1:
            result = _compose(base, result)
        base = _compose(base, base)
        k >>= 1
    return result


def _cycle_lengths(a):
    seen = [False] * len(a)
    lengths = []
    for start in range(len(a)):
        if seen[start]:
            continue
        length = 0
        point = start
        while not seen[point]:
            seen[point] = True
            point = a[point]
            length += 1
        lengths.append(length)
    return lengths


def _order(a):
    return math.lcm(*_cycle_lengths(a)) if a else 1


def compose(a, b):
    """Functional product a∘b (b acts first) of two permutations of equal degree."""
    if len(as_tuple(a)) != len(as_tuple(b)):
        raise DegreeMismatch(f"cannot compose degree {len(as_tuple(a))} with degree {len(as_tuple(b))}")
    return as_perm(_compose(as_tuple(a), as_tuple(b)))


def conjugate(g, x):
    """g·x·g⁻¹."""
    if len(as_tuple(g)) != len(as_tuple(x)):
        raise DegreeMismatch("conjugating permutations of unequal degree")
    return as_perm(_conjugate(as_tuple(g), as_tuple(x)))


def inverse(g):
    return as_perm(_invert(as_tuple(g)))


def element_order(g):
    """
    Least k >= 1 with g^k the identity, i.e. the lcm of the cycle lengths.
    """
    return _order(as_tuple(g))


def cycle_type(g):
    """Sorted cycle lengths of g, fixed points included."""
    return tuple(sorted(_cycle_lengths(as_tuple(g))))


################################################################################
# Groups
################################################################################

class PermGroup:
    """
    A permutation group with an eagerly built base and strong generating set

    ...

    Attributes
    ----------
    degree : int
        number of points the group acts on (points are 0..degree-1)

    generators : list of Permutation
        the generators exactly as supplied

    order : int
        exact group order from the Schreier-Sims tables

    base, strong_generators, transversal_sizes :
        the BSGS; order is the product of transversal_sizes

    family : tuple or None
        (name, params) when the group came out of a builtin constructor, so
        family-specific Sylow constructions and witnesses can recognise it

    labels : list or None
        optional point labels (projective coordinates for the matrix families)

    Methods
    -------
    contains(g)
        Description: BSGS sifting membership test

    sympy_group
        Description: the underlying sympy PermutationGroup
    """

    def __init__(self, degree, generators, family=None, labels=None):
        if degree < 1:
            raise EmptyDegree("a permutation group needs at least one point")
        generators = [g if isinstance(g, Permutation) else as_perm(g) for g in generators]
        for g in generators:
            if g.size != degree:
                raise DegreeMismatch(f"generator of degree {g.size} in a group of degree {degree}")

        self.__degree = degree
        self.__generators = list(generators)
        if generators:
            self.__group = PermutationGroup(list(generators))
        else:
            self.__group = PermutationGroup([Permutation(degree - 1)])
        self.__group.schreier_sims()
        self.__order = int(self.__group.order())

        self.family = family
        self.labels = labels


    @property
    def degree(self):
        return self.__degree


    @property
    def generators(self):
        return list(self.__generators)


    @property
    def order(self):
        return self.__order


    @property
    def sympy_group(self):
        return self.__group


    @property
    def base(self):
        return list(self.__group.base)


    @property
    def strong_generators(self):
        return list(self.__group.strong_gens)


    @property
    def transversal_sizes(self):
        return [len(orbit) for orbit in self.__group.basic_orbits]


    def contains(self, g):
        if not isinstance(g, Permutation):
            g = as_perm(g)
        if g.size != self.__degree:
            raise DegreeMismatch(f"element of degree {g.size} tested against a group of degree {self.__degree}")
        return self.__group.contains(g)


    def __contains__(self, g):
        return self.contains(g)


    def __repr__(self):
        name = f" {self.family[0]}{tuple(self.family[1])}" if self.family else ""
        return f"<PermGroup{name} degree={self.__degree} order={self.__order}>"


class SubgroupHandle:
    """
    A subgroup together with the group it lives in

    Keeping the parent around is what makes "conjugate in G" questions
    well-posed for Sylow subgroups and their Omega_1.

    Attributes
    ----------
    parent : PermGroup
    group : PermGroup
        same degree as parent, every generator a member of parent
    certified : bool
        False when the subgroup came out of a sampling-mode computation
    """

    def __init__(self, parent, group, certified=True):
        if parent.degree != group.degree:
            raise DegreeMismatch("subgroup and parent act on different point sets")
        if group is not parent:
            for g in group.generators:
                if not parent.contains(g):
                    raise NonMember(f"generator {g.cyclic_form} is not in the parent group")
        self.parent = parent
        self.group = group
        self.certified = certified


    @property
    def order(self):
        return self.group.order


    @property
    def generators(self):
        return self.group.generators


    def contains(self, g):
        return self.group.contains(g)


    def __repr__(self):
        return f"<SubgroupHandle order={self.order} in {self.parent!r}>"


ConjugacyClasses = namedtuple(
    "ConjugacyClasses",
    ["group", "representatives", "sizes", "index", "complete"],
)
ConjugacyClasses.__doc__ = """
Class decomposition of a group.

representatives and sizes are parallel lists; index maps an element's array
form tuple to its class number; complete is False in sampling mode.
"""


def class_of(classes, x):
    """Class number of x, or None when x was never reached (sampling mode)."""
    return classes.index.get(as_tuple(x))


class CosetAction:
    """
    Action of G on the cosets of a normal subgroup N

    Attributes
    ----------
    group : PermGroup
        the permutation image, isomorphic to G/N, one point per coset
    representatives : list of tuple
        coset representatives; point i is the coset representatives[i]·N

    Methods
    -------
    image(g)
        Description: the quotient map, G -> group
    """

    def __init__(self, parent, normal, limit):
        index = parent.order // normal.order
        if index > limit:
            raise IndexExceedsLimit(index, limit)

        self.__parent = parent
        self.__normal = normal
        self.__keys = {}
        self.__normal_elements = None
        if normal.order <= min(limit, COSET_KEY_LIMIT):
            self.__normal_elements = list(_element_tuples(normal.group, limit))

        self.representatives = [identity_tuple(parent.degree)]
        self.__register(self.representatives[0], 0)
        generators = [as_tuple(g) for g in parent.generators]
        position = 0
        while position < len(self.representatives):
            rep = self.representatives[position]
            for s in generators:
                candidate = _compose(s, rep)
                if self.__find(candidate) is None:
                    self.__register(candidate, len(self.representatives))
                    self.representatives.append(candidate)
            position += 1

        images = [self.__action(s) for s in generators]
        self.group = PermGroup(len(self.representatives), images)
        logger.debug("coset action of index %d built", len(self.representatives))


    def __key(self, x):
        return min(_compose(x, n) for n in self.__normal_elements)


    def __register(self, x, i):
        if self.__normal_elements is not None:
            self.__keys[self.__key(x)] = i


    def __find(self, x):
        if self.__normal_elements is not None:
            return self.__keys.get(self.__key(x))
        for i, rep in enumerate(self.representatives):
            if self.__normal.group.contains(as_perm(_compose(_invert(rep), x))):
                return i
        return None


    def __action(self, g):
        return tuple(self.__find(_compose(g, rep)) for rep in self.representatives)


    def image(self, g):
        return as_perm(self.__action(as_tuple(g)))


################################################################################
# Operations
################################################################################

def group_from_generators(degree, gens, family=None, labels=None):
    """
    Build a PermGroup and its BSGS.

    Params
    ------
    degree:
        number of points, at least 1
    gens:
        Permutations (or array forms) of that degree
    """
    return PermGroup(degree, gens, family=family, labels=labels)


def membership(G, g):
    return G.contains(g)


def _element_tuples(G, limit=DEFAULT_ENUM_LIMIT):
    if G.order > limit:
        raise OrderExceedsLimit(G.order, limit)
    if G.order == 1:
        yield identity_tuple(G.degree)
        return
    for af in G.sympy_group.generate_schreier_sims(af=True):
        yield tuple(af)


def elements(G, limit=DEFAULT_ENUM_LIMIT):
    """
    Stream every element of G exactly once, identity first.

    Raises OrderExceedsLimit when |G| > limit; callers then switch to
    random_elements and flag their result.
    """
    for t in _element_tuples(G, limit):
        yield as_perm(t)


def random_elements(G, count=SAMPLE_BUDGET, seed=DEFAULT_SEED):
    """
    Product-replacement random elements with a fixed seed.

    A fresh sympy group is used so the stream depends only on (generators,
    seed) and not on earlier sampling from G.
    """
    if G.order == 1:
        for _ in range(count):
            yield as_perm(identity_tuple(G.degree))
        return
    sympy.core.random.seed(seed)
    fresh = PermutationGroup(G.sympy_group.generators)
    for _ in range(count):
        yield fresh.random_pr()


def subgroup_generated(parent, gens, family=None):
    gens = [g if isinstance(g, Permutation) else as_perm(g) for g in gens]
    for g in gens:
        if not parent.contains(g):
            raise NonMember(f"{g.cyclic_form} is not a member of the parent group")
    return SubgroupHandle(parent, PermGroup(parent.degree, gens, family=family))


def trivial_subgroup(parent):
    return SubgroupHandle(parent, PermGroup(parent.degree, []))


def whole_group(parent):
    return SubgroupHandle(parent, parent)


def is_normal(G, H):
    """True iff the subgroup H (handle or PermGroup) is normal in G."""
    group = H.group if isinstance(H, SubgroupHandle) else H
    # sympy answers True for any subgroup already known to be abelian; a fresh
    # copy carries no cached is_abelian
    fresh = PermutationGroup(group.sympy_group.generators)
    return fresh.is_normal(G.sympy_group)


def is_two_transitive(G):
    """Transitive, with the stabiliser of point 0 transitive on the other points."""
    if G.degree < 2:
        return True
    group = G.sympy_group
    if not group.is_transitive():
        return False
    return len(group.stabilizer(0).orbit(1)) == G.degree - 1


def normal_closure(G, seeds):
    """
    Smallest normal subgroup of G containing the seeds.

    sympy's randomised closure is used; its result is exact (it loops until
    closed under conjugation by G's generators), only the generating set
    depends on the random state.
    """
    seeds = [s if isinstance(s, Permutation) else as_perm(s) for s in seeds]
    for s in seeds:
        if not G.contains(s):
            raise NonMember(f"{s.cyclic_form} is not a member of the group")
    seeds = [s for s in seeds if not s.is_Identity]
    if not seeds:
        return trivial_subgroup(G)
    closure = G.sympy_group.normal_closure(PermutationGroup(seeds))
    if closure.order() == G.order:
        return whole_group(G)
    return SubgroupHandle(G, PermGroup(G.degree, list(closure.generators)))


def _orbit_under_conjugation(generators, x, bound):
    seen = {x}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for s in generators:
            z = _conjugate(s, y)
            if z not in seen:
                seen.add(z)
                queue.append(z)
                if bound is not None and len(seen) > bound:
                    return None
    return seen


def conjugacy_classes(G, limit=DEFAULT_ENUM_LIMIT, sample=False, seed=DEFAULT_SEED,
                      budget=SAMPLE_BUDGET):
    """
    Conjugacy classes of G.

    Exact mode walks the whole element stream and grows each new class as an
    orbit under conjugation by the generators. Sampling mode does the same
    for product-replacement draws only and returns complete=False; a class
    whose orbit outgrows the limit is kept with size None.
    """
    generators = [as_tuple(g) for g in G.generators] or [identity_tuple(G.degree)]
    index = {}
    representatives = []
    sizes = []

    if sample:
        source = (as_tuple(g) for g in random_elements(G, budget, seed))
        bound = limit
    else:
        source = _element_tuples(G, limit)
        bound = None
        logger.info("enumerating conjugacy classes of a group of order %d", G.order)

    for x in source:
        if x in index:
            continue
        orbit = _orbit_under_conjugation(generators, x, bound)
        number = len(representatives)
        representatives.append(as_perm(x))
        if orbit is None:
            index[x] = number
            sizes.append(None)
            continue
        for y in orbit:
            index[y] = number
        sizes.append(len(orbit))

    return ConjugacyClasses(G, representatives, sizes, index, not sample)


def are_conjugate(G, x, y, limit=DEFAULT_ENUM_LIMIT):
    """
    Decide whether g·x·g⁻¹ = y for some g in G and return such a g.

    Element order and cycle type are compared first; only then is the class
    of x grown breadth-first while tracking a conjugator for every element.
    """
    for element in (x, y):
        if not G.contains(element):
            raise NonMember("are_conjugate needs both elements inside the group")
    x = as_tuple(x)
    y = as_tuple(y)
    if x == y:
        return Conjugacy(True, as_perm(identity_tuple(G.degree)))
    if sorted(_cycle_lengths(x)) != sorted(_cycle_lengths(y)):
        return Conjugacy(False, None)

    generators = [as_tuple(g) for g in G.generators]
    conjugators = {x: identity_tuple(G.degree)}
    queue = deque([x])
    while queue:
        z = queue.popleft()
        c = conjugators[z]
        for s in generators:
            w = _conjugate(s, z)
            if w in conjugators:
                continue
            conjugators[w] = _compose(s, c)
            if w == y:
                return Conjugacy(True, as_perm(conjugators[w]))
            if len(conjugators) > limit:
                raise OrderExceedsLimit(len(conjugators), limit)
            queue.append(w)
    return Conjugacy(False, None)


def _subgroup_from_members(G, members, limit):
    """
    Turn the full element list of a subgroup into a handle with few generators.

    members is the complete subgroup, so its length is the target order and
    the greedy pass stops as soon as that order is reached.
    """
    target = len(members)
    if target == G.order:
        return whole_group(G)
    generators = []
    current = PermutationGroup([Permutation(G.degree - 1)])
    for m in members:
        if current.order() == target:
            break
        perm = as_perm(m)
        if perm.is_Identity or current.contains(perm):
            continue
        generators.append(perm)
        current = PermutationGroup(generators)
    return SubgroupHandle(G, PermGroup(G.degree, generators))


def centralizer(G, x, limit=DEFAULT_ENUM_LIMIT):
    """Exact centraliser of x in G by scanning the element stream."""
    if not G.contains(x):
        raise NonMember("centralizer needs an element of the group")
    x = as_tuple(x)
    members = [g for g in _element_tuples(G, limit) if _conjugate(g, x) == x]
    return _subgroup_from_members(G, members, limit)


def normalizer(G, H, limit=DEFAULT_ENUM_LIMIT):
    """
    Exact normaliser N_G(H) by scanning the element stream.

    Params
    ------
    H:
        SubgroupHandle of G; its elements are materialised, so |H| must fit
        the limit as well
    """
    if is_normal(G, H):
        return whole_group(G)
    inside = set(_element_tuples(H.group, limit))
    generators = [as_tuple(h) for h in H.generators]
    logger.info("scanning %d elements for the normaliser of a subgroup of order %d", G.order, H.order)
    members = [
        g for g in _element_tuples(G, limit)
        if all(_conjugate(g, h) in inside for h in generators)
    ]
    return _subgroup_from_members(G, members, limit)


def coset_action(G, N, limit=DEFAULT_ENUM_LIMIT):
    """
    Permutation action of G on G/N plus the element-level quotient map.

    Raises NotNormal unless N is normal in G, IndexExceedsLimit when the
    index is beyond the limit.
    """
    if not is_normal(G, N):
        raise NotNormal("coset_action needs a normal subgroup")
    return CosetAction(G, N, limit)


def element_order_census(H, limit=DEFAULT_ENUM_LIMIT):
    """Mapping element order -> number of elements of that order."""
    group = H.group if isinstance(H, SubgroupHandle) else H
    return dict(sorted(Counter(_order(t) for t in _element_tuples(group, limit)).items()))
