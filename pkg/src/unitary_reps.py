"""
Complex unitary representations of permutation groups.

Matrices are numpy complex128 arrays. A representation is fixed by the images
of its source's generators; sources up to EXHAUSTIVE_REP_LIMIT get a full
element -> matrix table grown breadth-first over the Cayley graph, larger
ones need a structural evaluator.
"""
import logging
import math
from collections import deque, namedtuple

import numpy as np

from algebra.fields import field
from errors import BadParams, CheckFailed, IndexExceedsLimit, NotCharacter, NotNormal, SizeExceeded, SourceMismatch
from perm_core import (
    PermGroup,
    SubgroupHandle,
    _compose,
    _conjugate,
    _element_tuples,
    _invert,
    as_tuple,
    identity_tuple,
    is_normal,
    random_elements,
)
from settings import (
    DEFAULT_SEED,
    DEFAULT_TOLERANCE,
    EXHAUSTIVE_REP_LIMIT,
    MAX_INDUCED_INDEX,
    PAIR_CHECK_BUDGET,
    SAMPLED_PAIR_COUNT,
)

logger = logging.getLogger(__name__)

# passed: every checked product agreed; exhaustive: the check covered every
# element; max_error: largest entrywise deviation seen
HomomorphismCheck = namedtuple("HomomorphismCheck", ["passed", "exhaustive", "max_error"])


def is_unitary(matrix, tolerance=DEFAULT_TOLERANCE):
    d = matrix.shape[0]
    return bool(np.abs(matrix @ matrix.conj().T - np.eye(d)).max() <= tolerance)


def is_identity(matrix, tolerance=DEFAULT_TOLERANCE):
    return bool(np.abs(matrix - np.eye(matrix.shape[0])).max() <= tolerance)


def permutation_matrix(images):
    """P with P·e_i = e_images[i]; P(g)P(h) = P(g∘h)."""
    n = len(images)
    matrix = np.zeros((n, n), dtype=complex)
    matrix[list(images), list(range(n))] = 1
    return matrix


class UnitaryRep:
    """
    Unitary representation given by generator images

    ...

    Attributes
    ----------
    group : PermGroup
        the source; a SubgroupHandle source is unwrapped to its group

    dimension : int

    generator_images : list of np.ndarray
        one matrix per group.generators entry

    tolerance : float

    homomorphism : HomomorphismCheck or None
        result of the last verify_homomorphism run

    Methods
    -------
    evaluate(g):
        matrix of g; table lookup when the source is small, the structural
        evaluator otherwise

    trace(g):
        character value at g

    has_table:
        whether the exhaustive element table is available
    """

    def __init__(self, source, generator_images, tolerance=DEFAULT_TOLERANCE, evaluator=None):
        group = source.group if isinstance(source, SubgroupHandle) else source
        images = [np.asarray(m, dtype=complex) for m in generator_images]
        if len(images) != len(group.generators):
            raise SourceMismatch(f"{len(images)} images for {len(group.generators)} generators")
        dimension = images[0].shape[0] if images else 1
        for m in images:
            if m.shape != (dimension, dimension):
                raise SourceMismatch("generator images of different sizes")
            if not is_unitary(m, tolerance):
                raise CheckFailed("unitary", "a generator image is not unitary")

        self.group = group
        self.dimension = dimension
        self.generator_images = images
        self.tolerance = tolerance
        self.homomorphism = None
        self.__evaluator = evaluator
        self.__elements = None
        self.__index = None
        self.__matrices = None


    @property
    def has_table(self):
        return self.group.order <= EXHAUSTIVE_REP_LIMIT


    def __build_table(self):
        if self.__elements is not None:
            return
        identity = identity_tuple(self.group.degree)
        generators = [as_tuple(g) for g in self.group.generators]
        index = {identity: 0}
        elements = [identity]
        matrices = [np.eye(self.dimension, dtype=complex)]
        queue = deque([identity])
        while queue:
            g = queue.popleft()
            current = matrices[index[g]]
            for s, image in zip(generators, self.generator_images):
                h = _compose(s, g)
                if h not in index:
                    index[h] = len(elements)
                    elements.append(h)
                    matrices.append(image @ current)
                    queue.append(h)
        self.__elements = elements
        self.__index = index
        self.__matrices = np.array(matrices)
        logger.debug("element table of %d matrices of dimension %d", len(elements), self.dimension)


    def table(self):
        """(elements, index, matrices) of the exhaustive table."""
        if not self.has_table:
            raise SizeExceeded(f"source of order {self.group.order} is too large for an element table")
        self.__build_table()
        return self.__elements, self.__index, self.__matrices


    def evaluate(self, g):
        g = as_tuple(g)
        if self.has_table:
            self.__build_table()
            return self.__matrices[self.__index[g]]
        if self.__evaluator is None:
            raise SizeExceeded("no evaluator for a source beyond the element-table limit")
        return self.__evaluator(g)


    def trace(self, g):
        return complex(np.trace(self.evaluate(g)))


    def __repr__(self):
        return f"<UnitaryRep dim={self.dimension} source order={self.group.order}>"


Character = namedtuple("Character", ["values", "dimension", "classes"])
Character.__doc__ = "Trace of a representation on each class representative, in class order."


################################################################################
# Constructors
################################################################################

def rep_from_generator_images(source, images, tolerance=DEFAULT_TOLERANCE):
    return UnitaryRep(source, images, tolerance)


def trivial_rep(source, tolerance=DEFAULT_TOLERANCE):
    group = source.group if isinstance(source, SubgroupHandle) else source
    return UnitaryRep(group, [np.eye(1, dtype=complex) for _ in group.generators], tolerance)


def permutation_rep(source, action, tolerance=DEFAULT_TOLERANCE):
    """
    Lift of the permutation representation of a coset action to its source;
    for the action on G/N this is the regular representation of G/N.
    """
    group = source.group if isinstance(source, SubgroupHandle) else source
    images = [permutation_matrix(as_tuple(action.image(g))) for g in group.generators]
    return UnitaryRep(group, images, tolerance, evaluator=lambda g: permutation_matrix(as_tuple(action.image(g))))


def _character_table(A, chi, tolerance):
    """Extend chi from A's generators to all of A, checking multiplicativity."""
    generators = [as_tuple(a) for a in A.generators]
    values = [complex(v) for v in chi]
    if len(values) != len(generators):
        raise NotCharacter("one character value per generator of A is required")
    for v in values:
        if abs(abs(v) - 1) > tolerance:
            raise NotCharacter("character values must lie on the unit circle")
    identity = identity_tuple(A.degree)
    table = {identity: 1 + 0j}
    queue = deque([identity])
    while queue:
        a = queue.popleft()
        for s, v in zip(generators, values):
            b = _compose(s, a)
            value = v * table[a]
            if b not in table:
                table[b] = value
                queue.append(b)
            elif abs(table[b] - value) > tolerance:
                raise NotCharacter("the given values are not multiplicative on A")
    return table


def _coset_transversal(N, A_elements):
    """Left coset representatives of A in N, breadth first from the identity."""
    identity = identity_tuple(N.degree)
    transversal = [identity]
    covered = set(A_elements)
    queue = deque([identity])
    generators = [as_tuple(g) for g in N.generators]
    while queue:
        t = queue.popleft()
        for s in generators:
            x = _compose(s, t)
            if x in covered:
                continue
            transversal.append(x)
            covered.update(_compose(x, a) for a in A_elements)
            queue.append(x)
    return transversal


def induced_rep(N, A, chi, transversal=None, coset_index=None,
                max_index=MAX_INDUCED_INDEX, tolerance=DEFAULT_TOLERANCE):
    """
    Representation of N induced from the linear character chi of the normal
    abelian subgroup A.

    Params
    ------
    N:
        PermGroup (or handle)
    A:
        SubgroupHandle of N, normal
    chi:
        values on A's generators, unit complex numbers
    transversal:
        left coset representatives t_0 = 1, t_1, ...; breadth-first by default
    coset_index:
        optional x -> i with x in t_i·A; membership search by default

    Returns
    -------
    UnitaryRep with rho(g)[i, j] = chi(t_i⁻¹ g t_j) when t_i⁻¹ g t_j lies in A,
    0 otherwise. The homomorphism check has already been run.
    """
    group = N.group if isinstance(N, SubgroupHandle) else N
    if not is_normal(group, A):
        raise NotNormal("induction needs a normal subgroup")
    index = group.order // A.order
    if index > max_index:
        raise IndexExceedsLimit(index, max_index)

    chi_table = _character_table(A.group, chi, tolerance)
    if transversal is None:
        transversal = _coset_transversal(group, list(chi_table))
    transversal = [as_tuple(t) for t in transversal]
    inverses = [_invert(t) for t in transversal]

    def find_coset(x):
        if coset_index is not None:
            return coset_index(x)
        for i, t_inv in enumerate(inverses):
            if _compose(t_inv, x) in chi_table:
                return i
        raise CheckFailed("transversal", "element outside every coset")

    def monomial(g):
        rows = []
        values = []
        for t in transversal:
            x = _compose(g, t)
            i = find_coset(x)
            rows.append(i)
            values.append(chi_table[_compose(inverses[i], x)])
        return rows, values

    def evaluate(g):
        rows, values = monomial(as_tuple(g))
        matrix = np.zeros((index, index), dtype=complex)
        matrix[list(rows), list(range(index))] = values
        return matrix

    images = [evaluate(g) for g in group.generators]
    rep = UnitaryRep(group, images, tolerance, evaluator=evaluate)
    rep.homomorphism = verify_homomorphism(rep)
    if not rep.homomorphism.passed:
        raise CheckFailed("homomorphism_verified", f"induced representation deviates by {rep.homomorphism.max_error}")
    logger.info("induced representation of dimension %d (homomorphism %s)",
                index, "exhaustive" if rep.homomorphism.exhaustive else "sampled")
    return rep


def induced_character(N, A, chi, x, tolerance=DEFAULT_TOLERANCE):
    """
    Induced-character sum (1/|A|) · Σ chi(g⁻¹xg) over g in N with g⁻¹xg in A.
    """
    group = N.group if isinstance(N, SubgroupHandle) else N
    chi_table = _character_table(A.group, chi, tolerance)
    x = as_tuple(x)
    total = 0j
    for g in _element_tuples(group):
        y = _conjugate(_invert(g), x)
        if y in chi_table:
            total += chi_table[y]
    return total / A.order


################################################################################
# The affine group and its faithful representation
################################################################################

def affine_group(f):
    """
    AGL(1, q) for a field of characteristic 2 acting on its q elements:
    the translations by the basis 1, α, … and multiplication by α.
    """
    q = f.order
    translations = [[x ^ beta for x in range(q)] for beta in f.basis()]
    scaling = [f.mul(f.primitive_element, x) for x in range(q)]
    return PermGroup(q, translations + [scaling], family=("agl1", (q,)))


def suzuki_sigma(n, tolerance=DEFAULT_TOLERANCE):
    """
    Faithful (2^n - 1)-dimensional representation of (Z/2)^n ⋊ Z/(2^n - 1),
    induced from the character of the translation subgroup that is -1 on
    x -> x+1 and 1 on the other basis translations.

    The transversal is the powers of x -> αx, so the image of the
    multiplication generator is the cyclic permutation matrix.
    """
    if n % 2 == 0 or not 3 <= n <= 13:
        raise BadParams(f"suzuki_sigma needs odd n with 3 <= n <= 13, got {n}")
    f = field(2, n)
    q = f.order
    m = q - 1
    G = affine_group(f)
    A = SubgroupHandle(G, PermGroup(q, G.generators[:n]))
    chi = [-1] + [1] * (n - 1)
    transversal = [tuple(f.mul(f.exp(i), x) for x in range(q)) for i in range(m)]

    def coset_index(x):
        return f.log(x[1] ^ x[0])

    return induced_rep(G, A, chi, transversal=transversal, coset_index=coset_index,
                       max_index=m, tolerance=tolerance)


################################################################################
# Checks
################################################################################

def _pair_check(rep):
    elements, index, matrices = rep.table()
    table = np.array(elements, dtype=np.int64)
    keys = {row.tobytes(): i for i, row in enumerate(table)}
    worst = 0.0
    for i, a in enumerate(table):
        products = a[table]
        targets = [keys[row.tobytes()] for row in products]
        deviation = np.abs(matrices[i] @ matrices - matrices[targets]).max()
        worst = max(worst, float(deviation))
    return worst


def _generator_check(rep):
    # every Cayley-graph edge g -> s∘g; with the table grown along a spanning
    # tree of these edges this is equivalent to the all-pairs check
    elements, index, matrices = rep.table()
    worst = 0.0
    for s, image in zip(rep.group.generators, rep.generator_images):
        s = as_tuple(s)
        targets = [index[_compose(s, g)] for g in elements]
        deviation = np.abs(image @ matrices - matrices[targets]).max()
        worst = max(worst, float(deviation))
    return worst


def verify_homomorphism(rep, seed=DEFAULT_SEED):
    """
    Check rho(ab) = rho(a)rho(b).

    Sources with an element table are checked exhaustively (all pairs when
    affordable, otherwise every element against every generator). Larger
    sources get all generator pairs plus seeded random pairs and are
    reported non-exhaustive.
    """
    if rep.has_table:
        n = rep.group.order
        if n * n * rep.dimension ** 3 <= PAIR_CHECK_BUDGET:
            worst = _pair_check(rep)
        else:
            worst = _generator_check(rep)
        result = HomomorphismCheck(worst <= rep.tolerance, True, worst)
    else:
        pairs = [(as_tuple(a), as_tuple(b)) for a in rep.group.generators for b in rep.group.generators]
        count = max(10, min(SAMPLED_PAIR_COUNT, PAIR_CHECK_BUDGET // max(1, rep.dimension ** 3)))
        sample = [as_tuple(g) for g in random_elements(rep.group, 2 * count, seed)]
        pairs += list(zip(sample[0::2], sample[1::2]))
        worst = 0.0
        for a, b in pairs:
            deviation = np.abs(rep.evaluate(_compose(a, b)) - rep.evaluate(a) @ rep.evaluate(b)).max()
            worst = max(worst, float(deviation))
        result = HomomorphismCheck(worst <= rep.tolerance, False, worst)
    rep.homomorphism = result
    return result


def is_faithful(rep):
    """Only the identity maps to the identity matrix (exhaustive)."""
    elements, _, matrices = rep.table()
    identity = np.eye(rep.dimension)
    deviations = np.abs(matrices - identity).reshape(len(elements), -1).max(axis=1)
    return bool(np.sum(deviations <= rep.tolerance) == 1)


def character(rep, classes):
    """
    Character of rep on the classes of its source.

    Raises SourceMismatch unless the classes were computed for rep's source.
    """
    if classes.group is not rep.group:
        same = classes.group.degree == rep.group.degree and classes.group.order == rep.group.order
        if not same or not all(rep.group.contains(r) for r in classes.representatives):
            raise SourceMismatch("conjugacy classes belong to a different group")
    values = [rep.trace(r) for r in classes.representatives]
    return Character(values, rep.dimension, classes)


def class_constancy(rep, classes, members=3):
    """
    Largest trace deviation inside a class, probing up to `members` elements
    per class.
    """
    by_class = {}
    for x, number in classes.index.items():
        bucket = by_class.setdefault(number, [])
        if len(bucket) < members:
            bucket.append(x)
    worst = 0.0
    for number, bucket in by_class.items():
        reference = rep.trace(classes.representatives[number])
        for x in bucket:
            worst = max(worst, abs(rep.trace(x) - reference))
    return worst


def root_of_unity(k, p):
    return complex(math.cos(2 * math.pi * k / p), math.sin(2 * math.pi * k / p))
