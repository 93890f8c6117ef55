"""
Matrix groups over finite fields and their permutation realisations.

Vectors are rows of integer field representatives; a matrix M acts on the
column vector v as M·v, computed in bulk as V·Mᵀ on galois arrays.
"""
import itertools
import logging
from collections import namedtuple

import numpy as np

from errors import ActionNotClosed, ActionNotFaithful, BadParams
from perm_core import PermGroup, is_two_transitive
from settings import MAX_KERNEL_VECTORS

logger = logging.getLogger(__name__)

# Actions understood by matrix_to_perm
ACTIONS = ("projective", "ovoid", "cosets")

MatrixGroupSpec = namedtuple("MatrixGroupSpec", ["dimension", "field", "generators"])

# group: the permutation image; points: the acted-on projective points in
# point-index order; kernel_order: |kernel of the matrix group on points|,
# None when the linear action was too large to build; two_transitive: on points
PermutationAction = namedtuple("PermutationAction", ["group", "points", "kernel_order", "two_transitive"])


def matrix_group_spec(field, matrices):
    """
    Validate generator matrices and bundle them with their field.

    Raises BadParams for non-square, mixed-size or singular matrices.
    """
    generators = [np.asarray(m, dtype=np.int64) for m in matrices]
    if not generators:
        raise BadParams("a matrix group needs at least one generator")
    dimension = generators[0].shape[0]
    for m in generators:
        if m.shape != (dimension, dimension):
            raise BadParams(f"expected {dimension}x{dimension} matrices, got {m.shape}")
        if int(np.linalg.det(field.array(m))) == 0:
            raise BadParams("generator matrix is singular")
    return MatrixGroupSpec(dimension, field, generators)


def normalise(field, rows):
    """Scale every row so its first non-zero coordinate is 1."""
    rows = np.asarray(rows, dtype=np.int64)
    lead = np.argmax(rows != 0, axis=1)
    lead_values = rows[np.arange(len(rows)), lead]
    if np.any(lead_values == 0):
        raise ActionNotClosed("zero vector in a projective action")
    scale = field.array(lead_values) ** -1
    return (field.array(rows) * scale[:, np.newaxis]).view(np.ndarray).astype(np.int64)


def apply_matrix(field, matrix, rows):
    product = field.array(rows) @ field.array(matrix).T
    return product.view(np.ndarray).astype(np.int64)


def projective_points(field, dimension):
    """
    Normalised projective points of PG(dimension-1, q) in lexicographic order
    of their integer coordinates.
    """
    points = []
    for v in itertools.product(range(field.order), repeat=dimension):
        nonzero = [c for c in v if c]
        if nonzero and nonzero[0] == 1:
            points.append(v)
    return points


################################################################################
# Suzuki groups
################################################################################

def suzuki_parameters(field):
    """
    (m, s, t) for q = 2^(2m+1): s = 2^m and t = 2^(m+1), so x -> x^t is the
    twist whose square is the Frobenius x -> x^2.
    """
    if field.characteristic != 2 or field.degree % 2 == 0:
        raise BadParams(f"Suzuki groups need GF(2^k) with k odd, not {field!r}")
    m = (field.degree - 1) // 2
    return m, 2 ** m, 2 ** (m + 1)


def suzuki_ovoid(field):
    """
    The q²+1 ovoid points: (0,0,0,1) followed by (1, x, y, x^(t+2) + xy + y^t)
    over all (x, y), x major.
    """
    _, _, t = suzuki_parameters(field)
    q = field.order
    grid = np.arange(q, dtype=np.int64)
    x = field.array(np.repeat(grid, q))
    y = field.array(np.tile(grid, q))
    z = x ** (t + 2) + x * y + y ** t
    xs = x.view(np.ndarray).tolist()
    ys = y.view(np.ndarray).tolist()
    zs = z.view(np.ndarray).tolist()
    return [(0, 0, 0, 1)] + [(1, int(a), int(b), int(c)) for a, b, c in zip(xs, ys, zs)]


def suzuki_unipotent(field, a, b):
    """Lower unitriangular S(a, b); sends (1,x,y,·) to (1, x+a, y+b+a^t·x, ·)."""
    _, _, t = suzuki_parameters(field)
    gf = field.gf
    a, b = gf(a), gf(b)
    corner = a ** (t + 2) + a * b + b ** t
    rows = [
        [1, 0, 0, 0],
        [int(a), 1, 0, 0],
        [int(b), int(a ** t), 1, 0],
        [int(corner), int(a ** (t + 1) + b), int(a), 1],
    ]
    return np.array(rows, dtype=np.int64)


def suzuki_torus(field, kappa):
    _, s, _ = suzuki_parameters(field)
    entries = [field.power(kappa, 1 + s), field.power(kappa, s),
               field.power(kappa, -s), field.power(kappa, -1 - s)]
    return np.diag(np.array(entries, dtype=np.int64))


SUZUKI_INVOLUTION = np.array(
    [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=np.int64
)


def suzuki_matrices(field):
    """
    Generators of Sz(q): S(β, 0) and S(0, β) for β over the basis
    1, α, …, α^(k-1), then the torus element M(α), then the antidiagonal T.
    """
    basis = field.basis()
    unipotent = [suzuki_unipotent(field, beta, 0) for beta in basis]
    unipotent += [suzuki_unipotent(field, 0, beta) for beta in basis]
    return unipotent + [suzuki_torus(field, field.primitive_element), SUZUKI_INVOLUTION.copy()]


################################################################################
# Linear groups
################################################################################

def elementary_matrix(field, n, i, j, value):
    m = np.eye(n, dtype=np.int64)
    m[i, j] = value
    return m


def special_linear_generators(field, n):
    """
    Generators of SL(n, q). For n = 2 the unipotent, diagonal and Weyl
    elements; otherwise the transvections I + β·e_ij over an F_p basis.
    """
    if n < 2:
        raise BadParams("special linear groups need dimension at least 2")
    if n == 2:
        alpha = field.primitive_element
        return [
            np.array([[1, 1], [0, 1]], dtype=np.int64),
            np.array([[alpha, 0], [0, field.inv(alpha)]], dtype=np.int64),
            np.array([[0, 1], [field.neg(1), 0]], dtype=np.int64),
        ]
    return [
        elementary_matrix(field, n, i, j, beta)
        for i in range(n) for j in range(n) if i != j
        for beta in field.basis()
    ]


################################################################################
# Permutation realisation
################################################################################

def _orbit_points(spec, seed_point):
    field = spec.field
    seed = tuple(int(c) for c in normalise(field, [seed_point])[0])
    seen = {seed}
    points = [seed]
    frontier = [seed]
    while frontier:
        found = []
        for m in spec.generators:
            for image in normalise(field, apply_matrix(field, m, frontier)):
                image = tuple(int(c) for c in image)
                if image not in seen:
                    seen.add(image)
                    points.append(image)
                    found.append(image)
        frontier = found
    return points


def _permutations_on(spec, rows, normalised):
    field = spec.field
    index = {row: i for i, row in enumerate(rows)}
    permutations = []
    for m in spec.generators:
        images = apply_matrix(field, m, rows)
        if normalised:
            images = normalise(field, images)
        perm = []
        for image in images:
            key = tuple(int(c) for c in image)
            if key not in index:
                raise ActionNotClosed(f"image point {key} lies outside the acted-on set")
            perm.append(index[key])
        permutations.append(perm)
    return permutations


def _kernel_order(spec, points, projective_group):
    field = spec.field
    count = len(points) * (field.order - 1)
    if count > MAX_KERNEL_VECTORS:
        logger.info("skipping kernel computation over %d vectors", count)
        return None
    units = field.array(np.arange(1, field.order))
    vectors = (units[:, np.newaxis, np.newaxis] * field.array(points)[np.newaxis])
    rows = [tuple(int(c) for c in v) for v in vectors.view(np.ndarray).reshape(-1, spec.dimension)]
    linear = PermGroup(len(rows), _permutations_on(spec, rows, normalised=False))
    return linear.order // projective_group.order


def matrix_to_perm(spec, action="projective", faithful=False, seed_point=None,
                   family=None):
    """
    Permutation group induced by a matrix group on a set of projective points.

    Params
    ------
    spec:
        MatrixGroupSpec
    action:
        "projective" (all of PG(d-1, q)), "ovoid" (the Suzuki ovoid, d = 4)
        or "cosets" (the orbit of seed_point, i.e. the cosets of its
        stabiliser)
    faithful:
        raise ActionNotFaithful when the kernel is found to be nontrivial

    Returns
    -------
    PermutationAction(group, points, kernel_order, two_transitive)
    """
    field = spec.field
    if action == "projective":
        points = projective_points(field, spec.dimension)
    elif action == "ovoid":
        if spec.dimension != 4:
            raise BadParams("the ovoid action needs 4x4 matrices")
        points = suzuki_ovoid(field)
    elif action == "cosets":
        if seed_point is None:
            seed_point = (1,) + (0,) * (spec.dimension - 1)
        points = _orbit_points(spec, seed_point)
    else:
        raise BadParams(f"unknown action {action!r}, expected one of {ACTIONS}")

    group = PermGroup(len(points), _permutations_on(spec, points, normalised=True),
                      family=family, labels=points)
    kernel_order = _kernel_order(spec, points, group)
    if faithful and kernel_order is not None and kernel_order > 1:
        raise ActionNotFaithful(f"the action has a kernel of order {kernel_order}")
    two_transitive = is_two_transitive(group)
    logger.info("%s action on %d points, order %d, kernel %s, 2-transitive %s",
                action, len(points), group.order, kernel_order, two_transitive)
    return PermutationAction(group, points, kernel_order, two_transitive)
