"""
The trichotomy decision procedure.

Given G and a prime p, the cellularization of BG with respect to BZ/p is
either aspherical, has infinitely many p-torsion-free homotopy groups, or has
p-torsion in infinitely many of them. classify runs the sufficient tests for
each branch in a fixed order on Omega_1(G)_p and records every fact it used
so that reverify can re-check them without searching again.
"""
import logging

import sympy
import sympy.core.random

from errors import (
    BadParams,
    CheckFailed,
    FusionNotControlled,
    IndexExceedsLimit,
    NotFound,
    NotPrime,
    OrderExceedsLimit,
    SizeExceeded,
    SourceMismatch,
    StaleCertificate,
)
from fusion import fusion_closure, fusion_partition
from local_structure import is_p_group, omega1, order_p_seeds, p_part, sylow_subgroup
from perm_core import (
    PermGroup,
    SubgroupHandle,
    _conjugate,
    _element_tuples,
    _order,
    as_perm,
    as_tuple,
    is_normal,
    normal_closure,
    normalizer,
)
from settings import ClassifyOptions
from unitary_reps import rep_from_generator_images
from witnesses import (
    CHECK_NAMES,
    decode_matrix,
    generic_quotient_witness,
    psl2_parameters,
    psl2_witness,
    suzuki_witness,
    witness_checks,
)

logger = logging.getLogger(__name__)

ASPHERICAL = "aspherical"
TORSION_FREE = "torsion_free"
TORSION = "torsion"
UNKNOWN = "unknown"

REDUCTION_NOTE = (
    "Criteria are applied to Omega_1(G)_p. Its cellular cover is a central extension "
    "with p-torsion-free kernel, which leaves the Sylow p-subgroup and p-fusion unchanged."
)

INDEX_TWO_NOTE = (
    "Omega_1(S) has index 2 in S: no essential map from BG into a "
    "Sigma BZ/2-local target exists (a remark, not a criterion)."
)


class TrichotomyVerdict:
    """
    Result of one classification

    ...

    Attributes
    ----------
    p : int
    branch : str
        "aspherical", "torsion_free", "torsion" or "unknown"
    aspherical_kind : str or None
        "trivial" (p does not divide |G|) or "p_group"
    criterion : str or None
        "A" or "B" for torsion_free
    primes : list of int
        primes q != p dividing |Omega_1(G)_p| (torsion_free only)
    witness : WitnessCertificate, dict or None
        a live certificate after classify, its dict form after from_dict
    reduction : list of dict
        {"stage", "order"} from G down to Omega_1(G)_p
    criteria : dict
        evaluated criteria, "A" / "B" -> bool
    facts : dict
        orders and indices that were computed along the way
    certificate : dict
        element data reverify re-checks (seeds, generators, conjugators)
    diagnostics, notes : list of str
    certified : bool
        True only when every step ran in the exact tier
    """

    def __init__(self, p, branch, reduction, certified=True):
        self.p = p
        self.branch = branch
        self.reduction = reduction
        self.certified = certified
        self.aspherical_kind = None
        self.criterion = None
        self.primes = []
        self.witness = None
        self.criteria = {}
        self.facts = {}
        self.certificate = {}
        self.diagnostics = []
        self.notes = [REDUCTION_NOTE]


    @property
    def cellularity_of_completion(self):
        if self.branch in (ASPHERICAL, TORSION_FREE):
            return True
        if self.branch == TORSION:
            return False
        return None


    @property
    def fundamental_group_note(self):
        if self.branch == ASPHERICAL and self.aspherical_kind == "trivial":
            return "p does not divide |G|; the cellularization is contractible."
        order = self.reduction[-1]["order"]
        return (
            f"pi_1 is an extension of Omega_1(G)_p (order {order}) by a finite "
            "p-torsion-free abelian group; the kernel is not computed."
        )


    @property
    def witness_dict(self):
        if self.witness is None or isinstance(self.witness, dict):
            return self.witness
        return self.witness.to_dict()


    def to_dict(self):
        return {
            "p": self.p,
            "branch": self.branch,
            "aspherical_kind": self.aspherical_kind,
            "criterion": self.criterion,
            "primes": list(self.primes),
            "reduction": [dict(stage) for stage in self.reduction],
            "criteria": dict(self.criteria),
            "facts": dict(self.facts),
            "certificate": self.certificate,
            "witness": self.witness_dict,
            "diagnostics": list(self.diagnostics),
            "notes": list(self.notes),
            "fundamental_group_note": self.fundamental_group_note,
            "cellularity_of_completion": self.cellularity_of_completion,
            "certified": self.certified,
        }


    @classmethod
    def from_dict(cls, data):
        verdict = cls(data["p"], data["branch"], [dict(s) for s in data["reduction"]], data["certified"])
        verdict.aspherical_kind = data.get("aspherical_kind")
        verdict.criterion = data.get("criterion")
        verdict.primes = list(data.get("primes", []))
        verdict.criteria = dict(data.get("criteria", {}))
        verdict.facts = dict(data.get("facts", {}))
        verdict.certificate = data.get("certificate", {})
        verdict.witness = data.get("witness")
        verdict.diagnostics = list(data.get("diagnostics", []))
        verdict.notes = list(data.get("notes", []))
        return verdict


    def __repr__(self):
        detail = self.criterion or self.aspherical_kind or ""
        return f"<TrichotomyVerdict {self.branch} {detail} certified={self.certified}>"


def _array_forms(perms):
    return [list(as_tuple(g)) for g in perms]


def _family_witness(G, p, options, partition):
    if not G.family:
        return None
    name, params = G.family
    if name == "suzuki" and p == 2:
        return suzuki_witness(params[0], G, options.enum_limit, options.tolerance, partition)
    if name == "psl2" and p != 2:
        found = psl2_parameters(params[0], p)
        if found and found[0] >= 2:
            n, m = found
            return psl2_witness(p, n, m, G, options.enum_limit, options.tolerance, partition)
    return None


def classify(G, p, options=None):
    """
    Decide the branch for (G, p).

    Resource limits never produce a wrong verdict: they end the run with
    Unknown and certified = False.
    """
    options = options or ClassifyOptions()
    if not sympy.isprime(p):
        raise NotPrime(f"{p} is not prime")
    sympy.core.random.seed(options.seed)
    reduction = [{"stage": "G", "order": G.order}]

    if G.order % p:
        verdict = TrichotomyVerdict(p, ASPHERICAL, reduction)
        verdict.aspherical_kind = "trivial"
        verdict.facts["group_order"] = G.order
        return verdict

    try:
        return _classify_reduced(G, p, options, reduction)
    except (OrderExceedsLimit, IndexExceedsLimit, SizeExceeded) as error:
        logger.warning("resource limit hit: %s", error)
        verdict = TrichotomyVerdict(p, UNKNOWN, reduction, certified=False)
        verdict.diagnostics.append(f"resource limit: {error}")
        return verdict


def _classify_reduced(G, p, options, reduction):
    limit = options.enum_limit
    logger.info("classifying a group of order %d at p = %d", G.order, p)

    radical = order_p_seeds(G, p, limit, options.seed, options.sample_budget)
    G1 = G if radical.closure.order == G.order else PermGroup(G.degree, radical.closure.generators)
    reduction.append({"stage": "omega1_G", "order": G1.order})
    facts = {"group_order": G.order, "omega1_G_order": G1.order}
    certificate = {"omega1_seeds": _array_forms(radical.seeds)}

    def verdict_for(branch, certified=True):
        verdict = TrichotomyVerdict(p, branch, reduction, certified)
        verdict.facts = facts
        verdict.certificate = certificate
        return verdict

    if not radical.certified:
        verdict = verdict_for(UNKNOWN, certified=False)
        verdict.diagnostics.append("Omega_1(G)_p came from sampling and is not certified complete")
        return verdict

    if is_p_group(G1, p):
        verdict = verdict_for(ASPHERICAL)
        verdict.aspherical_kind = "p_group"
        return verdict

    S = sylow_subgroup(G1, p, limit)
    omega = omega1(S, p, limit)
    index = S.order // omega.order
    facts.update(sylow_order=S.order, omega1_S_order=omega.order, omega1_index=index)
    certificate["sylow_generators"] = _array_forms(S.generators)
    certificate["omega1_generators"] = _array_forms(omega.generators)
    primes = sorted(q for q in sympy.factorint(G1.order) if q != p)
    notes = [INDEX_TWO_NOTE] if p == 2 and index == 2 else []

    criteria = {"A": omega.order == S.order}
    logger.info("criterion A: %s", criteria["A"])
    report = None
    if not criteria["A"] or options.evaluate_all_criteria:
        report = fusion_closure(G1, S, p, limit)
        criteria["B"] = report.closure_generates
        facts["fusion_closure_order"] = report.closure.order
        logger.info("criterion B: %s", criteria["B"])

    if criteria["A"] or criteria.get("B"):
        verdict = verdict_for(TORSION_FREE)
        verdict.criterion = "A" if criteria["A"] else "B"
        verdict.primes = primes
        verdict.criteria = criteria
        verdict.notes += notes
        if report is not None:
            certificate["conjugators"] = [_array_forms(triple) for triple in report.witnesses]
        return verdict

    diagnostics = []
    witness = None
    if options.family_witnesses and G1 is G:
        try:
            witness = _family_witness(G1, p, options, report.partition)
        except (BadParams, CheckFailed) as error:
            diagnostics.append(f"family witness failed: {error}")
    if witness is None:
        try:
            witness = generic_quotient_witness(G1, S, p, limit, options.tolerance, report)
        except FusionNotControlled as error:
            diagnostics.append(f"generic witness: {error}")
        except (NotFound, CheckFailed) as error:
            diagnostics.append(f"generic witness not found: {error}")

    if witness is not None:
        verdict = verdict_for(TORSION)
        verdict.witness = witness
        verdict.criteria = criteria
        verdict.notes += notes
        facts["witness_provenance"] = witness.provenance
        return verdict

    verdict = verdict_for(UNKNOWN)
    verdict.criteria = criteria
    verdict.diagnostics = diagnostics
    verdict.notes += notes
    return verdict


################################################################################
# Re-verification
################################################################################

def _members(G, forms, what):
    perms = [as_perm(f) for f in forms]
    for g in perms:
        if g.size != G.degree or not G.contains(g):
            raise StaleCertificate(f"recorded {what} element is not in the group")
    return perms


def _reverify_witness(G1, data, p, options):
    S_gens = _members(G1, data["sylow_generators"], "Sylow")
    N_gens = _members(G1, data["normalizer_generators"], "normaliser")
    S = SubgroupHandle(G1, PermGroup(G1.degree, S_gens))
    if S.order != p_part(G1.order, p):
        return False
    N = PermGroup(G1.degree, N_gens)
    if not all(N.contains(s) for s in S_gens) or not is_normal(N, S):
        return False
    # the source has to be all of N_G(S), not just some subgroup normalising S
    if N.order != normalizer(G1, S, options.enum_limit).order:
        return False
    for triple in data["fusion"]:
        _members(G1, triple, "fusion")
    if len(data["fusion"]) != S.order:
        return False

    try:
        rep = rep_from_generator_images(N, [decode_matrix(m) for m in data["generator_images"]], options.tolerance)
    except (CheckFailed, SourceMismatch):
        return False
    # fusion is recomputed in G1; the recorded triples are not trusted
    partition = fusion_partition(G1, sorted(_element_tuples(S.group, options.enum_limit)), options.enum_limit)
    fusion = [(s, g, leader) for s, (leader, g) in partition.items()]
    checks = witness_checks(S, rep, fusion, p, options.tolerance)
    return all(checks[name] for name in CHECK_NAMES) and checks == data["checks"]


def reverify(verdict, G, p, options=None):
    """
    Re-run the checks recorded in a verdict, without searching.

    Returns True iff all of them pass. Raises StaleCertificate when recorded
    elements are not members of the groups they claim to live in.
    """
    options = options or ClassifyOptions()
    if verdict.p != p or verdict.reduction[0]["order"] != G.order:
        return False
    if verdict.branch == ASPHERICAL and verdict.aspherical_kind == "trivial":
        return G.order % p != 0
    if not verdict.certified:
        return verdict.branch == UNKNOWN

    data = verdict.certificate
    seeds = _members(G, data["omega1_seeds"], "Omega_1 seed")
    if not all(_order(as_tuple(s)) == p for s in seeds):
        return False
    closure = normal_closure(G, seeds)
    G1 = G if closure.order == G.order else closure.group
    if G1.order != verdict.reduction[-1]["order"]:
        return False

    if verdict.branch == ASPHERICAL:
        return is_p_group(G1, p)
    if verdict.branch == UNKNOWN:
        return True

    S_gens = _members(G1, data["sylow_generators"], "Sylow")
    S = PermGroup(G1.degree, S_gens)
    if S.order != p_part(G1.order, p):
        return False
    omega_gens = _members(S, data["omega1_generators"], "Omega_1(S)")
    if not all(_order(as_tuple(x)) == p for x in omega_gens):
        return False
    omega = PermGroup(G1.degree, omega_gens)

    if verdict.branch == TORSION_FREE and verdict.criterion == "A":
        return omega.order == S.order
    if verdict.branch == TORSION_FREE:
        fused = []
        for triple in data.get("conjugators", []):
            s, g, t = _members(G1, triple, "conjugator")
            if not S.contains(s) or not omega.contains(t):
                return False
            if _conjugate(as_tuple(g), as_tuple(s)) != as_tuple(t):
                return False
            fused.append(s)
        return PermGroup(G1.degree, fused + omega_gens).order == S.order

    return _reverify_witness(G1, verdict.witness_dict, p, options)
