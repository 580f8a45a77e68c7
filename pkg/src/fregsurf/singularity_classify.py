"""klt/RDP tests, strong F-regularity verdicts and tame contraction plans."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .graph_core import (
    Chain,
    DualGraph,
    Other,
    SingularMatrix,
    Star,
    TwistedChain,
    TwistedStar,
    branch_index_bound,
    center_branches,
    classify_shape,
    discrepancies,
    intersection_matrix,
    is_negative_definite,
    natural_key,
    pair_degree,
)


class NotKltShape(ValueError):
    pass


class TamenessFails(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class Diagnosis(str, Enum):
    ALL_REDUCED = "AllReduced"
    CASE_A = "Case_a"
    CASE_B = "Case_b"
    CASE_C = "Case_c_Indeterminate"


class Outcome(str, Enum):
    SFR = "StronglyFRegular"
    NOT_SFR = "NotSFR"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class Reason:
    tag: str
    detail: str = ""

    def __str__(self):
        return f"{self.tag}({self.detail})" if self.detail else self.tag


@dataclass(frozen=True)
class SfrVerdict:
    outcome: Outcome
    reasons: tuple = ()
    conditions_checked: dict = field(default_factory=dict)
    shape: object = None


def char_threshold(star_type) -> int | None:
    """Largest excluded prime bound b (the verdict needs p > b), or None
    when the star type is not one of the klt types."""
    t = tuple(sorted(star_type))
    if len(t) != 3:
        return None
    if t[:2] == (2, 2) and t[2] >= 2:
        return 2
    if t in ((2, 3, 3), (2, 3, 4)):
        return 3
    if t == (2, 3, 5):
        return 5
    return None


def _klt_numerics(g: DualGraph) -> bool:
    if not is_negative_definite(intersection_matrix(g)):
        return False
    try:
        a = discrepancies(g)
    except SingularMatrix:
        return False
    return all(x > -1 for x in a)


def _listed(shape) -> bool:
    if isinstance(shape, (Chain, TwistedChain)):
        return True
    if isinstance(shape, (Star, TwistedStar)):
        return char_threshold(shape.type) is not None
    return False


def is_klt(g: DualGraph) -> bool:
    return _klt_numerics(g) and _listed(classify_shape(g))


def is_canonical(g: DualGraph) -> bool:
    return is_negative_definite(intersection_matrix(g)) and all(x >= 0 for x in discrepancies(g))


def is_rdp(g: DualGraph) -> bool:
    return all(v.self_int == -2 * v.degree for v in g.vertices)


def geom_reducedness_diagnosis(g: DualGraph, p: int) -> Diagnosis:
    shape = classify_shape(g)
    if p == 3 and isinstance(shape, TwistedStar) and shape.fold == 3:
        if any(v.degree == 3 and not v.separable for v in g.vertices):
            return Diagnosis.CASE_A
    twisted = isinstance(shape, TwistedChain) or (isinstance(shape, TwistedStar) and shape.fold == 2)
    if p == 2 and twisted:
        if any(v.degree == 2 and not v.separable for v in g.vertices):
            return Diagnosis.CASE_B
    if p == 2 and isinstance(shape, Chain) and shape.n == 1:
        return Diagnosis.CASE_C
    return Diagnosis.ALL_REDUCED


def _shape_clause(shape):
    if isinstance(shape, Chain):
        return "chain", None
    if isinstance(shape, TwistedChain):
        return "twisted-chain", None
    b = char_threshold(shape.type)
    kind = "star" if isinstance(shape, Star) else "twisted-star"
    t = shape.type
    name = f"{kind}(2,2,d)" if t[:2] == (2, 2) else f"{kind}{t}".replace(" ", "")
    return f"{name}:p>{b}", b


def sfr_verdict(g: DualGraph, p: int, assume_reduced: bool = False) -> SfrVerdict:
    shape = classify_shape(g)
    if isinstance(shape, Other):
        raise NotKltShape(f"graph is not a listed klt shape: {shape.reason}")
    reasons = []
    checked = {"shape": shape.label()}
    if not _klt_numerics(g):
        reasons.append(Reason("NotKlt", "discrepancy <= -1 or not negative definite"))
    if isinstance(shape, (Star, TwistedStar)) and char_threshold(shape.type) is None:
        reasons.append(Reason("ShapeNotAdmissible", f"type {shape.type}"))
        checked["shape_clause"] = "none"
    diag = geom_reducedness_diagnosis(g, p)
    if assume_reduced and diag is Diagnosis.CASE_C:
        diag = Diagnosis.ALL_REDUCED
        checked["override"] = "assume-reduced"
    checked["reducedness"] = diag.value
    if diag is Diagnosis.CASE_A:
        reasons.append(Reason("GeomNonReducedCase", "a"))
    elif diag is Diagnosis.CASE_B:
        reasons.append(Reason("GeomNonReducedCase", "b"))
    if "shape_clause" not in checked:
        clause, bound = _shape_clause(shape)
        checked["shape_clause"] = clause
        if bound is not None and p <= bound:
            reasons.append(Reason("CharTooSmall", f"p>{bound}"))
    if reasons:
        return SfrVerdict(Outcome.NOT_SFR, tuple(reasons), checked, shape)
    if diag is Diagnosis.CASE_C:
        return SfrVerdict(Outcome.INDETERMINATE, (Reason("GeomNonReducedCase", "c"),), checked, shape)
    return SfrVerdict(Outcome.SFR, (), checked, shape)


# -- tame decompositions ----------------------------------------------------------


@dataclass(frozen=True)
class TameStep:
    contracted: tuple
    boundary: dict  # vertex id -> coefficient of the boundary on the source pair
    nefness: dict  # vertex id -> (K + B) . E, required <= 0
    index_bound: int
    different: tuple = ()


@dataclass(frozen=True)
class TamePlan:
    p: int
    steps: tuple

    def final_index_bound(self) -> int:
        return self.steps[-1].index_bound


def _second_step_nefness(g: DualGraph, center: str, first_br, rest) -> dict:
    """(K + B) . E on the intermediate model for E among the surviving curves.

    Each surviving curve is a genus-zero curve with deg K_E = -2 d_E; each
    contracted chain leaves a different of coefficient (m-1)/m on the center
    at a point of degree equal to the attaching multiplicity, and B meets E
    along the other surviving curves.
    """
    nb = g.adjacency()
    out = {}
    for v in rest:
        val = Fraction(-2 * g.vertex(v).degree)
        if v == center:
            val += sum(b.point_degree * b.coefficient for b in first_br)
        val += sum(m for w, m in nb[v].items() if w in rest)
        out[v] = val
    return out


def tame_decomposition_plan(g: DualGraph, p: int) -> TamePlan:
    verdict = sfr_verdict(g, p)
    if verdict.outcome is not Outcome.SFR:
        raise PreconditionError(f"verdict at p={p} is {verdict.outcome.value}, not StronglyFRegular")
    shape = verdict.shape
    ids = g.ids
    ones = [1] * len(ids)
    if isinstance(shape, (Chain, TwistedChain)):
        nef = {v: pair_degree(g, ones, v) for v in ids}
        steps = (TameStep(tuple(ids), {v: Fraction(1) for v in ids}, nef, 1),)
    else:
        center = shape.center
        branches = center_branches(g, center)
        if shape.type[:2] == (2, 2):
            # contract the two short branches first; on a twisted star they
            # form the single folded branch
            short = [b for b in branches if b.determinant == 2]
            folded = [b for b in short if b.point_degree > 1]
            first_br = folded[:1] if folded else short[:2]
        else:
            first_br = branches
        first = sorted((v for b in first_br for v in b.ids), key=natural_key)
        rest = [v for v in ids if v not in first]
        nef1 = {v: pair_degree(g, ones, v) for v in first}
        diff = tuple(b.coefficient for b in first_br)
        step1 = TameStep(tuple(first), {v: Fraction(1) for v in ids}, nef1, 1)
        step2 = TameStep(
            tuple(rest),
            {v: Fraction(1) for v in rest},
            _second_step_nefness(g, center, first_br, rest),
            branch_index_bound(first_br),
            diff,
        )
        steps = (step1, step2)
    for st in steps:
        if st.index_bound % p == 0:
            raise TamenessFails(f"p={p} divides the index bound {st.index_bound}")
        bad = [v for v, x in st.nefness.items() if x > 0]
        if bad:
            raise TamenessFails(f"(K+B).E > 0 on {bad}")
    return TamePlan(p, steps)
