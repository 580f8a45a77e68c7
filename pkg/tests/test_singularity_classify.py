from fractions import Fraction

import pytest

from fregsurf.corpus import A, E8, chain, rdp_star, sfr_corpus, star, triple_folding, twisted_chain, twisted_star
from fregsurf.graph_core import DualGraph
from fregsurf.singularity_classify import (
    Diagnosis,
    NotKltShape,
    Outcome,
    PreconditionError,
    char_threshold,
    geom_reducedness_diagnosis,
    is_canonical,
    is_klt,
    is_rdp,
    sfr_verdict,
    tame_decomposition_plan,
)

PRIMES = [2, 3, 5, 7, 11, 13]


def test_thresholds():
    assert char_threshold((2, 2, 7)) == 2
    assert char_threshold((3, 2, 3)) == 3
    assert char_threshold((2, 3, 4)) == 3
    assert char_threshold((2, 3, 5)) == 5
    assert char_threshold((2, 3, 6)) is None
    assert char_threshold((3, 3, 3)) is None


def test_klt_canonical_rdp():
    assert is_klt(E8()) and is_canonical(E8()) and is_rdp(E8())
    g = chain([-3])
    assert is_klt(g) and not is_canonical(g) and not is_rdp(g)
    # (2,3,6) star of (-2)-curves is not negative definite
    assert not is_klt(rdp_star((2, 3, 6)))


@pytest.mark.parametrize("p", PRIMES)
def test_E8_verdicts(p):
    v = sfr_verdict(E8(), p)
    if p > 5:
        assert v.outcome is Outcome.SFR and v.reasons == ()
    else:
        assert v.outcome is Outcome.NOT_SFR
        assert [str(r) for r in v.reasons] == ["CharTooSmall(p>5)"]
    assert v.conditions_checked["shape_clause"] == "star(2,3,5):p>5"


def test_chains_are_sfr_in_every_characteristic():
    for n in range(2, 7):
        for p in PRIMES:
            assert sfr_verdict(A(n), p).outcome is Outcome.SFR


def test_case_c_single_curve_in_char_two():
    v = sfr_verdict(A(1), 2)
    assert v.outcome is Outcome.INDETERMINATE
    assert [str(r) for r in v.reasons] == ["GeomNonReducedCase(c)"]
    assert sfr_verdict(A(1), 2, assume_reduced=True).outcome is Outcome.SFR
    assert sfr_verdict(A(1), 3).outcome is Outcome.SFR


def test_case_a_triple_folding():
    g = triple_folding(sep=False)
    assert geom_reducedness_diagnosis(g, 3) is Diagnosis.CASE_A
    v = sfr_verdict(g, 3)
    assert v.outcome is Outcome.NOT_SFR and "GeomNonReducedCase(a)" in [str(r) for r in v.reasons]
    assert sfr_verdict(g, 5).outcome is Outcome.SFR
    assert geom_reducedness_diagnosis(triple_folding(), 3) is Diagnosis.ALL_REDUCED


def test_case_b_inseparable_twisted_shapes():
    g = twisted_chain([-2, -4, -4], seps=[True, False, True])
    assert geom_reducedness_diagnosis(g, 2) is Diagnosis.CASE_B
    assert sfr_verdict(g, 2).outcome is Outcome.NOT_SFR
    assert sfr_verdict(g, 3).outcome is Outcome.SFR
    h = twisted_star([-4], -2, [-2], folded_sep=False)
    assert geom_reducedness_diagnosis(h, 2) is Diagnosis.CASE_B
    reasons = [str(r) for r in sfr_verdict(h, 2).reasons]
    assert reasons == ["GeomNonReducedCase(b)", "CharTooSmall(p>2)"]


def test_non_klt_inputs():
    cyc = DualGraph.build([("a", -3), ("b", -3), ("c", -3)], [("a", "b"), ("b", "c"), ("a", "c")])
    with pytest.raises(NotKltShape):
        sfr_verdict(cyc, 7)
    v = sfr_verdict(rdp_star((2, 3, 6)), 7)
    assert v.outcome is Outcome.NOT_SFR
    assert {r.tag for r in v.reasons} == {"NotKlt", "ShapeNotAdmissible"}


def test_E8_tame_plan():
    plan = tame_decomposition_plan(E8(), 7)
    s1, s2 = plan.steps
    assert s1.contracted == ("x1", "y1", "y2", "z1", "z2", "z3", "z4")
    assert s1.index_bound == 1
    assert s2.contracted == ("C",)
    assert s2.index_bound == 30
    assert s2.different == (Fraction(1, 2), Fraction(2, 3), Fraction(4, 5))
    # -2 + 1/2 + 2/3 + 4/5
    assert s2.nefness == {"C": Fraction(-1, 30)}


def test_D_type_plan_contracts_the_short_branches_first():
    plan = tame_decomposition_plan(rdp_star((2, 2, 4)), 3)
    s1, s2 = plan.steps
    assert s1.contracted == ("x1", "y1")
    assert s2.index_bound == 2 and s2.different == (Fraction(1, 2), Fraction(1, 2))
    # center meets z1 on the second model: -2 + 1/2 + 1/2 + 1
    assert s2.nefness["C"] == 0


def test_tame_plan_requires_sfr():
    with pytest.raises(PreconditionError):
        tame_decomposition_plan(E8(), 5)
    with pytest.raises(PreconditionError):
        tame_decomposition_plan(A(1), 2)


def test_tame_plans_exist_across_the_corpus():
    for seed in range(3):
        for e in sfr_corpus(seed):
            for p in PRIMES:
                if sfr_verdict(e.graph, p).outcome is not Outcome.SFR:
                    continue
                plan = tame_decomposition_plan(e.graph, p)
                contracted = sorted(v for st in plan.steps for v in st.contracted)
                assert contracted == sorted(e.graph.ids)
                for st in plan.steps:
                    assert st.index_bound % p != 0
                    assert all(x <= 0 for x in st.nefness.values())
