import math
from fractions import Fraction

import pytest

from core.errors import DomainError
from core.params import (
    CLAUSE_COINCIDE, CLAUSE_P33_I, CLAUSE_P33_II, CLAUSE_P33_III, CLAUSE_P33_IV, CLAUSE_P33_V,
    CLAUSE_P35_I, CLAUSE_P35_II, CLAUSE_P35_III, CLAUSE_P35_IV, CLAUSE_T31_FINITE_P,
    CLAUSE_T31_INFINITE_P, CLAUSE_T31_POSITIVE, CLAUSE_T34_CRITICAL, CLAUSE_T34_CRITICAL_FAILS,
    CLAUSE_T34_POSITIVE, CLAUSE_T34_ZERO, EmbeddingDirection, EmbeddingStatus, ExtendedExponent,
    OptimalityDirection, SpaceFamily, Verdict, classical_embedding, diagram_disagreements,
    make_params, optimal_space, oracle_table, region_diagram, verdict,
)

S2B = EmbeddingDirection.MIXED_INTO_ISO
B2S = EmbeddingDirection.ISO_INTO_MIXED
E = EmbeddingStatus

GOLDEN = [
    # S^t_{p,q}B into B^t_{p,q}
    (S2B, 1, 2, 2, 2, E.EMBEDS, CLAUSE_T31_POSITIVE),
    (S2B, "1/2", "1/2", "inf", 2, E.EMBEDS, CLAUSE_T31_POSITIVE),
    (S2B, 0, 3, 2, 2, E.EMBEDS, CLAUSE_T31_FINITE_P),
    (S2B, 0, "3/2", "3/2", 2, E.EMBEDS, CLAUSE_T31_FINITE_P),
    (S2B, 0, "3/2", 2, 2, E.REVERSE, CLAUSE_T34_ZERO),
    (S2B, 0, 2, 4, 2, E.REVERSE, CLAUSE_T34_ZERO),
    (S2B, 0, 4, 3, 2, E.NOT_COMPARABLE, CLAUSE_P33_II),
    (S2B, 0, "inf", 1, 2, E.EMBEDS, CLAUSE_T31_INFINITE_P),
    (S2B, 0, "inf", 2, 2, E.NOT_COMPARABLE, CLAUSE_P33_IV),
    (S2B, 0, "inf", "inf", 3, E.REVERSE, CLAUSE_T34_ZERO),
    (S2B, 0, 1, 1, 2, E.EMBEDS, CLAUSE_T31_FINITE_P),
    (S2B, 0, 1, 2, 2, E.NOT_COMPARABLE, CLAUSE_P33_III),
    (S2B, 0, "1/2", 1, 2, E.NOT_COMPARABLE, CLAUSE_P35_IV),
    (S2B, -1, 2, 2, 2, E.REVERSE, CLAUSE_P33_I),
    (S2B, "-1/2", "1/2", 2, 2, E.NOT_COMPARABLE, CLAUSE_P33_V),
    (S2B, -1, 2, 2, 1, E.EMBEDS, CLAUSE_COINCIDE),
    # B^{td}_{p,q} into S^t_{p,q}B
    (B2S, 1, 2, 2, 2, E.EMBEDS, CLAUSE_T34_POSITIVE),
    (B2S, 0, 3, 3, 2, E.EMBEDS, CLAUSE_T34_ZERO),
    (B2S, 0, 3, 2, 2, E.REVERSE, CLAUSE_T31_FINITE_P),
    (B2S, 0, "3/2", 1, 2, E.REVERSE, CLAUSE_T31_FINITE_P),
    (B2S, 1, "1/2", "inf", 2, E.EMBEDS, CLAUSE_T34_CRITICAL),
    (B2S, 1, "1/2", 2, 2, E.FAILS, CLAUSE_T34_CRITICAL_FAILS),
    (B2S, "1/2", "1/2", 2, 2, E.NOT_COMPARABLE, CLAUSE_P35_II),
    (B2S, 2, "1/2", 1, 2, E.EMBEDS, CLAUSE_T34_POSITIVE),
    (B2S, -1, 2, 2, 2, E.REVERSE, CLAUSE_P35_I),
    (B2S, 0, "1/2", "1/2", 2, E.REVERSE, CLAUSE_P35_III),
    (B2S, 0, "1/2", 1, 2, E.NOT_COMPARABLE, CLAUSE_P35_IV),
    (B2S, 0, 1, "inf", 2, E.EMBEDS, CLAUSE_T34_CRITICAL),
    (B2S, 0, 4, 3, 2, E.NOT_COMPARABLE, CLAUSE_P33_II),
    (B2S, 0, "inf", 1, 2, E.REVERSE, CLAUSE_T31_INFINITE_P),
    (B2S, 0, 1, 1, 2, E.REVERSE, CLAUSE_T31_FINITE_P),
]


@pytest.mark.parametrize("direction,t,p,q,d,status,clause", GOLDEN)
def test_golden_verdicts(direction, t, p, q, d, status, clause):
    result = verdict(make_params(t, p, q, d), direction)
    assert result.status is status
    assert result.clause == clause


def test_verdict_serializes_like_the_cli():
    result = verdict(make_params(0, 3, 2, 2), S2B)
    assert result.to_dict() == {"status": "Embeds", "clause": "Thm 3.1: q ≤ min(p,2)"}


@pytest.mark.parametrize("t,p,q,d", [
    (0, 0, 1, 2),
    (0, -1, 1, 2),
    (0, 2, 0, 2),
    (0, 2, 1, 0),
    ("inf", 2, 1, 2),
    (float("nan"), 2, 1, 2),
    (0, "abc", 1, 2),
])
def test_invalid_parameters_are_rejected(t, p, q, d):
    with pytest.raises(DomainError):
        make_params(t, p, q, d)


def test_domain_error_is_a_value_error():
    with pytest.raises(ValueError):
        make_params(0, 0, 1, 2)


def test_rational_inputs_stay_exact():
    pt = make_params("1/3", "3/2", "inf", 2)
    assert pt.t == Fraction(1, 3)
    assert pt.inv_p == Fraction(2, 3)
    assert pt.q.is_infinite
    assert str(pt.q) == "inf"


def test_float_critical_line_uses_tolerance():
    # 1/p − 1 computed in floats lands within rational_tolerance of t
    pt = make_params(1.0 / 3.0 * 3.0 - 0.5, 1.0 / 1.5, "inf", 2)
    assert verdict(pt, B2S).clause == CLAUSE_T34_CRITICAL


def test_extended_exponent_reciprocal():
    assert ExtendedExponent.parse("inf").reciprocal() == 0
    assert ExtendedExponent.parse(4).reciprocal() == Fraction(1, 4)
    assert ExtendedExponent.parse(0.5).reciprocal() == 2.0


def test_verdict_requires_a_clause():
    with pytest.raises(DomainError):
        Verdict(EmbeddingStatus.EMBEDS)
    assert Verdict(EmbeddingStatus.NOT_COVERED).to_dict() == {"status": "NotCoveredByPaper", "clause": ""}


def test_oracle_table_sweeps_the_product():
    table = oracle_table(S2B, 2, [-1, 0, 1], [1, 2, "inf"], [1, 2])
    assert len(table) == 18
    assert list(table.columns) == ["t", "p", "q", "d", "status", "clause"]
    assert set(table.loc[table["t"] > 0, "status"]) == {"Embeds"}
    assert math.isinf(table["p"].max())


# ============================================================================
# CLASSICAL EMBEDDINGS AND OPTIMAL SPACES
# ============================================================================

def test_classical_embedding_iso():
    src = make_params(2, 1, 2, 2)
    assert classical_embedding(src, make_params(1, 2, 2, 2), SpaceFamily.ISO)
    assert not classical_embedding(src, make_params(1, 2, 1, 2), SpaceFamily.ISO)
    assert classical_embedding(src, make_params("1/2", 2, 1, 2), SpaceFamily.ISO)
    assert not classical_embedding(make_params(1, 2, 2, 2), src, SpaceFamily.ISO)


def test_classical_embedding_mixed_uses_one_over_p():
    # mixed offset is 1/p regardless of d
    src = make_params(1, 1, 2, 3)
    assert classical_embedding(src, make_params("1/2", 2, 2, 3), SpaceFamily.MIXED)
    assert not classical_embedding(src, make_params("1/2", 2, 2, 3), SpaceFamily.ISO)


def test_classical_embedding_dimension_mismatch():
    with pytest.raises(DomainError):
        classical_embedding(make_params(1, 2, 2, 2), make_params(1, 2, 2, 3), SpaceFamily.ISO)


def test_optimal_spaces():
    target = make_params(1, 2, 2, 2)
    assert optimal_space(target, OptimalityDirection.MIXED_INTO_ISO) == target
    assert optimal_space(target, OptimalityDirection.ISO_INTO_MIXED_SOURCE).t == 2
    assert optimal_space(target, OptimalityDirection.ISO_INTO_MIXED_TARGET).t == Fraction(1, 2)


@pytest.mark.parametrize("t", [Fraction(1, 2), Fraction(1), Fraction(3)])
def test_optimal_spaces_are_closed(t):
    target = make_params(t, 2, 2, 2)
    mixed = optimal_space(target, OptimalityDirection.MIXED_INTO_ISO)
    assert verdict(mixed, S2B).status is EmbeddingStatus.EMBEDS

    iso = optimal_space(target, OptimalityDirection.ISO_INTO_MIXED_SOURCE)
    assert iso.t == target.t * target.d
    assert verdict(target, B2S).status is EmbeddingStatus.EMBEDS

    smallest = optimal_space(target, OptimalityDirection.ISO_INTO_MIXED_TARGET)
    assert classical_embedding(smallest, smallest, SpaceFamily.MIXED)
    bigger = make_params(smallest.t - Fraction(1, 4), 2, 2, 2)
    assert classical_embedding(smallest, bigger, SpaceFamily.MIXED)
    assert not classical_embedding(bigger, smallest, SpaceFamily.MIXED)


# ============================================================================
# REGION DIAGRAMS
# ============================================================================

@pytest.mark.parametrize("figure", [S2B, B2S])
@pytest.mark.parametrize("d", [2, 3])
def test_region_diagram_agrees_with_oracle(figure, d):
    diagram = region_diagram(figure, d, 2.0)
    assert diagram_disagreements(diagram, per_axis=50) == []


def test_region_diagram_locates_interiors():
    diagram = region_diagram(B2S, 2, 2.0)
    assert diagram.locate(0.5, 1.0) is EmbeddingStatus.EMBEDS
    assert diagram.locate(0.5, -1.0) is EmbeddingStatus.REVERSE
    assert diagram.locate(1.8, 0.3) is EmbeddingStatus.NOT_COMPARABLE
    assert diagram.locate(0.5, 0.0) is None


def test_region_diagram_small_window_has_no_incomparable_region():
    diagram = region_diagram(S2B, 2, 0.5)
    labels = {r.label for r in diagram.regions}
    assert labels == {EmbeddingStatus.EMBEDS, EmbeddingStatus.REVERSE}
    assert all(r.unbounded for r in diagram.regions)


def test_region_diagram_rejects_bad_input():
    with pytest.raises(DomainError):
        region_diagram(S2B, 1, 2.0)
    with pytest.raises(DomainError):
        region_diagram(S2B, 2, 0.0)


def test_region_diagram_to_dict():
    payload = region_diagram(S2B, 2, 2.0).to_dict()
    assert payload["figure"] == "MixedIntoIso"
    assert len(payload["regions"]) == 3
    assert payload["critical_segments"][0]["emphasis"] is True


# ============================================================================
# ORACLE PROPERTIES
# ============================================================================

T_GRID = [-1, "-1/2", 0, "1/2", 1, 2]
P_GRID = ["1/2", 1, "3/2", 2, 3, "inf"]
Q_GRID = ["1/2", 1, "3/2", 2, 3, "inf"]


def _points(d=2, t_values=T_GRID):
    for t in t_values:
        for p in P_GRID:
            for q in Q_GRID:
                yield make_params(t, p, q, d)


@pytest.mark.parametrize("direction", [S2B, B2S])
def test_every_point_gets_exactly_one_cited_status(direction):
    for pt in _points():
        first, second = verdict(pt, direction), verdict(pt, direction)
        assert first == second
        assert first.status in set(EmbeddingStatus)
        assert first.status is EmbeddingStatus.NOT_COVERED or first.clause


def test_both_directions_agree_at_zero_smoothness():
    # at t = 0 both directions compare S^0_{p,q}B with B^0_{p,q}
    for pt in _points(t_values=[0]):
        forward, backward = verdict(pt, S2B).status, verdict(pt, B2S).status
        assert (forward is E.NOT_COMPARABLE) == (backward is E.NOT_COMPARABLE), pt
        if forward is E.REVERSE:
            assert backward is E.EMBEDS, pt
        if backward is E.REVERSE:
            assert forward is E.EMBEDS, pt


def _q_index(pt):
    return [ExtendedExponent.parse(q).value for q in Q_GRID].index(pt.q.value)


@pytest.mark.parametrize("d", [2, 3])
def test_mixed_into_iso_is_downward_closed_in_q(d):
    for pt in _points(d):
        if verdict(pt, S2B).status is not E.EMBEDS:
            continue
        for q in Q_GRID[:_q_index(pt)]:
            smaller = make_params(pt.t, pt.p.value, q, d)
            assert verdict(smaller, S2B).status is E.EMBEDS, (pt, q)


@pytest.mark.parametrize("d", [2, 3])
def test_iso_into_mixed_at_zero_is_upward_closed_in_q(d):
    for pt in _points(d, t_values=[0]):
        if verdict(pt, B2S).status is not E.EMBEDS:
            continue
        for q in Q_GRID[_q_index(pt) + 1:]:
            larger = make_params(0, pt.p.value, q, d)
            assert verdict(larger, B2S).status is E.EMBEDS, (pt, q)


def _conjugate(r):
    return "inf" if r == 1 else 1 / (1 - 1 / r)


@pytest.mark.parametrize("p", [Fraction(3, 2), Fraction(2), Fraction(3), Fraction(4)])
@pytest.mark.parametrize("q", [Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3)])
def test_conjugate_exponents_carry_the_zero_smoothness_embedding(p, q):
    if verdict(make_params(0, p, q, 2), S2B).status is not E.EMBEDS:
        return
    dual = make_params(0, _conjugate(p), _conjugate(q), 2)
    assert verdict(dual, B2S).status is E.EMBEDS


def test_duality_table_has_embedding_rows():
    rows = [(p, q) for p in (Fraction(3, 2), 2, 3, 4) for q in (1, Fraction(3, 2), 2, 3)
            if verdict(make_params(0, p, q, 2), S2B).status is E.EMBEDS]
    assert (2, 2) in rows and (Fraction(3, 2), Fraction(3, 2)) in rows
    assert (3, 3) not in rows


# ============================================================================
# OPTIMALITY CLOSURE
# ============================================================================

CANDIDATE_T = [Fraction(k, 4) for k in (-2, 0, 1, 2, 3, 4, 6, 8, 10, 12)]
CANDIDATE_INV_P = [Fraction(k, 4) for k in (0, 1, 2, 3, 4, 5, 6, 7, 8, 10)]
CANDIDATE_INV_Q = [Fraction(k, 2) for k in range(5)]
TARGETS = [(1, 2, 2, 2), ("1/2", 4, 1, 2), ("3/2", "4/3", 2, 3), (2, 1, "inf", 2)]


def _exponent(inverse):
    return "inf" if inverse == 0 else 1 / inverse


def _candidates(d):
    for t in CANDIDATE_T:
        for inv_p in CANDIDATE_INV_P:
            for inv_q in CANDIDATE_INV_Q:
                yield make_params(t, _exponent(inv_p), _exponent(inv_q), d)


@pytest.mark.parametrize("target", TARGETS)
def test_mixed_spaces_inside_an_iso_space_sit_in_the_optimal_one(target):
    target = make_params(*target)
    optimal = optimal_space(target, OptimalityDirection.MIXED_INTO_ISO)
    admissible = 0
    for c in _candidates(target.d):
        if verdict(c, S2B).status is E.EMBEDS and classical_embedding(c, target, SpaceFamily.ISO):
            admissible += 1
            assert classical_embedding(c, optimal, SpaceFamily.MIXED), c
    assert admissible > 0


@pytest.mark.parametrize("target", TARGETS)
def test_iso_spaces_inside_a_mixed_space_sit_in_the_optimal_one(target):
    target = make_params(*target)
    optimal = optimal_space(target, OptimalityDirection.ISO_INTO_MIXED_SOURCE)
    admissible = 0
    for c in _candidates(target.d):
        # B^{c.t·d}_{c.p,c.q} ↪ S^{c.t}_{c.p,c.q}B ↪ target
        if verdict(c, B2S).status is E.EMBEDS and classical_embedding(c, target, SpaceFamily.MIXED):
            admissible += 1
            iso = make_params(c.t * c.d, c.p.value, c.q.value, c.d)
            assert classical_embedding(iso, optimal, SpaceFamily.ISO), c
    assert admissible > 0


@pytest.mark.parametrize("source", TARGETS)
def test_mixed_spaces_containing_an_iso_space_contain_the_optimal_one(source):
    source = make_params(*source)
    optimal = optimal_space(source, OptimalityDirection.ISO_INTO_MIXED_TARGET)
    admissible = 0
    for c in _candidates(source.d):
        # source ↪ B^{c.t·d}_{c.p,c.q} ↪ S^{c.t}_{c.p,c.q}B
        iso = make_params(c.t * c.d, c.p.value, c.q.value, c.d)
        if classical_embedding(source, iso, SpaceFamily.ISO) and verdict(c, B2S).status is E.EMBEDS:
            admissible += 1
            assert classical_embedding(optimal, c, SpaceFamily.MIXED), c
    assert admissible > 0
