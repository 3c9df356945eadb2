"""
Witness experiments
Registry of witness cases, witness runs across ℓ, growth fits and reports
"""

import logging
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import singledispatch
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from core.config import get_settings
from core.errors import DomainError, GrowthFitError
from core.examples import (
    ExampleFamily, ExampleSpec, default_schedule, family_labels, make_example, witness_level,
)
from core.norms import QuasiNormResult, besov_norm, label_level, partition_for
from core.params import (
    CLAUSE_P33_II, CLAUSE_P33_III, CLAUSE_P33_IV, CLAUSE_P33_V, CLAUSE_P35_II, CLAUSE_P35_IV,
    CLAUSE_T31_FINITE_P, CLAUSE_T31_INFINITE_P, CLAUSE_T31_POSITIVE, CLAUSE_T34_CRITICAL_FAILS,
    CLAUSE_T34_POSITIVE, EmbeddingDirection, EmbeddingStatus, OptimalityDirection, ParameterPoint,
    RegionDiagram, SpaceFamily, Verdict, classical_embedding, make_params, optimal_space, verdict,
)
from core.partition import FrequencyGrid, Label
from core.signal import ladder_meta, validate_schedule
from core.utils import safe_divide, write_csv, write_json

logger = logging.getLogger(__name__)

WITNESS_COLUMNS = ["case_id", "ell", "iso_norm", "mixed_norm", "ratio", "converged"]

CLAUSE_T32 = "Thm 3.2: optimal S-space inside B^t_{p,q}"
CLAUSE_T36 = "Thm 3.6: optimal B-space inside S^t_{p,q}B"
CLAUSE_T37 = "Thm 3.7: optimal S-space containing B^t_{p,q}"

ORACLE_ONLY = "no desk-scale witness (interpolation/duality proof)"


class GrowthModel(str, Enum):
    POWER = "PowerInEll"
    EXPONENTIAL = "ExponentialBase2InEll"


class RatioOrientation(str, Enum):
    ISO_OVER_MIXED = "iso/mixed"
    MIXED_OVER_ISO = "mixed/iso"


class Expectation(str, Enum):
    GROWS = "grows"
    BOUNDED = "bounded"


class ReportFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


# ============================================================================
# COEFFICIENT RULES
# ============================================================================

RULE_NAMES = ("delta_at_ell", "delta_on_axis", "all_ones", "geometric", "geometric_over_j")
_RULE_PATTERN = re.compile(r"^\s*(\w+)\s*(?:\(\s*([^)]*)\s*\))?\s*$")


@dataclass(frozen=True)
class CoeffRule:
    """
    Named coefficient choice of the witness constructions

    geometric(r) sets a = 2^{−r·level}, geometric_over_j(r) divides that by
    the level; the level of a label is j, or |k̄| for tensor labels.
    """

    name: str
    rate: float = 0.0

    def __post_init__(self):
        if self.name not in RULE_NAMES:
            raise DomainError(f"unknown coefficient rule {self.name!r}")
        object.__setattr__(self, "rate", float(self.rate))

    @property
    def first_level(self) -> int:
        return 0 if self.name == "delta_on_axis" else 1

    @classmethod
    def parse(cls, text: str) -> "CoeffRule":
        match = _RULE_PATTERN.match(text)
        if not match:
            raise DomainError(f"cannot parse coefficient rule {text!r}")
        name, rate = match.groups()
        try:
            return cls(name, float(Fraction(rate)) if rate else 0.0)
        except ValueError as e:
            raise DomainError(f"invalid rate in {text!r}") from e

    def coefficient(self, label: Label, ell: int) -> float:
        level = label_level(label)
        if self.name == "delta_at_ell":
            diagonal = label == ell if isinstance(label, int) else all(k == ell for k in label)
            return 1.0 if diagonal else 0.0
        if self.name == "delta_on_axis":
            return 1.0 if label == 0 else 0.0
        if self.name == "all_ones":
            return 1.0
        value = 2.0 ** (-self.rate * level)
        return value / level if self.name == "geometric_over_j" else value

    def coefficients(self, labels: Sequence[Label], ell: int) -> Tuple[float, ...]:
        return tuple(self.coefficient(label, ell) for label in labels)

    def __str__(self) -> str:
        if self.name in ("geometric", "geometric_over_j"):
            return f"{self.name}({self.rate:g})"
        return self.name


# ============================================================================
# WITNESS CASES
# ============================================================================

Direction = Union[EmbeddingDirection, OptimalityDirection]


@dataclass(frozen=True)
class WitnessCase:
    """
    A named experiment: one family, one coefficient rule, two parameter points

    The isotropic quasi-norm is evaluated at ``iso_point`` and the mixed one
    at ``mixed_point``. For embedding directions ``mixed_point`` is the point
    the oracle decides; for optimality directions the points are the target
    (or source) space and the candidate.
    """

    case_id: str
    clause: str
    direction: Direction
    family: ExampleFamily
    rule: CoeffRule
    mixed_point: ParameterPoint
    iso_point: ParameterPoint
    ratio: RatioOrientation
    ell_range: Tuple[int, int]
    model: GrowthModel
    expectation: Expectation = Expectation.GROWS
    expected_exponent: Optional[float] = None
    exponent_tolerance: float = 0.1
    residual_cap: float = 0.5
    # multiplies n on every rung of the default ladder
    oversampling: int = 1
    # replaces the configured witness_tolerance for this case
    convergence_tolerance: Optional[float] = None

    @property
    def d(self) -> int:
        return self.mixed_point.d

    @property
    def params(self) -> ParameterPoint:
        return self.mixed_point

    @property
    def ells(self) -> List[int]:
        lo, hi = self.ell_range
        return list(range(lo, hi + 1))

    def example_spec(self, ell: int) -> ExampleSpec:
        labels = family_labels(self.family, ell, self.d, self.rule.first_level)
        return ExampleSpec(self.family, ell, self.rule.coefficients(labels, ell),
                           d=self.d, first_level=self.rule.first_level)

    def with_range(self, lmin: int, lmax: int) -> "WitnessCase":
        if lmin < 1 or lmax < lmin:
            raise DomainError(f"invalid ℓ range [{lmin}, {lmax}]")
        return replace(self, ell_range=(lmin, lmax))

    def ratio_of(self, iso_norm: float, mixed_norm: float) -> float:
        if self.ratio is RatioOrientation.ISO_OVER_MIXED:
            return safe_divide(iso_norm, mixed_norm)
        return safe_divide(mixed_norm, iso_norm)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "case_id": self.case_id,
            "clause": self.clause,
            "direction": self.direction.value,
            "family": self.family.value,
            "rule": str(self.rule),
            "mixed_point": self.mixed_point.to_dict(),
            "iso_point": self.iso_point.to_dict(),
            "ratio": self.ratio.value,
            "ell_range": list(self.ell_range),
            "model": self.model.value,
            "expectation": self.expectation.value,
            "oversampling": self.oversampling,
        }


def _point(t: Any, p: Any, q: Any, d: int = 2) -> ParameterPoint:
    return make_params(t, p, q, d)


def _embedding_case(case_id, clause, direction, family, rule, t, p, q, ratio, ell_range,
                    model, **kwargs) -> WitnessCase:
    mixed = _point(t, p, q)
    iso_t = mixed.t * mixed.d if direction is EmbeddingDirection.ISO_INTO_MIXED else mixed.t
    iso = ParameterPoint(iso_t, mixed.p, mixed.q, mixed.d)
    return WitnessCase(case_id, clause, direction, family, rule, mixed, iso, ratio,
                       ell_range, model, **kwargs)


def _build_registry() -> Dict[str, WitnessCase]:
    S2B = EmbeddingDirection.MIXED_INTO_ISO
    B2S = EmbeddingDirection.ISO_INTO_MIXED
    ISO_MIXED = RatioOrientation.ISO_OVER_MIXED
    MIXED_ISO = RatioOrientation.MIXED_OVER_ISO
    POWER, EXP = GrowthModel.POWER, GrowthModel.EXPONENTIAL
    E = ExampleFamily

    cases = [
        _embedding_case("T31-q-gt-2", CLAUSE_T31_FINITE_P, S2B, E.E1, CoeffRule("all_ones"),
                        0, 2, 4, ISO_MIXED, (4, 8), POWER,
                        expected_exponent=0.25, exponent_tolerance=0.1),
        _embedding_case("T31-q-gt-p", CLAUSE_T31_FINITE_P, S2B, E.E3,
                        CoeffRule("geometric", Fraction(1, 5)),
                        0, "5/4", 2, ISO_MIXED, (1, 5), POWER,
                        expected_exponent=0.3, exponent_tolerance=0.15,
                        oversampling=2, convergence_tolerance=5e-3),
        _embedding_case("T31-pinf-q-gt-1", CLAUSE_T31_INFINITE_P, S2B, E.E2, CoeffRule("all_ones"),
                        0, "inf", 2, ISO_MIXED, (4, 10), POWER,
                        expected_exponent=0.5, exponent_tolerance=0.02),
        _embedding_case("T31-t-neg", CLAUSE_T31_POSITIVE, S2B, E.E1, CoeffRule("delta_at_ell"),
                        -1, 2, 2, ISO_MIXED, (3, 7), EXP,
                        expected_exponent=1.0, exponent_tolerance=0.05),
        _embedding_case("T34-t-neg", CLAUSE_T34_POSITIVE, B2S, E.E1, CoeffRule("delta_on_axis"),
                        -1, 2, 2, MIXED_ISO, (3, 7), EXP,
                        expected_exponent=1.0, exponent_tolerance=0.05),
        _embedding_case("P33v", CLAUSE_P33_V, S2B, E.E1, CoeffRule("geometric", Fraction(-1, 2)),
                        "-1/2", "1/2", 2, ISO_MIXED, (3, 8), EXP),
        _embedding_case("P35ii", CLAUSE_P35_II, B2S, E.E1, CoeffRule("delta_on_axis"),
                        "1/2", "1/2", 2, ISO_MIXED, (3, 8), EXP,
                        expected_exponent=0.5, exponent_tolerance=0.05),
        _embedding_case("ctl-s2b", CLAUSE_T31_FINITE_P, S2B, E.E1, CoeffRule("all_ones"),
                        0, 2, 2, ISO_MIXED, (3, 7), POWER,
                        expectation=Expectation.BOUNDED, expected_exponent=0.0,
                        exponent_tolerance=0.02),
        _embedding_case("ctl-b2s", CLAUSE_T34_POSITIVE, B2S, E.E1, CoeffRule("delta_on_axis"),
                        1, 2, 2, MIXED_ISO, (3, 7), EXP,
                        expectation=Expectation.BOUNDED, expected_exponent=-1.0,
                        exponent_tolerance=0.05),
        WitnessCase("opt-T32", CLAUSE_T32, OptimalityDirection.MIXED_INTO_ISO, E.E4,
                    CoeffRule("delta_at_ell"), mixed_point=_point("1/2", 2, 2),
                    iso_point=_point(1, 2, 2), ratio=ISO_MIXED, ell_range=(2, 6), model=EXP,
                    expected_exponent=0.5, exponent_tolerance=0.05),
        WitnessCase("opt-T32-eq", CLAUSE_T32, OptimalityDirection.MIXED_INTO_ISO, E.E4,
                    CoeffRule("geometric", Fraction(3, 2)), mixed_point=_point(1, 2, 4),
                    iso_point=_point(1, 2, 2), ratio=ISO_MIXED, ell_range=(2, 7), model=POWER),
        WitnessCase("opt-T36", CLAUSE_T36, OptimalityDirection.ISO_INTO_MIXED_SOURCE, E.E5,
                    CoeffRule("delta_at_ell"), mixed_point=_point("1/2", 2, 2),
                    iso_point=_point("1/2", 2, 2), ratio=MIXED_ISO, ell_range=(2, 6), model=EXP,
                    expected_exponent=0.5, exponent_tolerance=0.05),
        WitnessCase("opt-T36-eq", CLAUSE_T36, OptimalityDirection.ISO_INTO_MIXED_SOURCE, E.E5,
                    CoeffRule("geometric", 2), mixed_point=_point("1/2", 2, 2),
                    iso_point=_point(1, 2, 4), ratio=MIXED_ISO, ell_range=(2, 7), model=POWER),
        WitnessCase("opt-T37", CLAUSE_T37, OptimalityDirection.ISO_INTO_MIXED_TARGET, E.E5,
                    CoeffRule("delta_at_ell"), mixed_point=_point(1, 2, 2),
                    iso_point=_point(1, 2, 2), ratio=MIXED_ISO, ell_range=(2, 6), model=EXP,
                    expected_exponent=1.0, exponent_tolerance=0.05),
        WitnessCase("opt-T37-eq", CLAUSE_T37, OptimalityDirection.ISO_INTO_MIXED_TARGET, E.E5,
                    CoeffRule("geometric", 2), mixed_point=_point("1/2", 2, 1),
                    iso_point=_point(1, 2, 2), ratio=MIXED_ISO, ell_range=(2, 7), model=POWER),
    ]
    return {case.case_id: case for case in cases}


CASES: Dict[str, WitnessCase] = _build_registry()


@dataclass(frozen=True)
class ClauseCoverage:
    """Cases witnessing a non-embedding clause, or why none can"""

    clause: str
    case_ids: Tuple[str, ...] = ()
    annotation: str = ""


CLAUSE_COVERAGE: Dict[str, ClauseCoverage] = {
    c.clause: c for c in [
        ClauseCoverage(CLAUSE_T31_POSITIVE, ("T31-t-neg",)),
        ClauseCoverage(CLAUSE_T31_FINITE_P, ("T31-q-gt-2", "T31-q-gt-p")),
        ClauseCoverage(CLAUSE_T31_INFINITE_P, ("T31-pinf-q-gt-1",)),
        ClauseCoverage(CLAUSE_T34_POSITIVE, ("T34-t-neg",)),
        ClauseCoverage(CLAUSE_T34_CRITICAL_FAILS, (), ORACLE_ONLY),
        ClauseCoverage(CLAUSE_P33_II, ("T31-q-gt-2", "T31-q-gt-p"),
                       f"B^0 into S^0 half: {ORACLE_ONLY}"),
        ClauseCoverage(CLAUSE_P33_III, ("T31-q-gt-p",), f"B^0 into S^0 half: {ORACLE_ONLY}"),
        ClauseCoverage(CLAUSE_P33_IV, ("T31-pinf-q-gt-1",), f"B^0 into S^0 half: {ORACLE_ONLY}"),
        ClauseCoverage(CLAUSE_P33_V, ("P33v",), f"B^t into S^t half: {ORACLE_ONLY}"),
        ClauseCoverage(CLAUSE_P35_II, ("P35ii",), f"B^(td) into S^t half: {ORACLE_ONLY}"),
        ClauseCoverage(CLAUSE_P35_IV, (), ORACLE_ONLY),
        ClauseCoverage(CLAUSE_T32, ("opt-T32", "opt-T32-eq")),
        ClauseCoverage(CLAUSE_T36, ("opt-T36", "opt-T36-eq")),
        ClauseCoverage(CLAUSE_T37, ("opt-T37", "opt-T37-eq")),
    ]
}


def get_case(case_id: str) -> WitnessCase:
    try:
        return CASES[case_id]
    except KeyError:
        raise DomainError(f"unknown witness case {case_id!r}; known: {', '.join(CASES)}") from None


def case_in_region(case: WitnessCase) -> bool:
    """True when the case's parameters lie where its clause speaks"""
    if isinstance(case.direction, EmbeddingDirection):
        status = verdict(case.mixed_point, case.direction).status
        if case.expectation is Expectation.BOUNDED:
            return status is EmbeddingStatus.EMBEDS
        return status is not EmbeddingStatus.EMBEDS

    if case.direction is OptimalityDirection.MIXED_INTO_ISO:
        optimal = optimal_space(case.iso_point, case.direction)
        return not classical_embedding(case.mixed_point, optimal, SpaceFamily.MIXED)
    if case.direction is OptimalityDirection.ISO_INTO_MIXED_SOURCE:
        optimal = optimal_space(case.mixed_point, case.direction)
        return not classical_embedding(case.iso_point, optimal, SpaceFamily.ISO)
    optimal = optimal_space(case.iso_point, case.direction)
    return not classical_embedding(optimal, case.mixed_point, SpaceFamily.MIXED)


# ============================================================================
# WITNESS RUNS
# ============================================================================

def _witness_row(case: WitnessCase, ell: int,
                 schedule: Optional[Sequence[Tuple[int, float]]]) -> Dict[str, Any]:
    spec = case.example_spec(ell)
    if schedule is None:
        schedule = [(n * case.oversampling, R) for n, R in default_schedule(spec)]
    ladder = validate_schedule(schedule)
    level = witness_level(spec)

    iso_levels, mixed_levels = [], []
    iso = mixed = None
    for n, R in ladder:
        grid = FrequencyGrid(spec.d, n, R)
        f = make_example(spec, grid)
        iso = besov_norm(f, SpaceFamily.ISO, case.iso_point.t, case.iso_point.p,
                         case.iso_point.q, partition_for(SpaceFamily.ISO, grid, level))
        mixed = besov_norm(f, SpaceFamily.MIXED, case.mixed_point.t, case.mixed_point.p,
                           case.mixed_point.q, partition_for(SpaceFamily.MIXED, grid, level))
        iso_levels.append((n, R, iso.value))
        mixed_levels.append((n, R, mixed.value))

    tol = case.convergence_tolerance or get_settings().witness_tolerance
    converged = ladder_meta(iso_levels, tol).converged and ladder_meta(mixed_levels, tol).converged
    ratio = case.ratio_of(iso.value, mixed.value)
    logger.info("%s ℓ=%d iso=%.6g mixed=%.6g ratio=%.6g converged=%s",
                case.case_id, ell, iso.value, mixed.value, ratio, converged)
    return {
        "case_id": case.case_id,
        "ell": ell,
        "iso_norm": iso.value,
        "mixed_norm": mixed.value,
        "ratio": ratio,
        "converged": converged,
    }


def run_witness(case: WitnessCase, schedule: Optional[Sequence[Tuple[int, float]]] = None,
                workers: int = 1) -> pd.DataFrame:
    """
    Evaluate both quasi-norms of the case's witness for every ℓ in its range

    Args:
        case: Witness case
        schedule: Ladder used for every ℓ instead of the family default
        workers: Rows evaluated concurrently; output order is always by ℓ

    Returns:
        DataFrame with columns case_id, ell, iso_norm, mixed_norm, ratio, converged

    Raises:
        DomainError: the case's parameters lie outside its clause's region
    """
    if not case_in_region(case):
        raise DomainError(f"case {case.case_id} parameters do not match clause {case.clause!r}")

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda ell: _witness_row(case, ell, schedule), case.ells))
    else:
        rows = [_witness_row(case, ell, schedule) for ell in case.ells]

    table = pd.DataFrame(rows, columns=WITNESS_COLUMNS)
    unconverged = int((~table["converged"]).sum())
    if unconverged:
        logger.warning("%s: %d of %d rows did not converge", case.case_id, unconverged, len(table))
    table.attrs["case"] = case.to_dict()
    return table


# ============================================================================
# GROWTH FITS
# ============================================================================

@dataclass(frozen=True)
class GrowthFit:
    model: GrowthModel
    exponent: float
    intercept: float
    max_residual: float
    rows_used: int
    discarded_smallest: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model": self.model.value,
            "exponent": self.exponent,
            "intercept": self.intercept,
            "max_residual": self.max_residual,
            "rows_used": self.rows_used,
            "discarded_smallest": self.discarded_smallest,
        }


def fit_growth(table: pd.DataFrame, model: GrowthModel) -> GrowthFit:
    """
    Least-squares growth exponent of the ratio column

    PowerInEll regresses log(ratio) on log ℓ, ExponentialBase2InEll on
    ℓ·log 2. Unconverged rows are dropped with a warning; with six or more
    usable rows the smallest ℓ is discarded.

    Raises:
        GrowthFitError: fewer than four usable rows
    """
    model = GrowthModel(model)
    usable = table[table["converged"].astype(bool)]
    if len(usable) < len(table):
        logger.warning("dropping %d unconverged rows before the fit", len(table) - len(usable))
    ratios = usable["ratio"].astype(float)
    usable = usable[np.isfinite(ratios) & (ratios > 0.0)].sort_values("ell")

    discarded = len(usable) >= 6
    if discarded:
        usable = usable.iloc[1:]
    if len(usable) < 4:
        raise GrowthFitError(f"need at least 4 usable rows, got {len(usable)}")

    ell = usable["ell"].to_numpy(dtype=float)
    y = np.log(usable["ratio"].to_numpy(dtype=float))
    x = np.log(ell) if model is GrowthModel.POWER else ell * math.log(2.0)
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.max(np.abs(y - (slope * x + intercept))))
    return GrowthFit(model, float(slope), float(intercept), residual, len(usable), discarded)


@dataclass(frozen=True)
class CaseAssessment:
    case_id: str
    fit: GrowthFit
    passed: bool
    reason: str

    def to_dict(self) -> Dict[str, Any]:
        return {"case_id": self.case_id, "fit": self.fit.to_dict(),
                "passed": self.passed, "reason": self.reason}


def assess_case(case: WitnessCase, table: pd.DataFrame) -> CaseAssessment:
    """Check a witness table against the case's expectation"""
    fit = fit_growth(table, case.model)
    if case.expectation is Expectation.BOUNDED:
        passed = fit.exponent <= 0.05
        reason = "bounded" if passed else f"positive trend {fit.exponent:.4g}"
    elif fit.exponent <= 0.0:
        passed, reason = False, f"no growth (exponent {fit.exponent:.4g})"
    elif fit.max_residual > case.residual_cap:
        passed, reason = False, f"residual {fit.max_residual:.3g} above cap {case.residual_cap}"
    else:
        passed, reason = True, f"grows with exponent {fit.exponent:.4g}"

    if passed and case.expected_exponent is not None:
        if abs(fit.exponent - case.expected_exponent) > case.exponent_tolerance:
            passed = False
            reason = f"exponent {fit.exponent:.4g} not within {case.exponent_tolerance} of {case.expected_exponent}"
    return CaseAssessment(case.case_id, fit, passed, reason)


# ============================================================================
# REPORTS
# ============================================================================

@singledispatch
def _report_payload(results: Any) -> Tuple[Optional[pd.DataFrame], Dict[str, Any]]:
    """(table for CSV, object for JSON)"""
    if hasattr(results, "to_dict"):
        payload = results.to_dict()
        return pd.DataFrame([payload]), payload
    raise DomainError(f"cannot report objects of type {type(results).__name__}")


@_report_payload.register
def _(results: pd.DataFrame):
    if results.empty:
        raise DomainError("cannot emit an empty report")
    if set(WITNESS_COLUMNS) <= set(results.columns):
        table = results[WITNESS_COLUMNS]
    else:
        table = results
    payload = {"rows": table.to_dict(orient="records")}
    if "case" in results.attrs:
        payload["case"] = results.attrs["case"]
    return table, payload


@_report_payload.register
def _(results: QuasiNormResult):
    return results.ledger(), results.to_dict()


@_report_payload.register
def _(results: RegionDiagram):
    rows = []
    for region in results.regions:
        for index, (x, y) in enumerate(region.polygon):
            rows.append({"kind": "region", "label": region.label.value,
                         "vertex": index, "x": x, "y": y})
    for segment in results.critical_segments:
        for index, (x, y) in enumerate((segment.start, segment.end)):
            rows.append({"kind": "critical",
                         "label": "emphasis" if segment.emphasis else "boundary",
                         "vertex": index, "x": x, "y": y})
    return pd.DataFrame(rows, columns=["kind", "label", "vertex", "x", "y"]), results.to_dict()


@_report_payload.register
def _(results: Verdict):
    payload = results.to_dict()
    return pd.DataFrame([payload], columns=["status", "clause"]), payload


def emit_report(results: Any, fmt: ReportFormat, path) -> Path:
    """
    Write results as CSV (floats at 17 significant digits) or JSON

    Args:
        results: Witness table, QuasiNormResult, RegionDiagram, Verdict,
            GrowthFit or probe table
        fmt: Output format
        path: Target file

    Returns:
        Path written

    Raises:
        DomainError: empty results
        ReportError: the file could not be written
    """
    fmt = ReportFormat(fmt)
    table, payload = _report_payload(results)
    if fmt is ReportFormat.CSV:
        written = write_csv(path, table)
    else:
        written = write_json(path, payload)
    logger.info("wrote %s report to %s", fmt.value, written)
    return written
