"""
Parameter domain and embedding decision tables
Verdicts for S^t_{p,q}B versus B^t_{p,q}, optimal spaces, classical
embeddings and the (1/p, t) region diagrams
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

import pandas as pd

from core.config import get_settings
from core.errors import DomainError

logger = logging.getLogger(__name__)

Number = Union[Fraction, float]

# ============================================================================
# CLAUSES
# ============================================================================

CLAUSE_COINCIDE = "Remark 2.4(iii): spaces coincide"
CLAUSE_T31_POSITIVE = "Thm 3.1: t>0"
CLAUSE_T31_FINITE_P = "Thm 3.1: q ≤ min(p,2)"
CLAUSE_T31_INFINITE_P = "Thm 3.1: p=∞, q ≤ 1"
CLAUSE_T34_POSITIVE = "Thm 3.4: t > max(0, 1/p − 1)"
CLAUSE_T34_ZERO = "Thm 3.4: max(2,p) ≤ q"
CLAUSE_T34_CRITICAL = "Thm 3.4: t = 1/p − 1, q = ∞"
CLAUSE_T34_CRITICAL_FAILS = "Thm 3.4: t = 1/p − 1 requires q = ∞"
CLAUSE_P33_I = "Prop 3.3(i)"
CLAUSE_P33_II = "Prop 3.3(ii)"
CLAUSE_P33_III = "Prop 3.3(iii)"
CLAUSE_P33_IV = "Prop 3.3(iv)"
CLAUSE_P33_V = "Prop 3.3(v)"
CLAUSE_P35_I = "Prop 3.5(i)"
CLAUSE_P35_II = "Prop 3.5(ii)"
CLAUSE_P35_III = "Prop 3.5(iii)"
CLAUSE_P35_IV = "Prop 3.5(iv)"


class EmbeddingStatus(str, Enum):
    EMBEDS = "Embeds"
    FAILS = "FailsToEmbed"
    REVERSE = "ReverseEmbeds"
    NOT_COMPARABLE = "NotComparable"
    NOT_COVERED = "NotCoveredByPaper"


class EmbeddingDirection(str, Enum):
    """Which inclusion a verdict or region diagram speaks about"""
    MIXED_INTO_ISO = "MixedIntoIso"   # S^t_{p,q}B into B^t_{p,q}
    ISO_INTO_MIXED = "IsoIntoMixed"   # B^{td}_{p,q} into S^t_{p,q}B


class OptimalityDirection(str, Enum):
    MIXED_INTO_ISO = "MixedIntoIso"
    ISO_INTO_MIXED_SOURCE = "IsoIntoMixed_Source"
    ISO_INTO_MIXED_TARGET = "IsoIntoMixed_Target"


class SpaceFamily(str, Enum):
    ISO = "Iso"
    MIXED = "Mixed"


# ============================================================================
# EXPONENTS AND PARAMETER POINTS
# ============================================================================

def _as_number(raw: Any, name: str) -> Number:
    """Rational inputs stay exact, floats stay floats"""
    if isinstance(raw, bool):
        raise DomainError(f"{name} must be a number, got {raw!r}")
    if isinstance(raw, (int, Fraction)):
        return Fraction(raw)
    if isinstance(raw, float):
        return raw
    if isinstance(raw, str):
        text = raw.strip().lower()
        if text in ("inf", "infinity", "∞", "+inf"):
            return math.inf
        if text in ("-inf", "-infinity", "-∞"):
            return -math.inf
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise DomainError(f"{name}: cannot parse {raw!r}") from e
    try:
        return float(raw)
    except (TypeError, ValueError) as e:
        raise DomainError(f"{name} must be a number, got {raw!r}") from e


def compare(a: Number, b: Number) -> int:
    """
    Three-way comparison used by every decision table

    Exact when both sides are rational or infinite; otherwise two reals
    closer than ``rational_tolerance`` compare equal.

    Returns:
        -1, 0 or 1
    """
    if a == b:
        return 0
    if math.isinf(a) or math.isinf(b):
        return -1 if a < b else 1
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return -1 if a < b else 1
    diff = float(a) - float(b)
    if abs(diff) <= get_settings().rational_tolerance:
        return 0
    return -1 if diff < 0 else 1


def _sign(x: Number) -> int:
    return compare(x, Fraction(0))


@dataclass(frozen=True)
class ExtendedExponent:
    """An exponent in (0, ∞]"""

    value: Number

    def __post_init__(self):
        if isinstance(self.value, float) and math.isnan(self.value):
            raise DomainError("exponent must not be NaN")
        if not self.value > 0:
            raise DomainError(f"exponent must be positive or infinite, got {self.value}")

    @classmethod
    def parse(cls, raw: Any, name: str = "exponent") -> "ExtendedExponent":
        if isinstance(raw, ExtendedExponent):
            return raw
        value = _as_number(raw, name)
        if not value > 0:
            raise DomainError(f"{name} must be positive or infinite, got {raw!r}")
        return cls(value)

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)

    def reciprocal(self) -> Number:
        if self.is_infinite:
            return Fraction(0)
        if isinstance(self.value, Fraction):
            return 1 / self.value
        return 1.0 / self.value

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        if self.is_infinite:
            return "inf"
        return str(self.value)

    def to_json(self) -> Union[float, str]:
        return "inf" if self.is_infinite else float(self.value)


INFINITY = ExtendedExponent(math.inf)


@dataclass(frozen=True)
class ParameterPoint:
    """Smoothness t, integrability p, summability q in dimension d"""

    t: Number
    p: ExtendedExponent
    q: ExtendedExponent
    d: int

    @property
    def inv_p(self) -> Number:
        return self.p.reciprocal()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": float(self.t),
            "p": self.p.to_json(),
            "q": self.q.to_json(),
            "d": self.d,
        }

    def __str__(self) -> str:
        return f"(t={self.t}, p={self.p}, q={self.q}, d={self.d})"


def parse_smoothness(t: Any) -> Number:
    """Finite real smoothness; ints, Fractions and rational strings stay exact"""
    smoothness = _as_number(t, "t")
    if isinstance(smoothness, float) and not math.isfinite(smoothness):
        raise DomainError(f"t must be finite, got {t!r}")
    return smoothness


def make_params(t: Any, p: Any, q: Any, d: int) -> ParameterPoint:
    """
    Validate and build a parameter point

    Args:
        t: Smoothness, any finite real (ints, Fractions and rational strings stay exact)
        p: Integrability exponent in (0, ∞]
        q: Summability exponent in (0, ∞]
        d: Dimension, at least 1

    Returns:
        ParameterPoint

    Raises:
        DomainError: on non-positive exponents, non-finite t or d < 1
    """
    smoothness = parse_smoothness(t)
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise DomainError(f"d must be an integer ≥ 1, got {d!r}")
    return ParameterPoint(
        t=smoothness,
        p=ExtendedExponent.parse(p, "p"),
        q=ExtendedExponent.parse(q, "q"),
        d=d,
    )


# ============================================================================
# VERDICTS
# ============================================================================

@dataclass(frozen=True)
class Verdict:
    status: EmbeddingStatus
    clause: str = ""

    def __post_init__(self):
        if self.status is not EmbeddingStatus.NOT_COVERED and not self.clause:
            raise DomainError(f"verdict {self.status.value} needs a clause")

    def to_dict(self) -> Dict[str, str]:
        return {"status": self.status.value, "clause": self.clause}


def _mixed_into_iso_at_zero(pt: ParameterPoint) -> Optional[str]:
    """Clause for S^0_{p,q}B ↪ B^0_{p,q}, or None when it fails"""
    if pt.p.is_infinite:
        return CLAUSE_T31_INFINITE_P if compare(pt.q.value, Fraction(1)) <= 0 else None
    bound = pt.p.value if compare(pt.p.value, Fraction(2)) <= 0 else Fraction(2)
    return CLAUSE_T31_FINITE_P if compare(pt.q.value, bound) <= 0 else None


def _iso_into_mixed_clause(pt: ParameterPoint) -> Optional[str]:
    """Clause for B^{td}_{p,q} ↪ S^t_{p,q}B, or None when it fails"""
    critical = pt.inv_p - 1
    threshold = critical if _sign(critical) > 0 else Fraction(0)
    if compare(pt.t, threshold) > 0:
        return CLAUSE_T34_POSITIVE

    p_vs_one = compare(pt.p.value, Fraction(1))
    if _sign(pt.t) == 0 and p_vs_one > 0:
        bound = pt.p.value if compare(pt.p.value, Fraction(2)) >= 0 else Fraction(2)
        if compare(pt.q.value, bound) >= 0:
            return CLAUSE_T34_ZERO
    if p_vs_one <= 0 and compare(pt.t, critical) == 0 and pt.q.is_infinite:
        return CLAUSE_T34_CRITICAL
    return None


def _incomparable_at_zero(pt: ParameterPoint) -> str:
    if pt.p.is_infinite:
        return CLAUSE_P33_IV
    p_vs_one = compare(pt.p.value, Fraction(1))
    if p_vs_one < 0:
        return CLAUSE_P35_IV
    if p_vs_one == 0:
        return CLAUSE_P33_III
    return CLAUSE_P33_II


def embed_mixed_into_iso(pt: ParameterPoint) -> Verdict:
    """
    Decide S^t_{p,q}B(ℝ^d) ↪ B^t_{p,q}(ℝ^d)

    The embedding holds iff t > 0, or t = 0 with q ≤ min(p,2) (p < ∞) or
    q ≤ 1 (p = ∞). When it fails the reverse inclusion is decided as well,
    so the answer is one of Embeds, ReverseEmbeds or NotComparable.

    Args:
        pt: Parameter point

    Returns:
        Verdict naming the clause applied
    """
    if pt.d == 1:
        return Verdict(EmbeddingStatus.EMBEDS, CLAUSE_COINCIDE)

    sign_t = _sign(pt.t)
    if sign_t > 0:
        return Verdict(EmbeddingStatus.EMBEDS, CLAUSE_T31_POSITIVE)

    if sign_t == 0:
        clause = _mixed_into_iso_at_zero(pt)
        if clause:
            return Verdict(EmbeddingStatus.EMBEDS, clause)
        reverse = _iso_into_mixed_clause(pt)
        if reverse:
            return Verdict(EmbeddingStatus.REVERSE, reverse)
        return Verdict(EmbeddingStatus.NOT_COMPARABLE, _incomparable_at_zero(pt))

    if compare(pt.p.value, Fraction(1)) >= 0:
        return Verdict(EmbeddingStatus.REVERSE, CLAUSE_P33_I)
    return Verdict(EmbeddingStatus.NOT_COMPARABLE, CLAUSE_P33_V)


def embed_iso_into_mixed(pt: ParameterPoint) -> Verdict:
    """
    Decide B^{td}_{p,q}(ℝ^d) ↪ S^t_{p,q}B(ℝ^d)

    The embedding holds iff t > max(0, 1/p − 1), or t = 0 with 1 < p ≤ ∞
    and max(2,p) ≤ q, or 0 < p ≤ 1 with t = 1/p − 1 and q = ∞. The single
    configuration whose reverse inclusion is not decided (0 < p < 1,
    t = 1/p − 1, q < ∞) is reported as FailsToEmbed.

    Args:
        pt: Parameter point (t is the mixed smoothness; the isotropic side carries t·d)

    Returns:
        Verdict naming the clause applied
    """
    if pt.d == 1:
        return Verdict(EmbeddingStatus.EMBEDS, CLAUSE_COINCIDE)

    clause = _iso_into_mixed_clause(pt)
    if clause:
        return Verdict(EmbeddingStatus.EMBEDS, clause)

    sign_t = _sign(pt.t)
    if sign_t < 0:
        return Verdict(EmbeddingStatus.REVERSE, CLAUSE_P35_I)

    if compare(pt.p.value, Fraction(1)) < 0:
        if sign_t == 0:
            if compare(pt.q.value, pt.p.value) <= 0:
                return Verdict(EmbeddingStatus.REVERSE, CLAUSE_P35_III)
            return Verdict(EmbeddingStatus.NOT_COMPARABLE, CLAUSE_P35_IV)
        if compare(pt.t, pt.inv_p - 1) < 0:
            return Verdict(EmbeddingStatus.NOT_COMPARABLE, CLAUSE_P35_II)
        return Verdict(EmbeddingStatus.FAILS, CLAUSE_T34_CRITICAL_FAILS)

    # p ≥ 1 and t ≥ 0 without an embedding leaves only t = 0
    reverse = _mixed_into_iso_at_zero(pt)
    if reverse:
        return Verdict(EmbeddingStatus.REVERSE, reverse)
    return Verdict(EmbeddingStatus.NOT_COMPARABLE, _incomparable_at_zero(pt))


def verdict(pt: ParameterPoint, direction: EmbeddingDirection) -> Verdict:
    direction = EmbeddingDirection(direction)
    if direction is EmbeddingDirection.MIXED_INTO_ISO:
        return embed_mixed_into_iso(pt)
    return embed_iso_into_mixed(pt)


def oracle_table(direction: EmbeddingDirection, d: int,
                 t_values: Iterable[Any], p_values: Iterable[Any],
                 q_values: Iterable[Any]) -> pd.DataFrame:
    """
    Sweep the oracle over a parameter grid

    Args:
        direction: Which inclusion to decide
        d: Dimension
        t_values: Smoothness values
        p_values: Integrability exponents
        q_values: Summability exponents

    Returns:
        DataFrame with columns t, p, q, d, status, clause
    """
    rows = []
    for t, p, q in product(t_values, p_values, q_values):
        pt = make_params(t, p, q, d)
        result = verdict(pt, direction)
        rows.append({
            "t": float(pt.t),
            "p": float(pt.p),
            "q": float(pt.q),
            "d": d,
            "status": result.status.value,
            "clause": result.clause,
        })
    return pd.DataFrame(rows, columns=["t", "p", "q", "d", "status", "clause"])


# ============================================================================
# CLASSICAL EMBEDDINGS AND OPTIMAL SPACES
# ============================================================================

def classical_embedding(src: ParameterPoint, dst: ParameterPoint,
                        family: SpaceFamily) -> bool:
    """
    Embedding between two spaces of the same family

    Holds iff src.p ≤ dst.p and either t₀ − c/p₀ > t − c/p strictly, or the
    two sides agree and q₀ ≤ q; c is d for Iso and 1 for Mixed.

    Raises:
        DomainError: when the dimensions differ
    """
    if src.d != dst.d:
        raise DomainError(f"dimension mismatch: {src.d} versus {dst.d}")
    if compare(src.p.value, dst.p.value) > 0:
        return False

    offset = src.d if SpaceFamily(family) is SpaceFamily.ISO else 1
    lhs = src.t - offset * src.inv_p
    rhs = dst.t - offset * dst.inv_p
    order = compare(lhs, rhs)
    if order > 0:
        return True
    return order == 0 and compare(src.q.value, dst.q.value) <= 0


def optimal_space(target: ParameterPoint, direction: OptimalityDirection) -> ParameterPoint:
    """
    Extremal space of the optimality statements

    Args:
        target: B^t_{p,q} for MixedIntoIso, S^t_{p,q}B for IsoIntoMixed_Source,
            the source B^{t}_{p,q} (isotropic smoothness) for IsoIntoMixed_Target
        direction: Which extremal space to return

    Returns:
        The largest mixed space inside B^t_{p,q}, the largest isotropic space
        inside S^t_{p,q}B, or the smallest mixed space containing B^t_{p,q}
    """
    direction = OptimalityDirection(direction)
    if direction is OptimalityDirection.MIXED_INTO_ISO:
        return target
    if direction is OptimalityDirection.ISO_INTO_MIXED_SOURCE:
        return ParameterPoint(target.t * target.d, target.p, target.q, target.d)
    smoothness = target.t / target.d if isinstance(target.t, Fraction) else target.t / float(target.d)
    return ParameterPoint(smoothness, target.p, target.q, target.d)


# ============================================================================
# REGION DIAGRAMS
# ============================================================================

Point = Tuple[float, float]


@dataclass(frozen=True)
class Region:
    label: EmbeddingStatus
    polygon: Tuple[Point, ...]
    unbounded: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label.value,
            "polygon": [[x, y] for x, y in self.polygon],
            "unbounded": self.unbounded,
        }


@dataclass(frozen=True)
class CriticalSegment:
    start: Point
    end: Point
    emphasis: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"start": list(self.start), "end": list(self.end), "emphasis": self.emphasis}


@dataclass(frozen=True)
class RegionDiagram:
    """Labeled polygons in (1/p, t) coordinates, clipped to [0, e] × [−e, e]"""

    figure: EmbeddingDirection
    d: int
    extent: float
    regions: Tuple[Region, ...] = field(default_factory=tuple)
    critical_segments: Tuple[CriticalSegment, ...] = field(default_factory=tuple)

    def locate(self, x: float, y: float) -> Optional[EmbeddingStatus]:
        """Label of the region whose interior contains (x, y), None on edges or outside"""
        for region in self.regions:
            if _strictly_inside(region.polygon, x, y):
                return region.label
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "figure": self.figure.value,
            "d": self.d,
            "extent": self.extent,
            "regions": [r.to_dict() for r in self.regions],
            "critical_segments": [s.to_dict() for s in self.critical_segments],
        }


def _on_segment(a: Point, b: Point, x: float, y: float, eps: float = 1e-9) -> bool:
    (x1, y1), (x2, y2) = a, b
    cross = (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1)
    length = math.hypot(x2 - x1, y2 - y1)
    if length == 0 or abs(cross) / length > eps:
        return False
    return (min(x1, x2) - eps <= x <= max(x1, x2) + eps
            and min(y1, y2) - eps <= y <= max(y1, y2) + eps)


def _strictly_inside(polygon: Tuple[Point, ...], x: float, y: float) -> bool:
    edges = list(zip(polygon, polygon[1:] + polygon[:1]))
    if any(_on_segment(a, b, x, y) for a, b in edges):
        return False
    inside = False
    for (x1, y1), (x2, y2) in edges:
        if (y1 > y) != (y2 > y):
            crossing = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x < crossing:
                inside = not inside
    return inside


def region_diagram(figure: EmbeddingDirection, d: int, extent: float) -> RegionDiagram:
    """
    Region diagram of one embedding direction

    Args:
        figure: MixedIntoIso (critical line t = 0) or IsoIntoMixed
            (critical line max(0, 1/p − 1))
        d: Dimension, at least 2
        extent: Window half-size; the plot covers [0, extent] × [−extent, extent]

    Returns:
        RegionDiagram with clipped polygons and critical segments
    """
    figure = EmbeddingDirection(figure)
    if d < 2:
        raise DomainError("region diagrams need d ≥ 2")
    e = float(extent)
    if not e > 0 or not math.isfinite(e):
        raise DomainError(f"extent must be a positive real, got {extent!r}")

    E = EmbeddingStatus
    if figure is EmbeddingDirection.MIXED_INTO_ISO:
        a = min(1.0, e)
        regions = [
            Region(E.EMBEDS, ((0.0, 0.0), (e, 0.0), (e, e), (0.0, e)), True),
            Region(E.REVERSE, ((0.0, -e), (a, -e), (a, 0.0), (0.0, 0.0)), True),
        ]
        segments = [CriticalSegment((0.0, 0.0), (e, 0.0), True)]
        if e > 1.0:
            regions.append(Region(E.NOT_COMPARABLE, ((1.0, -e), (e, -e), (e, 0.0), (1.0, 0.0)), True))
            segments.append(CriticalSegment((1.0, -e), (1.0, 0.0), False))
    else:
        if e > 1.0:
            upper = ((0.0, 0.0), (1.0, 0.0), (e, e - 1.0), (e, e), (0.0, e))
        else:
            upper = ((0.0, 0.0), (e, 0.0), (e, e), (0.0, e))
        regions = [
            Region(E.EMBEDS, upper, True),
            Region(E.REVERSE, ((0.0, -e), (e, -e), (e, 0.0), (0.0, 0.0)), True),
        ]
        segments = [CriticalSegment((0.0, 0.0), (min(1.0, e), 0.0), True)]
        if e > 1.0:
            regions.append(Region(E.NOT_COMPARABLE, ((1.0, 0.0), (e, 0.0), (e, e - 1.0)), True))
            segments.append(CriticalSegment((1.0, 0.0), (e, e - 1.0), True))
            segments.append(CriticalSegment((1.0, 0.0), (e, 0.0), False))

    return RegionDiagram(figure, d, e, tuple(regions), tuple(segments))


def region_samples(diagram: RegionDiagram, per_axis: int = 50) -> List[Tuple[Fraction, Fraction]]:
    """Cell-centred sample points of the window, exact rationals"""
    e = Fraction(diagram.extent)
    xs = [(i + Fraction(1, 2)) * e / per_axis for i in range(per_axis)]
    ys = [-e + (j + Fraction(1, 2)) * 2 * e / per_axis for j in range(per_axis)]
    return [(x, y) for x in xs for y in ys]


def diagram_disagreements(diagram: RegionDiagram, q: Any = 1,
                          per_axis: int = 50) -> List[Dict[str, Any]]:
    """
    Interior samples whose region label differs from the pointwise oracle

    Away from t = 0 the verdicts do not depend on q, so any fixed q serves.

    Returns:
        One record per disagreement; empty when the diagram is consistent
    """
    mismatches = []
    for x, y in region_samples(diagram, per_axis):
        label = diagram.locate(float(x), float(y))
        if label is None:
            continue
        p = math.inf if x == 0 else 1 / x
        found = verdict(make_params(y, p, q, diagram.d), diagram.figure)
        if found.status is not label:
            mismatches.append({"inv_p": float(x), "t": float(y),
                               "region": label.value, "oracle": found.status.value})
    if mismatches:
        logger.warning("%d region samples disagree with the oracle", len(mismatches))
    return mismatches
