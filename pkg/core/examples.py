"""
Witness families
Six families of test functions whose two quasi-norms are known in closed form
or up to constants, with their analytic predictions and default grids
"""

import json
import logging
import math
from dataclasses import asdict, dataclass
from enum import Enum
from functools import reduce
from itertools import product
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from core.config import get_settings
from core.errors import (
    DomainError, GridMismatchError, NyquistOverflowError, PredictionRefusedError,
    WitnessConstructionError,
)
from core.norms import aggregate_ledger
from core.params import ExtendedExponent, parse_smoothness
from core.partition import FrequencyGrid, Label
from core.signal import GridFunction, lp_of_samples, lp_quasinorm, synthesize_modes

logger = logging.getLogger(__name__)

# spike centres of the first family sit at SHIFT·2^level
SHIFT = 7.0 / 8.0
# the annulus profile lives on 3/2 ≤ |x| ≤ 2
ANNULUS_CENTRE = 7.0 / 4.0
ANNULUS_HALFWIDTH = 1.0 / 4.0
DEFAULT_BUMP_WIDTH = 1.0 / 16.0
# |𝓕^{−1}g| below this fraction of its peak on [−π, π]^d counts as vanishing
POSITIVITY_FLOOR = 1e-6
BUMP_PROFILES = ("mollifier",)


class ExampleFamily(str, Enum):
    E1 = "E1"   # shifted bumps at (7/8·2^ℓ, 7/8·2^j)
    E2 = "E2"   # lacunary exponentials e^{i(2^ℓx_1 + 2^j x_2)}
    E3 = "E3"   # tensor annulus bumps over |k̄|_∞ = ℓ
    E4 = "E4"   # tensor annulus bumps at (j, 1, …, 1)
    E5 = "E5"   # tensor annulus bumps at (j, …, j)
    E6 = "E6"   # dilates of a band-limited profile


class Exactness(str, Enum):
    EQUALITY = "Equality"
    EQUIVALENCE = "Equivalence"


# ============================================================================
# PROFILES
# ============================================================================

def mollifier(y: np.ndarray) -> np.ndarray:
    """exp(−1/(1−y²)) on |y| < 1, exactly 0 elsewhere"""
    y = np.asarray(y, dtype=float)
    inside = np.abs(y) < 1.0
    safe = np.where(inside, 1.0 - y * y, 1.0)
    return np.where(inside, np.exp(-1.0 / safe), 0.0)


def annulus_profile(x: np.ndarray) -> np.ndarray:
    """Even bump supported in 3/2 ≤ |x| ≤ 2"""
    return mollifier((np.abs(np.asarray(x, dtype=float)) - ANNULUS_CENTRE) / ANNULUS_HALFWIDTH)


def dilated_annulus(level: int, x: np.ndarray) -> np.ndarray:
    """g_level(x) = g(2^{1−level}x), supported in (3/4)·2^level ≤ |x| ≤ 2^level"""
    return annulus_profile(2.0 ** (1 - level) * np.asarray(x, dtype=float))


def radial_profile(r: np.ndarray) -> np.ndarray:
    """Spectrum of the dilation profile ϱ, supported in the unit ball"""
    return mollifier(r)


def nabla_set(ell: int, d: int) -> List[Tuple[int, ...]]:
    """∇_ℓ = {k̄ ∈ ℕ^d : max_i k_i = ℓ}, k_i ≥ 1, lexicographic"""
    return [k for k in product(range(1, ell + 1), repeat=d) if max(k) == ell]


# ============================================================================
# SPECS AND PREDICTIONS
# ============================================================================

def family_labels(family: ExampleFamily, ell: int, d: int, first_level: int = 1) -> List[Label]:
    """Coefficient labels of a family member, in coefficient order"""
    family = ExampleFamily(family)
    if family in (ExampleFamily.E1, ExampleFamily.E2):
        return list(range(first_level, ell + 1))
    if family is ExampleFamily.E3:
        return nabla_set(ell, d)
    if family in (ExampleFamily.E4, ExampleFamily.E5):
        return list(range(1, ell + 1))
    return []


def _check_int(value: Any, name: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise DomainError(f"{name} must be an integer ≥ {minimum}, got {value!r}")
    return value


@dataclass(frozen=True)
class ExampleSpec:
    """
    One member of a witness family

    Coefficients follow ``labels()``: j = first_level … ℓ for E1/E2,
    ∇_ℓ in lexicographic order for E3, j = 1 … ℓ for E4/E5 and none for E6.
    """

    family: ExampleFamily
    ell: int
    coeffs: Tuple[float, ...] = ()
    d: int = 2
    first_level: int = 1
    bump_width: float = DEFAULT_BUMP_WIDTH
    bump_profile: str = "mollifier"
    dilation: int = 0

    def __post_init__(self):
        object.__setattr__(self, "family", ExampleFamily(self.family))
        object.__setattr__(self, "coeffs", tuple(float(a) for a in self.coeffs))
        object.__setattr__(self, "bump_width", float(self.bump_width))

        _check_int(self.ell, "ell", 1)
        _check_int(self.d, "d", 1)
        _check_int(self.dilation, "dilation", 0)
        if self.family in (ExampleFamily.E1, ExampleFamily.E2):
            if self.d < 2:
                raise DomainError(f"{self.family.value} needs d ≥ 2, got {self.d}")
            if self.first_level not in (0, 1):
                raise DomainError(f"first_level must be 0 or 1, got {self.first_level!r}")
        elif self.first_level != 1:
            raise DomainError(f"{self.family.value} has no on-axis term; first_level must be 1")
        if self.family is ExampleFamily.E1 and not 0.0 < self.bump_width < 0.125:
            raise DomainError(f"bump width must lie in (0, 1/8), got {self.bump_width}")
        if self.bump_profile not in BUMP_PROFILES:
            raise DomainError(f"unknown bump profile {self.bump_profile!r}")
        if not all(math.isfinite(a) for a in self.coeffs):
            raise DomainError("coefficients must be finite")

        expected = len(self.labels())
        if len(self.coeffs) != expected:
            raise WitnessConstructionError(
                f"{self.family.value} with ℓ={self.ell}, d={self.d} needs {expected} "
                f"coefficients, got {len(self.coeffs)}")

    def labels(self) -> List[Label]:
        return family_labels(self.family, self.ell, self.d, self.first_level)

    def terms(self) -> List[Tuple[Label, float]]:
        return list(zip(self.labels(), self.coeffs))

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload["family"] = self.family.value
        payload["coeffs"] = list(self.coeffs)
        return payload

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "ExampleSpec":
        try:
            return cls(**{**payload, "coeffs": tuple(payload.get("coeffs", ()))})
        except TypeError as e:
            raise DomainError(f"invalid example spec: {e}") from e

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExampleSpec":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as e:
            raise DomainError(f"example spec is not valid JSON: {e}") from e
        return cls.from_dict(payload)


@dataclass(frozen=True)
class Bracket:
    """Two-sided estimate c·growth ≤ value ≤ C·growth with unknown constants"""

    growth: float
    lower: str = "c"
    upper: str = "C"

    def to_dict(self) -> Dict[str, Any]:
        return {"growth": self.growth, "lower": self.lower, "upper": self.upper}

    def __str__(self) -> str:
        return f"{self.lower}·{self.growth:.6g} ≤ · ≤ {self.upper}·{self.growth:.6g}"


PredictedValue = Union[float, Bracket]


@dataclass(frozen=True)
class AnalyticPrediction:
    iso_value: PredictedValue
    mixed_value: PredictedValue
    validity: str

    @property
    def iso_exact(self) -> bool:
        return not isinstance(self.iso_value, Bracket)

    @property
    def mixed_exact(self) -> bool:
        return not isinstance(self.mixed_value, Bracket)

    @property
    def exactness(self) -> Exactness:
        if self.iso_exact and self.mixed_exact:
            return Exactness.EQUALITY
        return Exactness.EQUIVALENCE

    def to_dict(self) -> Dict[str, Any]:
        def side(value: PredictedValue) -> Any:
            return value.to_dict() if isinstance(value, Bracket) else value

        return {
            "iso_value": side(self.iso_value),
            "mixed_value": side(self.mixed_value),
            "exactness": self.exactness.value,
            "validity": self.validity,
        }


# ============================================================================
# CONSTRUCTION
# ============================================================================

def _require_level(grid: FrequencyGrid, level: int) -> None:
    if not grid.fits_level(level):
        raise NyquistOverflowError(
            f"level {level} needs Nyquist ≥ {1.5 * 2 ** level}, grid has {grid.nyquist}")


def _outer(grid: FrequencyGrid, factors: Sequence[np.ndarray]) -> np.ndarray:
    """Tensor product of one lattice array per axis"""
    views = [f.reshape([grid.n if i == axis else 1 for i in range(grid.d)])
             for axis, f in enumerate(factors)]
    return reduce(np.multiply, views) * np.ones(grid.shape)


def line_grid(grid: FrequencyGrid) -> FrequencyGrid:
    """The 1-D grid carrying one axis of ``grid``"""
    return FrequencyGrid(1, grid.n, grid.box_halfwidth)


def inverse_profile(grid: FrequencyGrid, axis_values: np.ndarray) -> np.ndarray:
    """Samples of the 1-D inverse transform of an axis spectrum"""
    return GridFunction.from_spectrum(line_grid(grid), axis_values).samples


def _bump_axes(spec: ExampleSpec, grid: FrequencyGrid) -> Tuple[np.ndarray, Callable[[float], np.ndarray]]:
    """Unshifted normalized bump on one axis, and its shifted copies"""
    freqs = grid.axis_frequencies()
    width = spec.bump_width

    def shifted(centre: float) -> np.ndarray:
        return mollifier((freqs - centre) / width)

    mass = float(np.sum(shifted(0.0))) * grid.frequency_step
    if mass == 0.0:
        raise WitnessConstructionError(
            f"bump of width {width} has no lattice support at spacing {grid.frequency_step}")
    scale = 1.0 / mass
    return scale * shifted(0.0), lambda centre: scale * shifted(centre)


def positivity_floor(spec: ExampleSpec, grid: FrequencyGrid, axis_bump: np.ndarray) -> float:
    """
    min over [−π, π]^d of |𝓕^{−1}g|, for the tensor bump built from one axis profile

    Raises:
        WitnessConstructionError: the minimum falls below POSITIVITY_FLOOR times the peak
    """
    line = line_grid(grid)
    samples = np.abs(inverse_profile(grid, axis_bump))
    inside = np.abs(line.axis_points()) <= math.pi + 1e-12
    peak = float(np.max(samples))
    low = float(np.min(samples[inside]))
    if not low > POSITIVITY_FLOOR * peak:
        raise WitnessConstructionError(
            f"|F^-1 g| vanishes on [-pi, pi]^{spec.d} for bump width {spec.bump_width}")
    return low ** spec.d


def _build_e1(spec: ExampleSpec, grid: FrequencyGrid) -> GridFunction:
    _require_level(grid, spec.ell)
    axis_bump, shifted = _bump_axes(spec, grid)

    top = SHIFT * 2.0 ** spec.ell
    grid.frequency_index(top)
    second = np.zeros(grid.n)
    for j, a in spec.terms():
        centre = SHIFT * 2.0 ** j
        grid.frequency_index(centre)
        if a != 0.0:
            second = second + a * shifted(centre)

    positivity_floor(spec, grid, axis_bump)
    factors = [shifted(top), second] + [axis_bump] * (spec.d - 2)
    return GridFunction.from_spectrum(grid, _outer(grid, factors))


def _build_e2(spec: ExampleSpec, grid: FrequencyGrid) -> GridFunction:
    _require_level(grid, spec.ell)
    tail = (0.0,) * (spec.d - 2)
    modes: Dict[Tuple[float, ...], complex] = {}
    for j, a in spec.terms():
        modes[(2.0 ** spec.ell, 2.0 ** j) + tail] = a
    return synthesize_modes(grid, modes)


def _annulus_terms(spec: ExampleSpec) -> List[Tuple[Tuple[int, ...], float]]:
    if spec.family is ExampleFamily.E3:
        return spec.terms()
    if spec.family is ExampleFamily.E4:
        return [((j,) + (1,) * (spec.d - 1), a) for j, a in spec.terms()]
    return [((j,) * spec.d, a) for j, a in spec.terms()]


def _build_annulus(spec: ExampleSpec, grid: FrequencyGrid) -> GridFunction:
    _require_level(grid, spec.ell)
    freqs = grid.axis_frequencies()
    axes: Dict[int, np.ndarray] = {}
    spectrum = np.zeros(grid.shape)
    for label, a in _annulus_terms(spec):
        for k in label:
            if k not in axes:
                axes[k] = dilated_annulus(k, freqs)
                if not np.any(axes[k]):
                    raise WitnessConstructionError(
                        f"annulus profile at level {k} has no lattice support at spacing {grid.frequency_step}")
        if a != 0.0:
            spectrum += a * _outer(grid, [axes[k] for k in label])
    return GridFunction.from_spectrum(grid, spectrum)


def _build_e6(spec: ExampleSpec, grid: FrequencyGrid) -> GridFunction:
    _require_level(grid, 0)
    scale = 2.0 ** spec.dilation
    views = grid.broadcast_axes(grid.axis_frequencies())
    radius = np.sqrt(reduce(np.add, [v * v for v in views]))
    spectrum = scale ** spec.d * radial_profile(scale * radius) * np.ones(grid.shape)
    if not np.any(spectrum):
        raise WitnessConstructionError(
            f"dilated profile has no lattice support at spacing {grid.frequency_step}")
    return GridFunction.from_spectrum(grid, spectrum)


_BUILDERS: Dict[ExampleFamily, Callable[[ExampleSpec, FrequencyGrid], GridFunction]] = {
    ExampleFamily.E1: _build_e1,
    ExampleFamily.E2: _build_e2,
    ExampleFamily.E3: _build_annulus,
    ExampleFamily.E4: _build_annulus,
    ExampleFamily.E5: _build_annulus,
    ExampleFamily.E6: _build_e6,
}


def make_example(spec: ExampleSpec, grid: FrequencyGrid) -> GridFunction:
    """
    Build a witness function on a grid

    Args:
        spec: Family member
        grid: Frequency grid; its lattice must fit level ℓ and carry every spike

    Returns:
        GridFunction whose spectrum matches the family definition

    Raises:
        GridMismatchError: grid dimension differs from spec.d
        NyquistOverflowError: the lattice does not fit level ℓ
        DomainError: a spike centre is not a lattice frequency
        WitnessConstructionError: a profile misses the lattice or |F^-1 g| vanishes
    """
    if grid.d != spec.d:
        raise GridMismatchError(f"spec has d={spec.d}, grid has d={grid.d}")
    f = _BUILDERS[spec.family](spec, grid)
    logger.debug("built %s ℓ=%d on %s", spec.family.value, spec.ell, grid)
    return f


# ============================================================================
# PREDICTIONS
# ============================================================================

def _refuse(message: str) -> None:
    raise PredictionRefusedError(message)


def _needs_grid(spec: ExampleSpec, grid: Optional[FrequencyGrid]) -> FrequencyGrid:
    if grid is None:
        _refuse(f"{spec.family.value} predictions carry a quadrature factor and need a grid")
    return grid


def bump_factor(spec: ExampleSpec, grid: FrequencyGrid, p: Any) -> float:
    """‖𝓕^{−1}g‖_p on the grid; the tensor Riemann sum factorizes over axes"""
    axis_bump, _ = _bump_axes(spec, grid)
    line = line_grid(grid)
    return lp_of_samples(inverse_profile(grid, axis_bump), line.cell_volume, p) ** spec.d


def annulus_factor(grid: FrequencyGrid, level: int, p: Any) -> float:
    """1-D ‖𝓕^{−1}g_level‖_p on one axis of the grid"""
    line = line_grid(grid)
    values = dilated_annulus(level, line.axis_frequencies())
    return lp_of_samples(inverse_profile(grid, values), line.cell_volume, p)


def profile_factor(spec: ExampleSpec, grid: FrequencyGrid, p: Any) -> float:
    """‖ϱ‖_p on the undilated grid (n, R/2^j)"""
    base = FrequencyGrid(grid.d, grid.n, grid.box_halfwidth / 2.0 ** spec.dilation)
    profile = ExampleSpec(ExampleFamily.E6, spec.ell, d=spec.d, dilation=0)
    return lp_quasinorm(make_example(profile, base), p)


def _predict_e1(spec, t, iso_t, p, q, grid) -> AnalyticPrediction:
    grid = _needs_grid(spec, grid)
    G = bump_factor(spec, grid, p)
    mixed = aggregate_ledger([2.0 ** ((spec.ell + j) * t) * abs(a) * G for j, a in spec.terms()], q)

    active = [(j, a) for j, a in spec.terms() if a != 0.0]
    if len(active) <= 1:
        amplitude = abs(active[0][1]) if active else 0.0
        return AnalyticPrediction(2.0 ** (spec.ell * iso_t) * amplitude * G, mixed,
                                  "single active term, all 0 < p ≤ ∞")
    if p.is_infinite:
        _refuse("E1 isotropic norm at p = ∞ has no closed form for several active terms")
    growth = 2.0 ** (spec.ell * iso_t) * math.sqrt(sum(a * a for _, a in active))
    validity = "1 < p < ∞" if float(p) > 1.0 else "0 < p ≤ 1, growth only"
    return AnalyticPrediction(Bracket(growth), mixed, validity)


def _predict_e2(spec, t, iso_t, p, q, grid) -> AnalyticPrediction:
    if not p.is_infinite:
        _refuse("E2 isotropic prediction needs p = ∞")
    if any(a < 0.0 for a in spec.coeffs):
        _refuse("E2 isotropic prediction needs a_j ≥ 0")
    mixed = aggregate_ledger([2.0 ** ((spec.ell + j) * t) * abs(a) for j, a in spec.terms()], q)
    iso = 2.0 ** (spec.ell * iso_t) * sum(spec.coeffs)
    return AnalyticPrediction(iso, mixed, "p = ∞, a_j ≥ 0")


def _predict_e3(spec, t, iso_t, p, q, grid) -> AnalyticPrediction:
    grid = _needs_grid(spec, grid)
    factors = {k: annulus_factor(grid, k, p) for k in range(1, spec.ell + 1)}

    def block(label: Tuple[int, ...]) -> float:
        return math.prod(factors[k] for k in label)

    mixed = aggregate_ledger([2.0 ** (sum(k) * t) * abs(a) * block(k) for k, a in spec.terms()], q)
    active = [(k, a) for k, a in spec.terms() if a != 0.0]
    if len(active) <= 1:
        iso = 2.0 ** (spec.ell * iso_t) * abs(active[0][1]) * block(active[0][0]) if active else 0.0
        return AnalyticPrediction(iso, mixed, "single active term, all 0 < p ≤ ∞")
    if p.is_infinite or float(p) <= 1.0:
        _refuse("E3 isotropic equivalence needs 1 < p < ∞")
    r = float(p)
    total = sum(abs(a) ** r * 2.0 ** (sum(k) * (1.0 - 1.0 / r) * r) for k, a in active)
    growth = 2.0 ** (spec.ell * iso_t) * total ** (1.0 / r)
    return AnalyticPrediction(Bracket(growth), mixed, "1 < p < ∞")


def _predict_tensor_chain(spec, t, iso_t, p, q, grid) -> AnalyticPrediction:
    grid = _needs_grid(spec, grid)
    factors = {k: annulus_factor(grid, k, p) for k in range(1, spec.ell + 1)}
    mixed_terms, iso_terms = [], []
    for label, a in _annulus_terms(spec):
        block = abs(a) * math.prod(factors[k] for k in label)
        mixed_terms.append(2.0 ** (sum(label) * t) * block)
        iso_terms.append(2.0 ** (max(label) * iso_t) * block)
    return AnalyticPrediction(aggregate_ledger(iso_terms, q), aggregate_ledger(mixed_terms, q),
                              "all 0 < p ≤ ∞")


def _predict_e6(spec, t, iso_t, p, q, grid) -> AnalyticPrediction:
    grid = _needs_grid(spec, grid)
    inv_p = 0.0 if p.is_infinite else 1.0 / float(p)
    value = 2.0 ** (spec.dilation * spec.d * inv_p) * profile_factor(spec, grid, p)
    return AnalyticPrediction(value, value, "all t, 0 < p ≤ ∞, 0 < q ≤ ∞")


_PREDICTORS = {
    ExampleFamily.E1: _predict_e1,
    ExampleFamily.E2: _predict_e2,
    ExampleFamily.E3: _predict_e3,
    ExampleFamily.E4: _predict_tensor_chain,
    ExampleFamily.E5: _predict_tensor_chain,
    ExampleFamily.E6: _predict_e6,
}


def predicted_norms(spec: ExampleSpec, t: Any, p: Any, q: Any,
                    grid: Optional[FrequencyGrid] = None,
                    iso_t: Optional[Any] = None) -> AnalyticPrediction:
    """
    Closed-form quasi-norms of a witness

    Mixed-side weights are block-exact: the term of E1/E2 indexed by j sits
    in tensor block (ℓ, j, 0, …) and carries 2^{(ℓ+j)t}.

    Args:
        spec: Family member
        t: Mixed smoothness
        p: Integrability
        q: Summability
        grid: Grid for the quadrature factors (‖𝓕^{−1}g‖_p and its relatives)
        iso_t: Isotropic smoothness, default t

    Returns:
        AnalyticPrediction; Equality sides are numbers, Equivalence sides Brackets

    Raises:
        PredictionRefusedError: parameters outside the formula's validity region
    """
    t = float(parse_smoothness(t))
    iso_t = t if iso_t is None else float(parse_smoothness(iso_t))
    p = ExtendedExponent.parse(p, "p")
    q = ExtendedExponent.parse(q, "q")
    if grid is not None and grid.d != spec.d:
        raise GridMismatchError(f"spec has d={spec.d}, grid has d={grid.d}")
    return _PREDICTORS[spec.family](spec, t, iso_t, p, q, grid)


# ============================================================================
# DEFAULT GRIDS
# ============================================================================

_BOX_HALFWIDTH = {
    ExampleFamily.E1: 8.0 * math.pi / 7.0,
    ExampleFamily.E2: math.pi / 2.0,
    ExampleFamily.E3: 4.0 * math.pi,
    ExampleFamily.E4: 4.0 * math.pi,
    ExampleFamily.E5: 4.0 * math.pi,
}

# extra refinement of the first rung where |f|^p is not a trigonometric polynomial
_OVERSAMPLING = {ExampleFamily.E1: 2, ExampleFamily.E3: 2}


def witness_level(spec: ExampleSpec) -> int:
    """Partition level that covers the witness spectrum"""
    return 0 if spec.family is ExampleFamily.E6 else spec.ell


def witness_box(spec: ExampleSpec, box_multiplier: int = 1) -> float:
    """
    Box half-width R whose lattice carries every spike of the family

    An integer ``box_multiplier`` m divides the frequency step by m and keeps
    every spike on the lattice. E1 needs m > 7/(8·bump_width) before its
    bumps cover more than one lattice point; at m = 1 each bump is a single
    spike and the witness is the shifted lacunary polynomial.
    """
    if isinstance(box_multiplier, bool) or not isinstance(box_multiplier, int) or box_multiplier < 1:
        raise DomainError(f"box multiplier must be a positive integer, got {box_multiplier!r}")
    if spec.family is ExampleFamily.E6:
        base = 4.0 * math.pi * 2.0 ** spec.dilation
    elif spec.family is ExampleFamily.E2 and spec.first_level == 0:
        base = math.pi
    else:
        base = _BOX_HALFWIDTH[spec.family]
    return box_multiplier * base


def minimal_size(box_halfwidth: float, level: int) -> int:
    """Smallest power of two whose Nyquist bound nπ/(2R) fits the level"""
    n = 2
    while n * math.pi / (2.0 * box_halfwidth) < 1.5 * 2.0 ** level:
        n *= 2
    return n


def default_schedule(spec: ExampleSpec, levels: Optional[int] = None,
                     box_multiplier: int = 1) -> List[Tuple[int, float]]:
    """
    Refinement ladder for one witness

    E1–E5 refine n at fixed R from the smallest admissible size; E6 keeps the
    spacing fixed and doubles both n and R so the Schwartz tail is captured.
    The growth ladders of the harness use box_multiplier = 1.
    """
    levels = get_settings().ladder_levels if levels is None else levels
    R = witness_box(spec, box_multiplier)
    if spec.family is ExampleFamily.E6:
        n = 64 * 2 ** spec.dilation * box_multiplier
        return [(n * 2 ** i, R * 2 ** i) for i in range(levels)]
    n = minimal_size(R, witness_level(spec)) * _OVERSAMPLING.get(spec.family, 1)
    return [(n * 2 ** i, R) for i in range(levels)]
