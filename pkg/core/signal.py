"""
Sampled functions on a periodic box
Transforms, frequency masking, L_p quasi-norm quadrature and refinement ladders
"""

import logging
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Callable, Dict, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import fft as sp_fft

from core.config import get_settings
from core.errors import DomainError, GridMismatchError
from core.params import ExtendedExponent
from core.partition import FrequencyGrid, FrequencyMask

logger = logging.getLogger(__name__)

CoefficientRule = Union[np.ndarray, Callable[..., np.ndarray]]


# ============================================================================
# TRANSFORMS
# ============================================================================

def _checkerboard(grid: FrequencyGrid) -> np.ndarray:
    """(−1)^{k_1+…+k_d}: the phase e^{−iξ_k R} of the box offset"""
    signs = np.where(np.arange(grid.n) % 2 == 0, 1.0, -1.0)
    return reduce(np.multiply, grid.broadcast_axes(signs)) * np.ones(grid.shape)


def spectrum_to_samples(grid: FrequencyGrid, spectrum: np.ndarray) -> np.ndarray:
    """f(x_m) = (2π)^{−d/2}(π/R)^d Σ_k F(ξ_k) e^{iξ_k x_m}"""
    coefficients = spectrum * (grid.spectral_weight * _checkerboard(grid))
    return sp_fft.ifftn(coefficients, norm="forward", workers=get_settings().fft_workers)


def samples_to_spectrum(grid: FrequencyGrid, samples: np.ndarray) -> np.ndarray:
    """
    Inverse of spectrum_to_samples on the lattice

    Entries below spectral_noise_floor·max|F| are set to exactly 0, so a
    function read from samples keeps the support it was synthesized with.
    """
    settings = get_settings()
    coefficients = sp_fft.fftn(samples, norm="forward", workers=settings.fft_workers)
    spectrum = coefficients * (_checkerboard(grid) / grid.spectral_weight)
    magnitude = np.abs(spectrum)
    peak = float(np.max(magnitude)) if magnitude.size else 0.0
    if peak > 0.0:
        spectrum[magnitude < settings.spectral_noise_floor * peak] = 0.0
    return spectrum


# ============================================================================
# GRID FUNCTIONS
# ============================================================================

class GridFunction:
    """
    Complex samples on the spatial lattice of a FrequencyGrid

    Either side may be supplied; the other is computed on first access and
    cached. Arrays are read-only once stored.
    """

    def __init__(self, grid: FrequencyGrid, *,
                 samples: Optional[np.ndarray] = None,
                 spectrum: Optional[np.ndarray] = None):
        if samples is None and spectrum is None:
            raise DomainError("a grid function needs samples or a spectrum")
        self.grid = grid
        self._samples = self._freeze(samples)
        self._spectrum = self._freeze(spectrum)
        self._support = None

    def _freeze(self, values: Optional[np.ndarray]) -> Optional[np.ndarray]:
        if values is None:
            return None
        array = np.array(values, dtype=np.complex128)
        if array.shape != self.grid.shape:
            raise GridMismatchError(f"array shape {array.shape} does not match grid {self.grid.shape}")
        array.setflags(write=False)
        return array

    @classmethod
    def from_samples(cls, grid: FrequencyGrid, samples: np.ndarray) -> "GridFunction":
        return cls(grid, samples=samples)

    @classmethod
    def from_spectrum(cls, grid: FrequencyGrid, spectrum: np.ndarray) -> "GridFunction":
        return cls(grid, spectrum=spectrum)

    @classmethod
    def zeros(cls, grid: FrequencyGrid) -> "GridFunction":
        zero = np.zeros(grid.shape, dtype=np.complex128)
        return cls(grid, samples=zero, spectrum=zero)

    @property
    def samples(self) -> np.ndarray:
        if self._samples is None:
            self._samples = self._freeze(spectrum_to_samples(self.grid, self._spectrum))
        return self._samples

    @property
    def spectrum(self) -> np.ndarray:
        if self._spectrum is None:
            self._spectrum = self._freeze(samples_to_spectrum(self.grid, self._samples))
        return self._spectrum

    @property
    def support_index(self) -> Tuple[np.ndarray, ...]:
        """Lattice indices where the spectrum is nonzero"""
        if self._support is None:
            self._support = np.nonzero(self.spectrum)
        return self._support

    def spectral_energy(self) -> float:
        """Σ|F(ξ_k)|²·(π/R)^d, equal to ‖f‖_2² by Parseval"""
        return float(np.sum(np.abs(self.spectrum).ravel() ** 2) * self.grid.frequency_cell_volume)

    def scaled(self, factor: complex) -> "GridFunction":
        return GridFunction(self.grid, spectrum=self.spectrum * factor)

    def __add__(self, other: "GridFunction") -> "GridFunction":
        if not isinstance(other, GridFunction):
            return NotImplemented
        if other.grid != self.grid:
            raise GridMismatchError("cannot add grid functions on different grids")
        return GridFunction(self.grid, spectrum=self.spectrum + other.spectrum)

    def export(self, path) -> None:
        """Interleaved real/imag float64 samples plus a JSON sidecar"""
        from core.utils import write_tensor_container

        interleaved = np.stack([self.samples.real, self.samples.imag], axis=-1)
        metadata = {**self.grid.to_dict(), "layout": "interleaved-complex"}
        write_tensor_container(path, interleaved, metadata)

    @classmethod
    def load(cls, path) -> "GridFunction":
        from core.utils import read_tensor_container

        array, metadata = read_tensor_container(path)
        try:
            grid = FrequencyGrid(int(metadata["d"]), int(metadata["n"]), float(metadata["R"]))
        except KeyError as e:
            raise DomainError(f"grid function sidecar lacks {e}") from e
        if array.shape != grid.shape + (2,):
            raise GridMismatchError(f"container shape {array.shape} does not match {grid}")
        return cls(grid, samples=array[..., 0] + 1j * array[..., 1])

    def __repr__(self) -> str:
        return f"GridFunction(d={self.grid.d}, n={self.grid.n}, R={self.grid.box_halfwidth:g})"


def _evaluate_rule(grid: FrequencyGrid, coeff: CoefficientRule) -> np.ndarray:
    if callable(coeff):
        axes = grid.broadcast_axes(grid.axis_frequencies())
        values = np.asarray(coeff(*axes), dtype=np.complex128)
        values = np.broadcast_to(values, grid.shape)
    else:
        values = np.asarray(coeff, dtype=np.complex128)
        if values.shape != grid.shape:
            raise GridMismatchError(f"coefficient array {values.shape} does not match {grid.shape}")
    if not np.all(np.isfinite(values)):
        raise DomainError("coefficient rule is not bounded on the lattice")
    return values


def synthesize_from_spectrum(grid: FrequencyGrid, coeff: CoefficientRule) -> GridFunction:
    """
    Grid function whose spectrum is the sampled coefficient rule

    Args:
        grid: Frequency grid
        coeff: Array in FFT order, or a callable of the broadcast frequency
            axes (ξ_1, …, ξ_d) returning the spectrum values

    Returns:
        GridFunction with the given spectrum
    """
    return GridFunction.from_spectrum(grid, _evaluate_rule(grid, coeff))


def synthesize_modes(grid: FrequencyGrid, modes: Mapping[Tuple[float, ...], complex]) -> GridFunction:
    """
    Trigonometric polynomial Σ a·e^{iω·x} over exact lattice frequencies ω

    Args:
        grid: Frequency grid
        modes: Map from frequency vector to sample amplitude a

    Raises:
        DomainError: a frequency is off the lattice or has the wrong length
        NyquistOverflowError: a frequency exceeds the lattice window
    """
    spectrum = np.zeros(grid.shape, dtype=np.complex128)
    for omega, amplitude in modes.items():
        if len(omega) != grid.d:
            raise DomainError(f"frequency {omega} has {len(omega)} components, grid has d={grid.d}")
        index = tuple(grid.frequency_index(w) for w in omega)
        spectrum[index] += amplitude / grid.spectral_weight
    return GridFunction.from_spectrum(grid, spectrum)


def apply_mask(f: GridFunction, m: FrequencyMask) -> GridFunction:
    """
    Frequency multiplier 𝓕^{−1}[m·𝓕f]

    Raises:
        GridMismatchError: f and m live on different grids
    """
    if f.grid != m.grid:
        raise GridMismatchError(f"mask {m.label!r} and function live on different grids")
    index = f.support_index
    if m.is_dense or index[0].size * 2 > f.grid.size:
        return GridFunction.from_spectrum(f.grid, f.spectrum * m.samples)
    masked = np.zeros(f.grid.shape, dtype=np.complex128)
    masked[index] = f.spectrum[index] * m.values_at(index)
    return GridFunction.from_spectrum(f.grid, masked)


# ============================================================================
# QUADRATURE
# ============================================================================

def lp_of_samples(values: np.ndarray, cell_volume: float, p: Any) -> float:
    """(Σ|v|^p·cell)^{1/p}, or max|v| at p = ∞; pairwise-summed"""
    exponent = ExtendedExponent.parse(p, "p")
    magnitude = np.abs(np.asarray(values)).ravel()
    if magnitude.size == 0:
        return 0.0
    if exponent.is_infinite:
        return float(np.max(magnitude))
    power = float(exponent)
    total = float(np.sum(magnitude ** power)) * cell_volume
    if total == 0.0:
        return 0.0
    return total ** (1.0 / power)


def lp_quasinorm(f: GridFunction, p: Any) -> float:
    """
    L_p quasi-norm of a grid function over its box, 0 < p ≤ ∞

    Finite p uses the Riemann sum with cell volume h^d; p = ∞ is the
    maximum modulus over the lattice.
    """
    return lp_of_samples(f.samples, f.grid.cell_volume, p)


# ============================================================================
# REFINEMENT LADDERS
# ============================================================================

@dataclass(frozen=True)
class ConvergenceMeta:
    levels: Tuple[Tuple[int, float, float], ...] = field(default_factory=tuple)
    converged: bool = False
    final_relative_delta: float = math.nan
    tolerance: float = math.nan

    def to_dict(self) -> Dict[str, Any]:
        return {
            "levels": [{"n": n, "R": R, "value": v} for n, R, v in self.levels],
            "converged": self.converged,
            "final_relative_delta": self.final_relative_delta,
            "tolerance": self.tolerance,
        }


def relative_delta(previous: float, current: float) -> float:
    scale = max(abs(previous), abs(current))
    if scale == 0.0:
        return 0.0
    return abs(current - previous) / scale


def ladder_meta(levels: Sequence[Tuple[int, float, float]], tol: float) -> ConvergenceMeta:
    """Convergence metadata of an evaluated ladder"""
    levels = tuple(levels)
    if len(levels) < 2:
        return ConvergenceMeta(levels, False, math.nan, tol)
    delta = relative_delta(levels[-2][2], levels[-1][2])
    return ConvergenceMeta(levels, delta < tol, delta, tol)


def validate_schedule(schedule: Sequence[Tuple[int, float]]) -> Tuple[Tuple[int, float], ...]:
    """Resolution strictly increasing, extent non-decreasing"""
    schedule = tuple((int(n), float(R)) for n, R in schedule)
    if not schedule:
        raise DomainError("refinement schedule is empty")
    for (n0, R0), (n1, R1) in zip(schedule, schedule[1:]):
        if n1 <= n0 or R1 < R0:
            raise DomainError(f"schedule must refine: ({n0}, {R0}) then ({n1}, {R1})")
    return schedule


def refine_until_converged(generator: Callable[[int, float], GridFunction], p: Any, tol: float,
                           schedule: Sequence[Tuple[int, float]],
                           evaluate: Optional[Callable[[GridFunction], float]] = None
                           ) -> Tuple[float, ConvergenceMeta]:
    """
    Evaluate a functional along a refinement ladder

    Args:
        generator: Builds the grid function for a given (n, R)
        p: Exponent for the default functional lp_quasinorm(·, p)
        tol: Relative tolerance between the last two levels
        schedule: Ladder of (n, R) pairs
        evaluate: Optional functional replacing the L_p quasi-norm

    Returns:
        (value at the last level, ConvergenceMeta)
    """
    schedule = validate_schedule(schedule)
    if evaluate is None:
        exponent = ExtendedExponent.parse(p, "p")
        evaluate = lambda g: lp_quasinorm(g, exponent)  # noqa: E731

    levels = []
    for n, R in schedule:
        value = float(evaluate(generator(n, R)))
        logger.debug("ladder level n=%d R=%g value=%.17g", n, R, value)
        levels.append((n, R, value))

    meta = ladder_meta(levels, tol)
    if not meta.converged:
        logger.warning("ladder did not converge: delta=%g tol=%g", meta.final_relative_delta, tol)
    return levels[-1][2], meta
