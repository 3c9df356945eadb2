"""
Smooth dyadic decompositions of unity on a discrete frequency lattice
Cube family ψ_j (isotropic), tensor family φ_k̄ (dominating mixed) and
the overlap index sets between them
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import partial, reduce
from itertools import product
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import fft as sp_fft

from core.config import get_settings
from core.errors import BesovLabError, GridMismatchError, DomainError, NyquistOverflowError

logger = logging.getLogger(__name__)

Label = Union[int, Tuple[int, ...]]


# ============================================================================
# FREQUENCY GRID
# ============================================================================

@dataclass(frozen=True)
class FrequencyGrid:
    """
    Uniform periodic box [−R, R)^d with n samples per axis

    Spatial points are x_m = −R + m·h with h = 2R/n; the dual lattice has
    spacing π/R and covers [−nπ/(2R), nπ/(2R))^d.
    """

    d: int
    n: int
    box_halfwidth: float

    def __post_init__(self):
        if isinstance(self.d, bool) or not isinstance(self.d, int) or self.d < 1:
            raise DomainError(f"grid dimension must be an integer ≥ 1, got {self.d!r}")
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 2 or self.n & (self.n - 1):
            raise DomainError(f"samples per axis must be a power of two ≥ 2, got {self.n!r}")
        R = float(self.box_halfwidth)
        if not (R > 0 and math.isfinite(R)):
            raise DomainError(f"box half-width must be a positive real, got {self.box_halfwidth!r}")
        object.__setattr__(self, "box_halfwidth", R)

    @property
    def spacing(self) -> float:
        return 2.0 * self.box_halfwidth / self.n

    @property
    def frequency_step(self) -> float:
        return math.pi / self.box_halfwidth

    @property
    def nyquist(self) -> float:
        return self.n * math.pi / (2.0 * self.box_halfwidth)

    @property
    def cell_volume(self) -> float:
        return self.spacing ** self.d

    @property
    def frequency_cell_volume(self) -> float:
        return self.frequency_step ** self.d

    @property
    def spectral_weight(self) -> float:
        """Factor w in f(x) = w·Σ F(ξ_k) e^{iξ_k x}"""
        return (2.0 * math.pi) ** (-self.d / 2.0) * self.frequency_cell_volume

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.n,) * self.d

    @property
    def size(self) -> int:
        return self.n ** self.d

    def axis_points(self) -> np.ndarray:
        return -self.box_halfwidth + self.spacing * np.arange(self.n)

    def axis_frequencies(self) -> np.ndarray:
        """Lattice frequencies in FFT order"""
        return 2.0 * math.pi * sp_fft.fftfreq(self.n, d=self.spacing)

    def broadcast_axes(self, values: np.ndarray) -> List[np.ndarray]:
        """One view of a 1-D axis array per dimension, shaped to broadcast"""
        views = []
        for axis in range(self.d):
            shape = [1] * self.d
            shape[axis] = self.n
            views.append(values.reshape(shape))
        return views

    def frequency_index(self, omega: float) -> int:
        """
        Lattice index of an exact lattice frequency

        Raises:
            DomainError: omega is not a lattice frequency
            NyquistOverflowError: omega lies outside the lattice window
        """
        ratio = omega / self.frequency_step
        k = int(round(ratio))
        if abs(ratio - k) > 1e-9 * max(1.0, abs(ratio)):
            raise DomainError(
                f"frequency {omega} is not on the lattice of spacing {self.frequency_step}")
        if not -self.n // 2 <= k < self.n // 2:
            raise NyquistOverflowError(
                f"frequency {omega} exceeds the lattice window ±{self.nyquist}")
        return k % self.n

    def fits_level(self, level: int) -> bool:
        """True when the level-``level`` dyadic band (up to 3·2^{level−1}) fits the lattice"""
        return 1.5 * 2.0 ** level <= self.nyquist

    def max_level(self) -> int:
        if not self.fits_level(0):
            raise NyquistOverflowError(f"grid Nyquist {self.nyquist} is below 3/2")
        return int(math.floor(math.log2(self.nyquist / 1.5) + 1e-12))

    def to_dict(self) -> Dict[str, float]:
        return {"d": self.d, "n": self.n, "R": self.box_halfwidth}


# ============================================================================
# GENERATOR
# ============================================================================

def _flat_top(x: np.ndarray) -> np.ndarray:
    """exp(−1/x) for x > 0, exactly 0 elsewhere"""
    x = np.asarray(x, dtype=float)
    positive = x > 0.0
    safe = np.where(positive, x, 1.0)
    return np.where(positive, np.exp(-1.0 / safe), 0.0)


def smooth_transition(x: np.ndarray) -> np.ndarray:
    """Infinitely smooth transition from 0 (x ≤ 0) to 1 (x ≥ 1)"""
    p = _flat_top(x)
    return p / (p + _flat_top(1.0 - np.asarray(x, dtype=float)))


def smooth_step(r: np.ndarray) -> np.ndarray:
    """Generator s: 1 for r ≤ 1, 0 for r ≥ 3/2, smooth and decreasing between"""
    return 1.0 - smooth_transition(2.0 * (np.asarray(r, dtype=float) - 1.0))


def dyadic_band(level: int, r: np.ndarray) -> np.ndarray:
    """s(r) for level 0, s(2^{−j}r) − s(2^{−j+1}r) for level j ≥ 1"""
    if level == 0:
        return smooth_step(r)
    scale = 2.0 ** -level
    return smooth_step(scale * r) - smooth_step(2.0 * scale * r)


# ============================================================================
# MASKS AND PARTITIONS
# ============================================================================

class PartitionKind(str, Enum):
    CUBE_ISO = "CubeIso"
    TENSOR_MIXED = "TensorMixed"


class FrequencyMask:
    """
    Real mask on the frequency lattice

    Stored densely, or evaluated on demand: tensor masks from their per-axis
    factors, cube masks from the radial profile of r = max_i |ξ_i|.
    """

    def __init__(self, label: Label, grid: FrequencyGrid, *,
                 samples: Optional[np.ndarray] = None,
                 axis_factors: Optional[Sequence[np.ndarray]] = None,
                 radial_profile: Optional[Callable[[np.ndarray], np.ndarray]] = None):
        if samples is None and axis_factors is None and radial_profile is None:
            raise DomainError("a mask needs samples, axis factors or a radial profile")
        self.label = label
        self.grid = grid
        self.axis_factors = tuple(axis_factors) if axis_factors is not None else None
        self.radial_profile = radial_profile
        self._samples = None
        if samples is not None:
            self._samples = np.asarray(samples, dtype=float)
            self._samples.setflags(write=False)

    @property
    def is_dense(self) -> bool:
        return self._samples is not None

    @property
    def is_tensor(self) -> bool:
        return self.axis_factors is not None

    @property
    def samples(self) -> np.ndarray:
        """Full lattice array (materialized on every call when not stored)"""
        if self._samples is not None:
            return self._samples
        if self.axis_factors is not None:
            views = [f.reshape([self.grid.n if i == axis else 1 for i in range(self.grid.d)])
                     for axis, f in enumerate(self.axis_factors)]
            return reduce(np.multiply, views) * np.ones(self.grid.shape)
        return self.radial_profile(_sup_radius(self.grid))

    def values_at(self, index: Tuple[np.ndarray, ...]) -> np.ndarray:
        """Mask values at the lattice points ``index`` (as returned by np.nonzero)"""
        if self._samples is not None:
            return self._samples[index]
        if self.axis_factors is not None:
            return reduce(np.multiply, [f[i] for f, i in zip(self.axis_factors, index)])
        freqs = np.abs(self.grid.axis_frequencies())
        r = reduce(np.maximum, [freqs[i] for i in index])
        return self.radial_profile(r)

    def materialize(self) -> "FrequencyMask":
        if self.is_dense:
            return self
        return FrequencyMask(self.label, self.grid, samples=self.samples,
                             axis_factors=self.axis_factors, radial_profile=self.radial_profile)

    def __repr__(self) -> str:
        storage = "dense" if self.is_dense else ("tensor" if self.is_tensor else "radial")
        return f"FrequencyMask(label={self.label!r}, {storage})"


def _sup_radius(grid: FrequencyGrid) -> np.ndarray:
    freqs = np.abs(grid.axis_frequencies())
    return reduce(np.maximum, grid.broadcast_axes(freqs)) * np.ones(grid.shape)


@dataclass(frozen=True)
class Partition:
    kind: PartitionKind
    grid: FrequencyGrid
    max_level: int
    masks: Tuple[FrequencyMask, ...]

    @property
    def labels(self) -> List[Label]:
        return [m.label for m in self.masks]

    @property
    def is_dense(self) -> bool:
        return all(m.is_dense for m in self.masks)

    def mask(self, label: Label) -> FrequencyMask:
        for m in self.masks:
            if m.label == label:
                return m
        raise DomainError(f"no mask labeled {label!r} in this partition")

    def __iter__(self) -> Iterator[FrequencyMask]:
        return iter(self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def covered_cube(self) -> np.ndarray:
        """Lattice points with sup_i|ξ_i| ≤ 2^max_level"""
        return _sup_radius(self.grid) <= 2.0 ** self.max_level

    def mask_sum(self) -> np.ndarray:
        total = np.zeros(self.grid.shape)
        for m in self.masks:
            total += m.samples
        return total

    def metadata(self) -> Dict[str, object]:
        return {
            "kind": self.kind.value,
            "max_level": self.max_level,
            "labels": [list(l) if isinstance(l, tuple) else l for l in self.labels],
            "grid": self.grid.to_dict(),
        }

    def export(self, path) -> None:
        """Write all masks as one (count, n, …, n) float64 tensor plus a JSON sidecar"""
        from core.utils import write_tensor_container

        stacked = np.stack([m.samples for m in self.masks])
        write_tensor_container(path, stacked, self.metadata())


def _check_level(grid: FrequencyGrid, level: int) -> None:
    if isinstance(level, bool) or not isinstance(level, int) or level < 0:
        raise DomainError(f"partition level must be a non-negative integer, got {level!r}")
    if not grid.fits_level(level):
        raise NyquistOverflowError(
            f"level {level} needs Nyquist ≥ {1.5 * 2 ** level}, grid has {grid.nyquist}")


def _fits_budget(count: int, grid: FrequencyGrid) -> bool:
    return count * grid.size * 8 <= get_settings().mask_memory_budget_bytes


def build_cube_partition(grid: FrequencyGrid, J: int) -> Partition:
    """
    Cube partition ψ_0 … ψ_J

    Args:
        grid: Frequency grid
        J: Top level; 3·2^{J−1} must not exceed the grid's Nyquist bound

    Returns:
        Partition of kind CubeIso

    Raises:
        NyquistOverflowError: J too large for the grid
    """
    _check_level(grid, J)
    dense = _fits_budget(J + 1, grid)
    radius = _sup_radius(grid) if dense else None

    masks = []
    for j in range(J + 1):
        profile = partial(dyadic_band, j)
        samples = profile(radius) if dense else None
        masks.append(FrequencyMask(j, grid, samples=samples, radial_profile=profile))

    logger.debug("Cube partition J=%d on %s (%s)", J, grid, "dense" if dense else "on demand")
    return Partition(PartitionKind.CUBE_ISO, grid, J, tuple(masks))


def cube_mask(grid: FrequencyGrid, level: int) -> FrequencyMask:
    """Single on-demand cube mask ψ_level"""
    _check_level(grid, level)
    return FrequencyMask(level, grid, radial_profile=partial(dyadic_band, level))


def tensor_mask(grid: FrequencyGrid, label: Sequence[int]) -> FrequencyMask:
    """Single factored tensor mask φ_label"""
    label = tuple(int(k) for k in label)
    if len(label) != grid.d:
        raise DomainError(f"tensor label {label} has {len(label)} entries, grid has d={grid.d}")
    for k in label:
        _check_level(grid, k)
    freqs = np.abs(grid.axis_frequencies())
    return FrequencyMask(label, grid, axis_factors=[dyadic_band(k, freqs) for k in label])


def axis_bands(grid: FrequencyGrid, K: int) -> List[np.ndarray]:
    """1-D masks φ_0 … φ_K on one axis of the lattice"""
    freqs = np.abs(grid.axis_frequencies())
    return [dyadic_band(k, freqs) for k in range(K + 1)]


def build_tensor_partition(grid: FrequencyGrid, K: int) -> Partition:
    """
    Tensor partition φ_k̄ = Π_i φ_{k_i}(ξ_i) for k̄ ∈ {0..K}^d

    Args:
        grid: Frequency grid
        K: Top level per axis

    Returns:
        Partition of kind TensorMixed, masks in lexicographic label order
    """
    _check_level(grid, K)
    bands = axis_bands(grid, K)
    dense = _fits_budget((K + 1) ** grid.d, grid)

    masks = []
    for label in product(range(K + 1), repeat=grid.d):
        mask = FrequencyMask(label, grid, axis_factors=[bands[k] for k in label])
        masks.append(mask.materialize() if dense else mask)

    logger.debug("Tensor partition K=%d on %s (%s)", K, grid, "dense" if dense else "factored")
    return Partition(PartitionKind.TENSOR_MIXED, grid, K, tuple(masks))


# ============================================================================
# OVERLAP SETS
# ============================================================================

@dataclass(frozen=True)
class OverlapSets:
    delta: Dict[int, FrozenSet[Tuple[int, ...]]]
    square: Dict[Tuple[int, ...], FrozenSet[int]]

    def to_dict(self) -> Dict[str, object]:
        return {
            "delta": {str(j): sorted(list(k) for k in ks) for j, ks in self.delta.items()},
            "square": {",".join(map(str, k)): sorted(js) for k, js in self.square.items()},
        }


def _achievable_maxima(axis_values: Sequence[np.ndarray]) -> np.ndarray:
    """Values of max_i|ξ_i| attained on a product of per-axis supports"""
    if any(v.size == 0 for v in axis_values):
        return np.empty(0)
    floor = max(v.min() for v in axis_values)
    candidates = np.unique(np.concatenate(axis_values))
    return candidates[candidates >= floor]


def overlap_sets(cube: Partition, tensor: Partition) -> OverlapSets:
    """
    Index sets Δ_j = {k̄ : supp ψ_j ∩ supp φ_k̄ ≠ ∅} and their transposes □_k̄

    Supports are lattice supports at the configured threshold. The product
    structure of φ_k̄ reduces each intersection test to the set of values
    max_i|ξ_i| attainable inside the box of per-axis supports.

    Raises:
        GridMismatchError: partitions built on different grids
        BesovLabError: a computed pair violates max_i k_i ∈ {j−1, j, j+1}
    """
    if cube.grid != tensor.grid:
        raise GridMismatchError("overlap sets need both partitions on the same grid")
    if cube.kind is not PartitionKind.CUBE_ISO or tensor.kind is not PartitionKind.TENSOR_MIXED:
        raise DomainError("overlap_sets expects a cube partition and a tensor partition")

    threshold = get_settings().support_threshold
    freqs = np.abs(cube.grid.axis_frequencies())
    bands = axis_bands(tensor.grid, tensor.max_level)
    axis_support = [np.unique(freqs[band > threshold]) for band in bands]

    delta: Dict[int, set] = {j: set() for j in range(cube.max_level + 1)}
    square: Dict[Tuple[int, ...], set] = {label: set() for label in tensor.labels}

    for label in tensor.labels:
        maxima = _achievable_maxima([axis_support[k] for k in label])
        if maxima.size == 0:
            continue
        for j in range(cube.max_level + 1):
            if np.any(dyadic_band(j, maxima) > threshold):
                top = max(label)
                if abs(top - j) > 1:
                    raise BesovLabError(
                        f"overlap ({j}, {label}) lies outside the dyadic band")
                delta[j].add(label)
                square[label].add(j)

    return OverlapSets(
        delta={j: frozenset(ks) for j, ks in delta.items()},
        square={k: frozenset(js) for k, js in square.items()},
    )
