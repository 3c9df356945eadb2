"""
Besov quasi-norms
Isotropic B^t_{p,q} and dominating mixed S^t_{p,q}B quasi-norms as block
ledgers, plus the empirical multiplier-constant probe
"""

import logging
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from core.config import get_settings
from core.errors import DomainError, GridMismatchError
from core.params import ExtendedExponent, SpaceFamily, parse_smoothness
from core.partition import (
    FrequencyGrid, FrequencyMask, Label, Partition, PartitionKind,
    build_cube_partition, build_tensor_partition, cube_mask, tensor_mask,
)
from core.signal import (
    ConvergenceMeta, GridFunction, apply_mask, ladder_meta, lp_quasinorm,
    synthesize_from_spectrum, validate_schedule,
)

logger = logging.getLogger(__name__)

_PARTITION_KIND = {
    SpaceFamily.ISO: PartitionKind.CUBE_ISO,
    SpaceFamily.MIXED: PartitionKind.TENSOR_MIXED,
}


# ============================================================================
# RESULT TYPES
# ============================================================================

def _label_text(label: Label) -> str:
    return ",".join(map(str, label)) if isinstance(label, tuple) else str(label)


def label_level(label: Label) -> int:
    """j for a cube label, |k̄| = k_1+…+k_d for a tensor label"""
    return sum(label) if isinstance(label, tuple) else int(label)


@dataclass(frozen=True)
class BlockReport:
    label: Label
    weight: float
    block_lp: float
    contribution: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": _label_text(self.label),
            "weight": self.weight,
            "block_lp": self.block_lp,
            "contribution": self.contribution,
        }


@dataclass(frozen=True)
class QuasiNormResult:
    """
    One quasi-norm evaluation with its full block ledger

    ``truncated_fraction`` is the share of spectral energy lying outside the
    cube covered by the partition; it is reported, never silently dropped.
    """

    space: SpaceFamily
    value: float
    blocks: Tuple[BlockReport, ...]
    t: float
    p_used: ExtendedExponent
    q_used: ExtendedExponent
    truncation_level: int
    truncated_fraction: float = 0.0
    meta: ConvergenceMeta = field(default_factory=ConvergenceMeta)

    @property
    def truncated(self) -> bool:
        return self.truncated_fraction > get_settings().truncation_tolerance

    @property
    def nonzero_blocks(self) -> List[BlockReport]:
        return [b for b in self.blocks if b.block_lp > 0.0]

    def ledger(self) -> pd.DataFrame:
        """One row per block: label, weight, block_lp, contribution"""
        return pd.DataFrame([b.to_dict() for b in self.blocks],
                            columns=["label", "weight", "block_lp", "contribution"])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "space": self.space.value,
            "value": self.value,
            "t": self.t,
            "p": self.p_used.to_json(),
            "q": self.q_used.to_json(),
            "truncation_level": self.truncation_level,
            "truncated_fraction": self.truncated_fraction,
            "blocks": [b.to_dict() for b in self.blocks],
            "meta": self.meta.to_dict(),
        }


def aggregate_ledger(contributions: Sequence[float], q: Any) -> float:
    """ℓ_q quasi-norm of the contributions, supremum at q = ∞"""
    exponent = ExtendedExponent.parse(q, "q")
    values = np.abs(np.asarray(contributions, dtype=float))
    if values.size == 0:
        return 0.0
    if exponent.is_infinite:
        return float(np.max(values))
    power = float(exponent)
    total = float(np.sum(values ** power))
    return total ** (1.0 / power) if total > 0.0 else 0.0


# ============================================================================
# QUASI-NORMS
# ============================================================================

def block_lp(f: GridFunction, mask: FrequencyMask, p: ExtendedExponent) -> float:
    """‖𝓕^{−1}[m·𝓕f]‖_p; zero without a transform when supports are disjoint"""
    index = f.support_index
    if index[0].size == 0 or not np.any(mask.values_at(index)):
        return 0.0
    value = lp_quasinorm(apply_mask(f, mask), p)
    return value if value >= get_settings().underflow_floor else 0.0


def truncated_fraction(f: GridFunction, partition: Partition) -> float:
    """Share of Σ|𝓕f|² at lattice points outside the partition's covered cube"""
    energy = np.abs(f.spectrum) ** 2
    total = float(np.sum(energy.ravel()))
    if total == 0.0:
        return 0.0
    outside = float(np.sum(energy[~partition.covered_cube()]))
    return outside / total


def besov_norm(f: GridFunction, space: SpaceFamily, t: Any, p: Any, q: Any,
               partition: Partition) -> QuasiNormResult:
    """Quasi-norm of f in the space family matching the partition"""
    space = SpaceFamily(space)
    if partition.kind is not _PARTITION_KIND[space]:
        raise DomainError(f"{space.value} norm needs a {_PARTITION_KIND[space].value} partition")
    if f.grid != partition.grid:
        raise GridMismatchError("function and partition live on different grids")

    t = float(parse_smoothness(t))
    p = ExtendedExponent.parse(p, "p")
    q = ExtendedExponent.parse(q, "q")

    blocks = []
    for mask in partition:
        weight = 2.0 ** (label_level(mask.label) * t)
        lp = block_lp(f, mask, p)
        blocks.append(BlockReport(mask.label, weight, lp, weight * lp))
        if lp > 0.0:
            logger.debug("%s block %s: lp=%.6g weight=%.6g", space.value, mask.label, lp, weight)

    outside = truncated_fraction(f, partition)
    if outside > get_settings().truncation_tolerance:
        logger.warning("%s norm truncated at level %d: %.3g of the energy lies outside coverage",
                       space.value, partition.max_level, outside)

    value = aggregate_ledger([b.contribution for b in blocks], q)
    meta = ConvergenceMeta(((f.grid.n, f.grid.box_halfwidth, value),))
    return QuasiNormResult(space, value, tuple(blocks), t, p, q,
                           partition.max_level, outside, meta)


def iso_besov_norm(f: GridFunction, t: Any, p: Any, q: Any, P: Partition) -> QuasiNormResult:
    """
    ‖f | B^t_{p,q}‖ = (Σ_j (2^{jt}‖𝓕^{−1}[ψ_j 𝓕f]‖_p)^q)^{1/q}

    Args:
        f: Grid function
        t: Smoothness
        p: Integrability, 0 < p ≤ ∞
        q: Summability, 0 < q ≤ ∞
        P: Cube partition on f's grid

    Returns:
        QuasiNormResult with the block ledger in label order
    """
    return besov_norm(f, SpaceFamily.ISO, t, p, q, P)


def mixed_besov_norm(f: GridFunction, t: Any, p: Any, q: Any, P: Partition) -> QuasiNormResult:
    """
    ‖f | S^t_{p,q}B‖ = (Σ_k̄ (2^{|k̄|t}‖𝓕^{−1}[φ_k̄ 𝓕f]‖_p)^q)^{1/q}

    Args:
        f: Grid function
        t: Smoothness
        p: Integrability, 0 < p ≤ ∞
        q: Summability, 0 < q ≤ ∞
        P: Tensor partition on f's grid

    Returns:
        QuasiNormResult with the block ledger in lexicographic label order
    """
    return besov_norm(f, SpaceFamily.MIXED, t, p, q, P)


@lru_cache(maxsize=4)
def partition_for(space: SpaceFamily, grid: FrequencyGrid, level: int) -> Partition:
    """Cached partition of the kind a space family needs"""
    if SpaceFamily(space) is SpaceFamily.ISO:
        return build_cube_partition(grid, level)
    return build_tensor_partition(grid, level)


def besov_norm_on_ladder(generator: Callable[[int, float], GridFunction], space: SpaceFamily,
                         t: Any, p: Any, q: Any, schedule: Sequence[Tuple[int, float]],
                         level: int, tol: Optional[float] = None) -> QuasiNormResult:
    """
    Quasi-norm evaluated along a refinement ladder at a fixed partition level

    Returns:
        The last level's result, carrying the ladder's ConvergenceMeta
    """
    schedule = validate_schedule(schedule)
    tol = get_settings().witness_tolerance if tol is None else tol

    results = []
    for n, R in schedule:
        f = generator(n, R)
        results.append(besov_norm(f, space, t, p, q, partition_for(space, f.grid, level)))

    meta = ladder_meta([(n, R, r.value) for (n, R), r in zip(schedule, results)], tol)
    if not meta.converged:
        logger.warning("%s norm ladder did not converge: delta=%g", space.value, meta.final_relative_delta)
    return replace(results[-1], meta=meta)


# ============================================================================
# MULTIPLIER PROBE
# ============================================================================

@dataclass(frozen=True)
class ProbeRatios:
    """Ratios of the multiplier probe; None marks an undefined (0/0) ratio"""

    ratio_ct3: Optional[float]
    ratio_ct4_normalized: Optional[float]


def _ratio(numerator: float, denominator: float) -> Optional[float]:
    return numerator / denominator if denominator > 0.0 else None


def _probe_scale(j: int, label: Tuple[int, ...], d: int, p: ExtendedExponent) -> float:
    u = 1.0 if p.is_infinite else min(1.0, float(p))
    return 2.0 ** ((j * d - sum(label)) * (1.0 / u - 1.0))


def multiplier_ratio_probe(f: GridFunction, j: int, k: Sequence[int], p: Any) -> ProbeRatios:
    """
    Empirical constants of the cube/tensor multiplier estimates

    ratio_ct3 compares ‖𝓕^{−1}ψ_jφ_k̄𝓕f‖_p with ‖𝓕^{−1}φ_k̄𝓕f‖_p; the
    normalized ct4 ratio compares it with ‖𝓕^{−1}ψ_j𝓕f‖_p divided by
    2^{(jd−|k̄|)(1/u−1)}, u = min(1, p).

    Raises:
        DomainError: j is outside the dyadic band max_i k_i ∈ {j−1, j, j+1}
    """
    p = ExtendedExponent.parse(p, "p")
    label = tuple(int(x) for x in k)
    if abs(max(label) - j) > 1:
        raise DomainError(f"level {j} cannot meet tensor block {label}")

    psi = cube_mask(f.grid, j)
    phi = tensor_mask(f.grid, label)
    tensor_block = apply_mask(f, phi)
    both = apply_mask(tensor_block, psi)

    numerator = lp_quasinorm(both, p)
    ct3 = _ratio(numerator, lp_quasinorm(tensor_block, p))
    ct4 = _ratio(numerator, lp_quasinorm(apply_mask(f, psi), p))
    if ct4 is not None:
        ct4 /= _probe_scale(j, label, f.grid.d, p)
    return ProbeRatios(ct3, ct4)


def probe_grid(j: int, d: int = 2) -> FrequencyGrid:
    """Smallest grid on [−π, π)^d whose lattice fits level j"""
    return FrequencyGrid(d, 4 * 2 ** j, math.pi)


def random_spectrum(grid: FrequencyGrid, rng: np.random.Generator) -> GridFunction:
    """Complex Gaussian spectrum on every lattice frequency"""
    values = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    return synthesize_from_spectrum(grid, values)


def multiplier_probe_sweep(p_values: Sequence[Any], j_values: Sequence[int], trials: int,
                           rng: np.random.Generator, d: int = 2) -> pd.DataFrame:
    """
    Maxima of the probe ratios over random spectra, tensor block k̄ = (j, 1, …, 1)

    The same random functions are reused for every exponent in ``p_values``.

    Returns:
        DataFrame with columns p, j, max_ratio_ct3, max_ratio_ct4, defined
    """
    if trials < 1:
        raise DomainError(f"trials must be positive, got {trials}")
    exponents = [ExtendedExponent.parse(p, "p") for p in p_values]

    rows = []
    for j in j_values:
        grid = probe_grid(j, d)
        label = (j,) + (1,) * (d - 1)
        psi = cube_mask(grid, j)
        phi = tensor_mask(grid, label)

        best = {str(p): [0.0, 0.0, 0] for p in exponents}
        for _ in range(trials):
            f = random_spectrum(grid, rng)
            psi_block = apply_mask(f, psi)
            tensor_block = apply_mask(f, phi)
            both = apply_mask(tensor_block, psi)
            for p in exponents:
                numerator = lp_quasinorm(both, p)
                ct3 = _ratio(numerator, lp_quasinorm(tensor_block, p))
                ct4 = _ratio(numerator, lp_quasinorm(psi_block, p))
                if ct3 is None or ct4 is None:
                    continue
                entry = best[str(p)]
                entry[0] = max(entry[0], ct3)
                entry[1] = max(entry[1], ct4 / _probe_scale(j, label, d, p))
                entry[2] += 1

        for p in exponents:
            ct3, ct4, defined = best[str(p)]
            rows.append({"p": str(p), "j": j, "max_ratio_ct3": ct3,
                         "max_ratio_ct4": ct4, "defined": defined})
        logger.info("probe j=%d done (%d trials)", j, trials)

    return pd.DataFrame(rows, columns=["p", "j", "max_ratio_ct3", "max_ratio_ct4", "defined"])


def trend_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Least-squares slope of y against x"""
    slope, _ = np.polyfit(np.asarray(x, dtype=float), np.asarray(y, dtype=float), 1)
    return float(slope)
