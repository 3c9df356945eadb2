import math
from fractions import Fraction

import numpy as np
import pandas as pd
import pytest

from core.errors import (
    DomainError, GridMismatchError, NyquistOverflowError, PredictionRefusedError,
    WitnessConstructionError,
)
from core.examples import (
    Bracket, Exactness, ExampleFamily, ExampleSpec, annulus_profile, default_schedule,
    family_labels, make_example, minimal_size, mollifier, nabla_set, positivity_floor,
    predicted_norms, witness_box, witness_level,
)
from core.harness import WITNESS_COLUMNS, GrowthModel, fit_growth
from core.norms import iso_besov_norm, mixed_besov_norm
from core.partition import FrequencyGrid, build_cube_partition, build_tensor_partition
from core.signal import lp_quasinorm, refine_until_converged


def _norms(spec, grid, t, p, q, iso_t=None):
    level = witness_level(spec)
    f = make_example(spec, grid)
    iso = iso_besov_norm(f, t if iso_t is None else iso_t, p, q, build_cube_partition(grid, level))
    mixed = mixed_besov_norm(f, t, p, q, build_tensor_partition(grid, level))
    return iso, mixed


def _first_rung(spec):
    n, R = default_schedule(spec)[0]
    return FrequencyGrid(spec.d, n, R)


# ============================================================================
# NUMERIC NORMS AGAINST CLOSED FORMS
# ============================================================================

def test_shifted_bump_single_term_matches_prediction():
    spec = ExampleSpec(ExampleFamily.E1, 3, (0.0, 0.0, 1.0))
    grid = _first_rung(spec)
    iso, mixed = _norms(spec, grid, -1, 2, 2)
    prediction = predicted_norms(spec, -1, 2, 2, grid=grid)

    assert prediction.exactness is Exactness.EQUALITY
    assert iso.value == pytest.approx(prediction.iso_value, rel=1e-9)
    assert mixed.value == pytest.approx(prediction.mixed_value, rel=1e-9)
    assert iso.value / mixed.value == pytest.approx(2.0 ** 3, rel=1e-9)


def test_shifted_bump_several_terms_gives_a_bracket():
    spec = ExampleSpec(ExampleFamily.E1, 4, (1.0,) * 4)
    grid = _first_rung(spec)
    prediction = predicted_norms(spec, 0, 2, 4, grid=grid)
    assert prediction.exactness is Exactness.EQUIVALENCE
    assert isinstance(prediction.iso_value, Bracket)
    assert prediction.iso_value.growth == pytest.approx(2.0)

    _, mixed = _norms(spec, grid, 0, 2, 4)
    assert mixed.value == pytest.approx(prediction.mixed_value, rel=1e-9)


def test_annulus_single_term_matches_prediction():
    spec = ExampleSpec(ExampleFamily.E3, 2, (0.0, 0.0, 1.0))
    grid = _first_rung(spec)
    iso, mixed = _norms(spec, grid, "1/2", "3/2", 2)
    prediction = predicted_norms(spec, "1/2", "3/2", 2, grid=grid)
    assert iso.value == pytest.approx(prediction.iso_value, rel=1e-9)
    assert mixed.value == pytest.approx(prediction.mixed_value, rel=1e-9)


def test_annulus_chain_matches_prediction():
    spec = ExampleSpec(ExampleFamily.E4, 3, (1.0, 1.0, 1.0))
    grid = _first_rung(spec)
    iso, mixed = _norms(spec, grid, 1, 2, 2)
    prediction = predicted_norms(spec, 1, 2, 2, grid=grid)
    assert prediction.exactness is Exactness.EQUALITY
    assert iso.value == pytest.approx(prediction.iso_value, rel=1e-9)
    assert mixed.value == pytest.approx(prediction.mixed_value, rel=1e-9)
    assert len(iso.nonzero_blocks) == 3


def test_diagonal_chain_matches_prediction():
    spec = ExampleSpec(ExampleFamily.E5, 2, (0.0, 1.0))
    grid = _first_rung(spec)
    iso, mixed = _norms(spec, grid, "1/2", 2, 2, iso_t=1)
    prediction = predicted_norms(spec, "1/2", 2, 2, grid=grid, iso_t=1)
    assert iso.value == pytest.approx(prediction.iso_value, rel=1e-9)
    assert mixed.value == pytest.approx(prediction.mixed_value, rel=1e-9)


def test_lacunary_prediction():
    spec = ExampleSpec(ExampleFamily.E2, 5, (1.0,) * 5)
    prediction = predicted_norms(spec, 0, "inf", 2)
    assert prediction.iso_value == 5.0
    assert prediction.mixed_value == pytest.approx(math.sqrt(5))

    iso, mixed = _norms(spec, _first_rung(spec), 0, "inf", 2)
    assert iso.value == pytest.approx(5.0, rel=1e-12)
    assert mixed.value == pytest.approx(math.sqrt(5), rel=1e-12)


# ============================================================================
# DILATED PROFILE
# ============================================================================

def test_dilation_reuses_the_base_samples():
    base = make_example(ExampleSpec(ExampleFamily.E6, 1), FrequencyGrid(2, 64, 4 * math.pi))
    dilated = make_example(ExampleSpec(ExampleFamily.E6, 1, dilation=1), FrequencyGrid(2, 64, 8 * math.pi))
    np.testing.assert_array_equal(dilated.samples, base.samples)


def test_dilated_profile_support_shrinks():
    grid = FrequencyGrid(2, 64, 8 * math.pi)
    f = make_example(ExampleSpec(ExampleFamily.E6, 1, dilation=1), grid)
    freqs = grid.axis_frequencies()
    X, Y = np.meshgrid(freqs, freqs, indexing="ij")
    support = np.abs(f.spectrum) > 0.0
    assert support.any()
    assert np.all(np.hypot(X[support], Y[support]) <= 0.5)


@pytest.mark.parametrize("p", [1, 2, "inf"])
def test_dilated_profile_norms_scale_with_dilation(p):
    spec = ExampleSpec(ExampleFamily.E6, 1, dilation=1)
    grid = FrequencyGrid(2, 64, 8 * math.pi)
    iso, mixed = _norms(spec, grid, "1/2", p, 2)
    prediction = predicted_norms(spec, "1/2", p, 2, grid=grid)
    assert iso.value == pytest.approx(prediction.iso_value, rel=1e-12)
    assert mixed.value == pytest.approx(prediction.mixed_value, rel=1e-12)

    base_grid = FrequencyGrid(2, 64, 4 * math.pi)
    base, _ = _norms(ExampleSpec(ExampleFamily.E6, 1), base_grid, "1/2", p, 2)
    factor = 1.0 if p == "inf" else 2.0 ** (2.0 / float(p))
    assert iso.value == pytest.approx(factor * base.value, rel=1e-12)


def test_dilated_profile_ladder_converges_on_the_line():
    spec = ExampleSpec(ExampleFamily.E6, 1, d=1, dilation=2)
    schedule = [(256, 32 * math.pi), (512, 64 * math.pi), (1024, 128 * math.pi)]
    value, meta = refine_until_converged(lambda n, R: make_example(spec, FrequencyGrid(1, n, R)),
                                         2, 1e-4, schedule)
    assert meta.converged
    assert value > 0.0


# ============================================================================
# CONSTRUCTION ERRORS
# ============================================================================

def test_spike_centres_must_be_lattice_frequencies():
    spec = ExampleSpec(ExampleFamily.E1, 3, (1.0, 1.0, 1.0))
    with pytest.raises(DomainError):
        make_example(spec, FrequencyGrid(2, 64, math.pi))


def test_level_must_fit_the_grid():
    spec = ExampleSpec(ExampleFamily.E2, 5, (1.0,) * 5)
    with pytest.raises(NyquistOverflowError):
        make_example(spec, FrequencyGrid(2, 16, math.pi / 2))


def test_dimension_must_match(grid1):
    with pytest.raises(GridMismatchError):
        make_example(ExampleSpec(ExampleFamily.E6, 1), grid1)


def test_coefficient_count_must_match_labels():
    with pytest.raises(WitnessConstructionError):
        ExampleSpec(ExampleFamily.E1, 3, (1.0, 1.0))
    with pytest.raises(WitnessConstructionError):
        ExampleSpec(ExampleFamily.E6, 1, (1.0,))


@pytest.mark.parametrize("kwargs", [
    {"family": ExampleFamily.E1, "ell": 2, "coeffs": (1.0, 1.0), "d": 1},
    {"family": ExampleFamily.E1, "ell": 2, "coeffs": (1.0, 1.0), "bump_width": 0.2},
    {"family": ExampleFamily.E2, "ell": 2, "coeffs": (1.0, 1.0), "first_level": 2},
    {"family": ExampleFamily.E3, "ell": 1, "coeffs": (1.0,), "first_level": 0},
    {"family": ExampleFamily.E4, "ell": 0, "coeffs": ()},
    {"family": ExampleFamily.E4, "ell": 1, "coeffs": (math.inf,)},
])
def test_invalid_specs(kwargs):
    with pytest.raises(DomainError):
        ExampleSpec(**kwargs)


def test_annulus_profile_misses_a_coarse_lattice():
    # spacing 1 has no interior lattice point in 3/2 < |ξ| < 2
    spec = ExampleSpec(ExampleFamily.E4, 2, (1.0, 1.0))
    with pytest.raises(WitnessConstructionError):
        make_example(spec, FrequencyGrid(2, 32, math.pi))


def test_vanishing_bump_transform_is_rejected():
    # spikes at ±7/8 invert to a cosine with a lattice zero at x = 4π/7
    spec = ExampleSpec(ExampleFamily.E1, 2, (0.0, 1.0))
    grid = FrequencyGrid(2, 64, witness_box(spec))
    axis = np.zeros(grid.n)
    axis[grid.frequency_index(7.0 / 8.0)] = 0.5
    axis[grid.frequency_index(-7.0 / 8.0)] = 0.5
    with pytest.raises(WitnessConstructionError):
        positivity_floor(spec, grid, axis)


def test_box_multiplier_must_be_a_positive_integer():
    spec = ExampleSpec(ExampleFamily.E1, 2, (0.0, 1.0))
    for bad in (0, -1, True, 2.0):
        with pytest.raises(DomainError):
            witness_box(spec, box_multiplier=bad)
    assert witness_box(spec, box_multiplier=4) == pytest.approx(4 * 8 * math.pi / 7)


# ============================================================================
# RESOLVED BUMPS
# ============================================================================

def _resolved_grid(spec):
    return FrequencyGrid(2, 512, witness_box(spec, box_multiplier=32))


def test_wide_box_resolves_the_bump():
    spec = ExampleSpec(ExampleFamily.E1, 2, (0.0, 1.0))
    f = make_example(spec, _resolved_grid(spec))
    assert np.count_nonzero(f.spectrum) == 25

    at_unit_box = make_example(spec, _first_rung(spec))
    assert np.count_nonzero(at_unit_box.spectrum) == 1


def test_bump_width_changes_the_resolved_witness():
    narrow = ExampleSpec(ExampleFamily.E1, 2, (0.0, 1.0))
    wide = ExampleSpec(ExampleFamily.E1, 2, (0.0, 1.0), bump_width=0.1)
    grid = _resolved_grid(narrow)
    f, g = make_example(narrow, grid), make_example(wide, grid)
    assert np.count_nonzero(g.spectrum) > np.count_nonzero(f.spectrum)
    assert not np.allclose(f.samples, g.samples)


def test_resolved_bump_matches_prediction():
    spec = ExampleSpec(ExampleFamily.E1, 2, (0.0, 1.0))
    grid = _resolved_grid(spec)
    iso, mixed = _norms(spec, grid, -1, 2, 2)
    prediction = predicted_norms(spec, -1, 2, 2, grid=grid)
    assert iso.value == pytest.approx(prediction.iso_value, rel=1e-9)
    assert mixed.value == pytest.approx(prediction.mixed_value, rel=1e-9)
    assert iso.value / mixed.value == pytest.approx(4.0, rel=1e-9)


def test_resolved_bump_transform_stays_positive():
    spec = ExampleSpec(ExampleFamily.E1, 2, (0.0, 1.0))
    grid = _resolved_grid(spec)
    bump = mollifier(grid.axis_frequencies() / spec.bump_width)
    assert np.count_nonzero(bump) == 5
    assert positivity_floor(spec, grid, bump) > 0.0


# ============================================================================
# PREDICTIONS AND SPECS
# ============================================================================

def test_lacunary_prediction_is_refused_off_its_region():
    spec = ExampleSpec(ExampleFamily.E2, 2, (1.0, 1.0))
    with pytest.raises(PredictionRefusedError):
        predicted_norms(spec, 0, 2, 2)
    with pytest.raises(PredictionRefusedError):
        predicted_norms(ExampleSpec(ExampleFamily.E2, 2, (1.0, -1.0)), 0, "inf", 2)


def test_quadrature_predictions_need_a_grid():
    with pytest.raises(PredictionRefusedError):
        predicted_norms(ExampleSpec(ExampleFamily.E1, 2, (0.0, 1.0)), 0, 2, 2)


def test_refusal_is_a_domain_error():
    with pytest.raises(DomainError):
        predicted_norms(ExampleSpec(ExampleFamily.E2, 1, (1.0,)), 0, 1, 1)


def test_spec_json_round_trip():
    spec = ExampleSpec(ExampleFamily.E2, 3, (1.0, 0.5, 0.25), first_level=1)
    assert ExampleSpec.from_json(spec.to_json()) == spec
    with pytest.raises(DomainError):
        ExampleSpec.from_json("{not json")
    with pytest.raises(DomainError):
        ExampleSpec.from_dict({"family": "E2", "ell": 1, "colour": "red"})


def test_labels():
    assert nabla_set(2, 2) == [(1, 2), (2, 1), (2, 2)]
    assert family_labels(ExampleFamily.E2, 3, 2, first_level=0) == [0, 1, 2, 3]
    assert family_labels(ExampleFamily.E5, 2, 3) == [1, 2]
    assert family_labels(ExampleFamily.E6, 4, 2) == []


def test_annulus_profile_support():
    x = np.array([1.4, 1.5, 1.75, 2.0, -1.75, 2.1])
    values = annulus_profile(x)
    assert values[0] == 0.0 and values[1] == 0.0 and values[3] == 0.0 and values[5] == 0.0
    assert values[2] > 0.0 and values[2] == values[4]


def test_default_schedules():
    e1 = ExampleSpec(ExampleFamily.E1, 3, (0.0, 0.0, 1.0))
    assert default_schedule(e1) == [(64, 8 * math.pi / 7), (128, 8 * math.pi / 7)]

    e2 = ExampleSpec(ExampleFamily.E2, 3, (1.0,) * 4, first_level=0)
    assert witness_box(e2) == math.pi
    assert default_schedule(e2, levels=3)[-1] == (128, math.pi)

    e6 = ExampleSpec(ExampleFamily.E6, 1, dilation=1)
    assert default_schedule(e6) == [(128, 8 * math.pi), (256, 16 * math.pi)]
    assert witness_level(e6) == 0


def test_minimal_size():
    assert minimal_size(math.pi, 3) == 32
    assert minimal_size(math.pi / 2, 4) == 32


# ============================================================================
# EXACT NORMS ACROSS PARAMETERS
# ============================================================================

@pytest.mark.parametrize("ell", [3, 6])
@pytest.mark.parametrize("t", [-1, 0, 1])
def test_lacunary_norms_with_random_nonnegative_coefficients(ell, t):
    rng = np.random.default_rng(100 + ell)
    coeffs = tuple(float(a) for a in rng.uniform(0.0, 2.0, ell))
    spec = ExampleSpec(ExampleFamily.E2, ell, coeffs)
    grid = _first_rung(spec)
    terms = [2.0 ** ((ell + j) * t) * a for j, a in zip(range(1, ell + 1), coeffs)]

    for q in (1, 2, "inf"):
        iso, mixed = _norms(spec, grid, t, "inf", q)
        assert iso.value == pytest.approx(2.0 ** (ell * t) * sum(coeffs), rel=1e-9)
        expected = max(terms) if q == "inf" else sum(x ** q for x in terms) ** (1.0 / q)
        assert mixed.value == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize("dilation", [1, 2])
@pytest.mark.parametrize("p", ["1/2", 1, 2, "inf"])
def test_dilated_profile_norms_ignore_t_and_q(dilation, p):
    spec = ExampleSpec(ExampleFamily.E6, 1, dilation=dilation)
    grid = FrequencyGrid(2, 64, 4 * math.pi * 2 ** dilation)
    profile = lp_quasinorm(make_example(ExampleSpec(ExampleFamily.E6, 1), FrequencyGrid(2, 64, 4 * math.pi)), p)
    inv_p = 0.0 if p == "inf" else 1.0 / float(Fraction(p))
    expected = 2.0 ** (dilation * 2 * inv_p) * profile

    for t in (-1, 0, 1):
        for q in ("1/2", 2, "inf"):
            iso, mixed = _norms(spec, grid, t, p, q)
            assert iso.value == pytest.approx(expected, rel=1e-12)
            assert mixed.value == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("family", [ExampleFamily.E4, ExampleFamily.E5])
@pytest.mark.parametrize("p", ["1/2", 1, 2])
def test_tensor_chains_match_prediction_across_p(family, p):
    spec = ExampleSpec(family, 3, (1.0, 0.5, 0.25))
    grid = _first_rung(spec)
    iso, mixed = _norms(spec, grid, "1/2", p, 2)
    prediction = predicted_norms(spec, "1/2", p, 2, grid=grid)
    assert iso.value == pytest.approx(prediction.iso_value, rel=1e-9)
    assert mixed.value == pytest.approx(prediction.mixed_value, rel=1e-9)


def test_diagonal_chain_gap_follows_t_times_d_minus_one():
    t = 0.5
    rows = []
    for ell in range(1, 5):
        spec = ExampleSpec(ExampleFamily.E5, ell, (0.0,) * (ell - 1) + (1.0,))
        iso, mixed = _norms(spec, _first_rung(spec), t, 2, 2)
        rows.append({"case_id": "E5", "ell": ell, "iso_norm": iso.value, "mixed_norm": mixed.value,
                     "ratio": mixed.value / iso.value, "converged": True})

    fit = fit_growth(pd.DataFrame(rows, columns=WITNESS_COLUMNS), GrowthModel.EXPONENTIAL)
    assert fit.exponent == pytest.approx(t * (2 - 1), rel=0.02)
    assert fit.max_residual < 1e-6


# ============================================================================
# BLOCK SELECTION
# ============================================================================

@pytest.mark.parametrize("spec,iso_labels,mixed_labels", [
    (ExampleSpec(ExampleFamily.E1, 3, (0.0, 0.0, 1.0)), [3], [(3, 3)]),
    (ExampleSpec(ExampleFamily.E2, 3, (0.0, 1.0, 0.0)), [3], [(3, 2)]),
    (ExampleSpec(ExampleFamily.E3, 2, (0.0, 0.0, 1.0)), [2], [(2, 2)]),
    (ExampleSpec(ExampleFamily.E4, 3, (0.0, 1.0, 0.0)), [2], [(2, 1)]),
    (ExampleSpec(ExampleFamily.E5, 3, (0.0, 0.0, 1.0)), [3], [(3, 3)]),
])
def test_single_terms_occupy_single_blocks(spec, iso_labels, mixed_labels):
    iso, mixed = _norms(spec, _first_rung(spec), 0, 2, 2)
    assert [b.label for b in iso.nonzero_blocks] == iso_labels
    assert [b.label for b in mixed.nonzero_blocks] == mixed_labels


def test_chain_terms_select_their_tensor_blocks():
    spec = ExampleSpec(ExampleFamily.E4, 4, (1.0, 0.0, 2.0, 1.0))
    _, mixed = _norms(spec, _first_rung(spec), 0, 2, 2)
    assert [b.label for b in mixed.nonzero_blocks] == [(1, 1), (3, 1), (4, 1)]
