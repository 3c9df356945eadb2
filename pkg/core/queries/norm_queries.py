import pandas as pd
from typing import Optional, Tuple

import streamlit as st

from core.errors import PredictionRefusedError
from core.examples import AnalyticPrediction, ExampleSpec, default_schedule, make_example, witness_level
from core.norms import QuasiNormResult, besov_norm, partition_for
from core.params import SpaceFamily
from core.partition import FrequencyGrid


# ----------------- EXAMPLE NORMS -----------------

@st.cache_data(show_spinner=False)
def load_example_norms(spec_json: str, t: str, p: str, q: str, iso_t: Optional[str] = None,
                       rung: int = 0) -> Tuple[QuasiNormResult, QuasiNormResult]:
    """
    Isotropic and mixed quasi-norms of a witness on one rung of its default ladder.

    The ExampleSpec travels as JSON so the cache key is a plain string.
    """
    spec = ExampleSpec.from_json(spec_json)
    n, R = default_schedule(spec)[rung]
    grid = FrequencyGrid(spec.d, n, R)
    f = make_example(spec, grid)
    level = witness_level(spec)

    iso = besov_norm(f, SpaceFamily.ISO, t if iso_t is None else iso_t, p, q,
                     partition_for(SpaceFamily.ISO, grid, level))
    mixed = besov_norm(f, SpaceFamily.MIXED, t, p, q, partition_for(SpaceFamily.MIXED, grid, level))
    return iso, mixed


@st.cache_data(show_spinner=False)
def load_prediction(spec_json: str, t: str, p: str, q: str, iso_t: Optional[str] = None,
                    rung: int = 0) -> Optional[AnalyticPrediction]:
    """
    Closed-form prediction on the same grid, None where the formula does not apply.
    """
    from core.examples import predicted_norms

    spec = ExampleSpec.from_json(spec_json)
    n, R = default_schedule(spec)[rung]
    try:
        return predicted_norms(spec, t, p, q, FrequencyGrid(spec.d, n, R), iso_t=iso_t)
    except PredictionRefusedError:
        return None


def load_ledger(result: QuasiNormResult) -> pd.DataFrame:
    """
    Block ledger with a share column (contribution^q relative to the total).
    """
    ledger = result.ledger()
    if ledger.empty or result.value == 0.0:
        ledger["share"] = 0.0
        return ledger
    if result.q_used.is_infinite:
        ledger["share"] = (ledger["contribution"] == ledger["contribution"].max()).astype(float)
    else:
        q = float(result.q_used)
        ledger["share"] = ledger["contribution"] ** q / result.value ** q
    return ledger
