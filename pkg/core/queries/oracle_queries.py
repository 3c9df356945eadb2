import pandas as pd
from typing import Tuple

import streamlit as st

from core.params import (
    EmbeddingDirection, RegionDiagram, Verdict, make_params, oracle_table, region_diagram, verdict,
)


# ----------------- POINT LOOKUPS -----------------

@st.cache_data(show_spinner=False)
def load_verdict(direction: str, t: str, p: str, q: str, d: int) -> Verdict:
    """
    Verdict of one embedding; exponents arrive as text so rationals stay exact.
    """
    return verdict(make_params(t, p, q, d), EmbeddingDirection(direction))


# ----------------- SWEEPS -----------------

@st.cache_data(show_spinner=False)
def load_oracle_sweep(direction: str, d: int, t_values: Tuple[str, ...],
                      p_values: Tuple[str, ...], q_values: Tuple[str, ...]) -> pd.DataFrame:
    """
    Verdict table over the product of the given values.
    """
    return oracle_table(EmbeddingDirection(direction), d, t_values, p_values, q_values)


def load_status_counts(sweep: pd.DataFrame) -> pd.DataFrame:
    """
    Number of swept points per status and clause.
    """
    if sweep.empty:
        return pd.DataFrame(columns=["status", "clause", "points"])
    return (sweep.groupby(["status", "clause"]).size()
            .reset_index(name="points")
            .sort_values("points", ascending=False))


@st.cache_data(show_spinner=False)
def load_region_diagram(direction: str, d: int, extent: float) -> RegionDiagram:
    return region_diagram(EmbeddingDirection(direction), d, extent)
