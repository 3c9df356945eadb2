import pandas as pd
from typing import Tuple

import numpy as np
import streamlit as st

from core.harness import CASES, CLAUSE_COVERAGE, CaseAssessment, assess_case, case_in_region, get_case, run_witness
from core.norms import multiplier_probe_sweep


# ----------------- REGISTRY -----------------

def load_case_registry() -> pd.DataFrame:
    """
    One row per registered witness case.
    """
    rows = []
    for case in CASES.values():
        rows.append({
            "case_id": case.case_id,
            "clause": case.clause,
            "family": case.family.value,
            "rule": str(case.rule),
            "ratio": case.ratio.value,
            "ell_min": case.ell_range[0],
            "ell_max": case.ell_range[1],
            "model": case.model.value,
            "expectation": case.expectation.value,
            "in_region": case_in_region(case),
        })
    return pd.DataFrame(rows)


def load_clause_coverage() -> pd.DataFrame:
    """
    Clause → witnessing cases, or the reason no case exists.
    """
    return pd.DataFrame([
        {"clause": c.clause, "cases": ", ".join(c.case_ids), "annotation": c.annotation}
        for c in CLAUSE_COVERAGE.values()
    ])


# ----------------- RUNS -----------------

@st.cache_data(show_spinner="Running witness...")
def load_witness_table(case_id: str, lmin: int, lmax: int) -> pd.DataFrame:
    return run_witness(get_case(case_id).with_range(lmin, lmax))


def load_assessment(case_id: str, table: pd.DataFrame) -> CaseAssessment:
    return assess_case(get_case(case_id), table)


@st.cache_data(show_spinner="Probing multipliers...")
def load_probe(p_values: Tuple[str, ...], jmax: int, trials: int, seed: int,
               d: int = 2) -> pd.DataFrame:
    rng = np.random.default_rng(seed)
    return multiplier_probe_sweep(list(p_values), range(1, jmax + 1), trials, rng, d=d)
