"""
Witness Lab - Growth of Norm Ratios
Run registered witness cases across ℓ, fit the growth exponent, probe multipliers
"""

import streamlit as st

from core.components import create_growth_chart, create_probe_chart, render_data_table, render_metric_grid
from core.errors import BesovLabError
from core.harness import get_case
from core.queries.witness_queries import load_assessment, load_case_registry, load_probe, load_witness_table
from core.utils import format_number
from theme import apply_streamlit_theme

st.set_page_config(
    page_title="Witness Lab - Besov Lab",
    page_icon="📈",
    layout="wide"
)

st.markdown(apply_streamlit_theme(), unsafe_allow_html=True)

st.markdown("# 📈 Witness Lab")
st.markdown("Norm ratios that grow without bound where an embedding fails")
st.markdown("---")

tab1, tab2 = st.tabs(["Witness cases", "Multiplier probe"])

# ============================================================================
# WITNESS CASES
# ============================================================================

with tab1:
    registry = load_case_registry()
    render_data_table(registry, title="📋 Registry", height=300)

    col1, col2, col3 = st.columns([2, 1, 1])
    with col1:
        case_id = st.selectbox("Case", registry["case_id"].tolist())
    case = get_case(case_id)
    with col2:
        lmin = st.number_input("ℓ min", min_value=1, max_value=12, value=case.ell_range[0])
    with col3:
        lmax = st.number_input("ℓ max", min_value=1, max_value=12, value=case.ell_range[1])

    st.caption(f"{case.clause} · {case.family.value} with {case.rule} · ratio {case.ratio.value}")

    if st.button("▶️ Run witness", use_container_width=True):
        try:
            table = load_witness_table(case_id, int(lmin), int(lmax))
        except BesovLabError as e:
            st.error(f"⚠️ {e}")
            st.stop()

        fit = None
        try:
            assessment = load_assessment(case_id, table)
            fit = assessment.fit
            render_metric_grid([
                {'title': 'Model', 'value': fit.model.value},
                {'title': 'Exponent', 'value': format_number(fit.exponent)},
                {'title': 'Max residual', 'value': format_number(fit.max_residual)},
                {'title': 'Verdict', 'value': "✅ passed" if assessment.passed else "❌ failed",
                 'delta': assessment.reason, 'accent': not assessment.passed},
            ], columns=4)
        except BesovLabError as e:
            st.warning(f"No growth fit: {e}")

        st.plotly_chart(create_growth_chart(table, fit), use_container_width=True)
        render_data_table(table, title="Rows", height=300)

# ============================================================================
# MULTIPLIER PROBE
# ============================================================================

with tab2:
    st.markdown("Maximal ratios of the cube/tensor multiplier estimates over random spectra. "
                "Bounded maxima mean the estimate's constant does not depend on j.")

    col1, col2, col3, col4 = st.columns(4)
    with col1:
        p_text = st.text_input("p values", value="1/2, 1, 2, inf")
    with col2:
        jmax = st.number_input("j max", min_value=1, max_value=7, value=5)
    with col3:
        trials = st.number_input("Trials", min_value=1, max_value=200, value=20)
    with col4:
        seed = st.number_input("Seed", min_value=0, value=0)

    if st.button("▶️ Run probe", use_container_width=True):
        p_values = tuple(v.strip() for v in p_text.split(",") if v.strip())
        try:
            probe = load_probe(p_values, int(jmax), int(trials), int(seed))
        except BesovLabError as e:
            st.error(f"⚠️ {e}")
            st.stop()
        st.plotly_chart(create_probe_chart(probe), use_container_width=True)
        st.plotly_chart(create_probe_chart(probe, "max_ratio_ct4"), use_container_width=True)
        render_data_table(probe, height=300)
