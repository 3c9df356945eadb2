"""
Embedding Oracle - Verdicts and Region Diagrams
Decide S^t_{p,q}B ↪ B^t_{p,q} and B^{td}_{p,q} ↪ S^t_{p,q}B, and sweep the oracle
"""

import streamlit as st

from core.components import create_region_figure, format_status, render_data_table
from core.errors import BesovLabError
from core.params import make_params
from core.queries.oracle_queries import (
    load_oracle_sweep, load_region_diagram, load_status_counts, load_verdict,
)
from theme import apply_streamlit_theme

st.set_page_config(
    page_title="Embedding Oracle - Besov Lab",
    page_icon="🧭",
    layout="wide"
)

st.markdown(apply_streamlit_theme(), unsafe_allow_html=True)

st.markdown("# 🧭 Embedding Oracle")
st.markdown("Verdicts with the clause that decides them, and the (1/p, t) regions")
st.markdown("---")

DIRECTIONS = {
    "S^t_{p,q}B into B^t_{p,q}": "MixedIntoIso",
    "B^{td}_{p,q} into S^t_{p,q}B": "IsoIntoMixed",
}

# ============================================================================
# PARAMETERS
# ============================================================================

st.markdown("### 🔧 Parameters")

col1, col2, col3, col4, col5 = st.columns(5)
with col1:
    direction_label = st.selectbox("Direction", list(DIRECTIONS))
with col2:
    t = st.text_input("t", value="0")
with col3:
    p = st.text_input("p", value="3")
with col4:
    q = st.text_input("q", value="2")
with col5:
    d = st.number_input("d", min_value=1, max_value=8, value=2, step=1)

direction = DIRECTIONS[direction_label]

try:
    result = load_verdict(direction, t, p, q, int(d))
    point = make_params(t, p, q, int(d))
except BesovLabError as e:
    st.error(f"⚠️ {e}")
    st.stop()

st.markdown(f"#### Verdict: {format_status(result.status.value)}", unsafe_allow_html=True)
st.caption(f"Clause: {result.clause or 'none'}")

st.markdown("---")

# ============================================================================
# REGION DIAGRAM
# ============================================================================

st.markdown("### 🗺️ Region diagram")

if int(d) < 2:
    st.info("In dimension 1 the two scales coincide; there is no diagram to draw.")
else:
    extent = st.slider("Window half-size", min_value=0.5, max_value=4.0, value=2.0, step=0.5)
    diagram = load_region_diagram(direction, int(d), extent)
    st.plotly_chart(create_region_figure(diagram, point), use_container_width=True)
    st.caption("Solid lines carry the critical-line conditions on q; dashed lines are region borders.")

st.markdown("---")

# ============================================================================
# ORACLE SWEEP
# ============================================================================

st.markdown("### 📋 Oracle sweep")

with st.expander("Sweep values", expanded=False):
    t_text = st.text_input("t values", value="-1, -1/2, 0, 1/2, 1")
    p_text = st.text_input("p values", value="1/2, 1, 2, 4, inf")
    q_text = st.text_input("q values", value="1/2, 1, 2, inf")


def _split(text: str):
    return tuple(v.strip() for v in text.split(",") if v.strip())


try:
    sweep = load_oracle_sweep(direction, int(d), _split(t_text), _split(p_text), _split(q_text))
except BesovLabError as e:
    st.error(f"⚠️ {e}")
    st.stop()

tab1, tab2 = st.tabs(["Summary", "All points"])
with tab1:
    render_data_table(load_status_counts(sweep), height=300)
with tab2:
    render_data_table(sweep)
