"""
Norm Explorer - Block Ledgers of Witness Functions
Both quasi-norms of one witness, block by block, against the closed-form values
"""

import streamlit as st

from core.components import create_ledger_chart, render_data_table, render_metric_grid
from core.errors import BesovLabError
from core.examples import Bracket, ExampleFamily, ExampleSpec, default_schedule, family_labels
from core.harness import CoeffRule, RULE_NAMES
from core.queries.norm_queries import load_example_norms, load_ledger, load_prediction
from core.utils import format_number
from theme import apply_streamlit_theme

st.set_page_config(
    page_title="Norm Explorer - Besov Lab",
    page_icon="🧮",
    layout="wide"
)

st.markdown(apply_streamlit_theme(), unsafe_allow_html=True)

st.markdown("# 🧮 Norm Explorer")
st.markdown("Isotropic and mixed quasi-norms of a witness, with the block ledger behind each value")
st.markdown("---")

# ============================================================================
# WITNESS SELECTION
# ============================================================================

st.markdown("### 🔧 Witness")

col1, col2, col3, col4 = st.columns(4)
with col1:
    family = ExampleFamily(st.selectbox("Family", [f.value for f in ExampleFamily]))
with col2:
    ell = st.number_input("ℓ", min_value=1, max_value=8, value=3, step=1)
with col3:
    rule_name = st.selectbox("Coefficients", RULE_NAMES, index=RULE_NAMES.index("all_ones"))
with col4:
    rate = st.number_input("Rate (geometric rules)", value=0.5, step=0.25)

col1, col2, col3, col4 = st.columns(4)
with col1:
    t = st.text_input("t (mixed)", value="0")
with col2:
    iso_t = st.text_input("t (isotropic)", value="0")
with col3:
    p = st.text_input("p", value="2")
with col4:
    q = st.text_input("q", value="2")

try:
    rule = CoeffRule(rule_name, rate)
    if family is ExampleFamily.E6:
        spec = ExampleSpec(family, int(ell))
    else:
        labels = family_labels(family, int(ell), 2, rule.first_level)
        spec = ExampleSpec(family, int(ell), rule.coefficients(labels, int(ell)),
                           first_level=rule.first_level)
    rungs = default_schedule(spec)
    rung = st.select_slider("Ladder rung", options=list(range(len(rungs))),
                            format_func=lambda i: f"n={rungs[i][0]}, R={rungs[i][1]:.4g}")
    iso, mixed = load_example_norms(spec.to_json(), t, p, q, iso_t, rung)
    prediction = load_prediction(spec.to_json(), t, p, q, iso_t, rung)
except BesovLabError as e:
    st.error(f"⚠️ {e}")
    st.stop()

st.markdown("---")

# ============================================================================
# VALUES
# ============================================================================

st.markdown("### 📊 Quasi-norms")


def _predicted(value) -> str:
    if prediction is None:
        return "no closed form"
    if isinstance(value, Bracket):
        return f"≍ {format_number(value.growth)}"
    return f"= {format_number(value)}"


render_metric_grid([
    {'title': 'Isotropic B', 'value': format_number(iso.value, 6),
     'delta': _predicted(prediction.iso_value if prediction else None)},
    {'title': 'Mixed S B', 'value': format_number(mixed.value, 6),
     'delta': _predicted(prediction.mixed_value if prediction else None)},
    {'title': 'Non-zero blocks', 'value': f"{len(iso.nonzero_blocks)} / {len(mixed.nonzero_blocks)}",
     'delta': 'isotropic / mixed'},
    {'title': 'Truncated energy', 'value': format_number(max(iso.truncated_fraction, mixed.truncated_fraction)),
     'accent': iso.truncated or mixed.truncated},
], columns=4)

if prediction is not None:
    st.caption(f"Prediction: {prediction.exactness.value}, valid for {prediction.validity}")

st.markdown("---")

# ============================================================================
# LEDGERS
# ============================================================================

tab1, tab2 = st.tabs(["Isotropic ledger", "Mixed ledger"])
with tab1:
    st.plotly_chart(create_ledger_chart(iso.ledger(), "Iso", "Cube blocks ψ_j"), use_container_width=True)
    render_data_table(load_ledger(iso), height=300)
with tab2:
    st.plotly_chart(create_ledger_chart(mixed.ledger(), "Mixed", "Tensor blocks φ_k̄"), use_container_width=True)
    render_data_table(load_ledger(mixed), height=300)
