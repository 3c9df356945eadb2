"""
Besov Lab - Home Page
Main entry point for the multi-page lab dashboard
"""

import streamlit as st

from core.config import get_settings
from core.errors import BesovLabError
from core.queries.witness_queries import load_case_registry, load_clause_coverage
from theme import apply_streamlit_theme

# Page configuration
st.set_page_config(
    page_title="Besov Lab",
    page_icon="📐",
    layout="wide",
    initial_sidebar_state="expanded"
)

st.markdown(apply_streamlit_theme(), unsafe_allow_html=True)

# Sidebar
with st.sidebar:
    st.markdown("### 📐 Besov Lab")
    st.caption("Isotropic and dominating-mixed Besov spaces on a frequency lattice")
    st.markdown("---")
    st.markdown("### 📊 Pages")
    st.markdown("""
    - 🧭 Embedding Oracle
    - 🧮 Norm Explorer
    - 📈 Witness Lab
    """)
    st.caption("Use the sidebar to navigate between pages")

st.markdown("# 📐 Besov Lab")
st.markdown("---")

st.markdown("""
### Embeddings between S^t_{p,q}B and B^t_{p,q}, checked by computation

- **Embedding Oracle** 🧭: the verdict for any (t, p, q, d) in either direction,
  the clause that decides it, and the (1/p, t) region diagrams.
- **Norm Explorer** 🧮: both quasi-norms of a witness function, block by block,
  next to the closed-form prediction.
- **Witness Lab** 📈: growth of the norm ratio along ℓ for every registered
  non-embedding and optimality case, with the fitted exponent.

Every number shown here comes from the `core` library; the `core.cli` command
line produces the same tables as CSV or JSON reports.
""")

st.markdown("---")

try:
    settings = get_settings()
    registry = load_case_registry()
except BesovLabError as e:
    st.error(f"⚠️ Lab configuration issue: {e}")
    st.stop()

col1, col2, col3 = st.columns(3)
with col1:
    st.metric("Witness cases", len(registry))
with col2:
    st.metric("Witness tolerance", f"{settings.witness_tolerance:g}")
with col3:
    st.metric("Report directory", settings.output_dir)

st.markdown("### 📚 Clause coverage")
st.dataframe(load_clause_coverage(), use_container_width=True, hide_index=True)
