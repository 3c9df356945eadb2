"""
Reusable UI components for the Besov Lab dashboard
KPI cards, tables and the plotly figures for regions, ledgers and growth curves
"""

from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
import plotly.express as px
import plotly.graph_objects as go
import streamlit as st

from core.harness import GrowthFit, GrowthModel
from core.params import ParameterPoint, RegionDiagram
from theme import COLORS, SPACE_COLORS, STATUS_COLORS, get_plotly_theme


def render_kpi_card(title: str, value: Any, delta: Optional[str] = None, accent: bool = False):
    """
    Render a KPI card with title, value, and optional delta

    Args:
        title: KPI title
        value: Already formatted value
        delta: Secondary line under the value
        accent: Use accent border color
    """
    border_color = COLORS['accent'] if accent else COLORS['primary']

    st.markdown(f"""
    <div style="
        background-color: {COLORS['white']};
        border-radius: 10px;
        padding: 20px;
        box-shadow: 0 2px 4px rgba(0,0,0,0.1);
        border-left: 4px solid {border_color};
        margin-bottom: 10px;
    ">
        <div style="color: {COLORS['text_light']}; font-size: 0.9rem; margin-bottom: 8px;">
            {title}
        </div>
        <div style="color: {COLORS['primary']}; font-size: 1.6rem; font-weight: 600; margin-bottom: 5px;">
            {value}
        </div>
        {f'<div style="color: {COLORS["text_light"]}; font-size: 0.85rem;">{delta}</div>' if delta else ''}
    </div>
    """, unsafe_allow_html=True)


def render_metric_grid(metrics: List[Dict[str, Any]], columns: int = 4):
    """Grid of KPI cards; each metric has keys title, value and optionally delta, accent"""
    cols = st.columns(columns)
    for idx, metric in enumerate(metrics):
        with cols[idx % columns]:
            render_kpi_card(
                title=metric.get('title', ''),
                value=metric.get('value', 'N/A'),
                delta=metric.get('delta'),
                accent=metric.get('accent', False)
            )


def render_data_table(df: pd.DataFrame, title: Optional[str] = None, height: int = 400):
    if title:
        st.markdown(f"### {title}")
    if df.empty:
        st.info("No data available")
        return
    st.dataframe(df, use_container_width=True, height=height)


def create_empty_chart(message: str = "No data available") -> go.Figure:
    """Create an empty chart with a message"""
    fig = go.Figure()
    fig.add_annotation(
        text=message, xref="paper", yref="paper", x=0.5, y=0.5,
        showarrow=False, font=dict(size=16, color=COLORS['text_light'])
    )
    hidden = dict(showgrid=False, showticklabels=False, zeroline=False)
    layout = {**get_plotly_theme()['layout'], 'xaxis': hidden, 'yaxis': hidden}
    fig.update_layout(**layout)
    return fig


# ============================================================================
# LAB FIGURES
# ============================================================================

def create_region_figure(diagram: RegionDiagram, point: Optional[ParameterPoint] = None) -> go.Figure:
    """
    Region diagram in (1/p, t) coordinates

    Args:
        diagram: Clipped polygons and critical segments
        point: Optional parameter point to mark

    Returns:
        Plotly figure with one filled trace per region
    """
    fig = go.Figure()
    for region in diagram.regions:
        xs = [x for x, _ in region.polygon] + [region.polygon[0][0]]
        ys = [y for _, y in region.polygon] + [region.polygon[0][1]]
        fig.add_trace(go.Scatter(
            x=xs, y=ys, fill="toself", mode="lines", name=region.label.value,
            line=dict(color=STATUS_COLORS[region.label.value], width=1),
            fillcolor=STATUS_COLORS[region.label.value], opacity=0.35,
            hoverinfo="name",
        ))

    for segment in diagram.critical_segments:
        fig.add_trace(go.Scatter(
            x=[segment.start[0], segment.end[0]], y=[segment.start[1], segment.end[1]],
            mode="lines", showlegend=False, hoverinfo="skip",
            line=dict(color=COLORS['text'], width=3 if segment.emphasis else 1.5,
                      dash="solid" if segment.emphasis else "dash"),
        ))

    if point is not None:
        fig.add_trace(go.Scatter(
            x=[float(point.inv_p)], y=[float(point.t)], mode="markers", name="selected",
            marker=dict(size=12, color=COLORS['accent'], symbol="x"),
        ))

    fig.update_layout(**get_plotly_theme()['layout'])
    fig.update_layout(
        xaxis_title="1/p", yaxis_title="t",
        xaxis_range=[0, diagram.extent], yaxis_range=[-diagram.extent, diagram.extent],
    )
    return fig


def create_ledger_chart(ledger: pd.DataFrame, space: str, title: str) -> go.Figure:
    """Block contributions 2^{level·t}·‖block‖_p on a log axis; zero blocks are left out"""
    shown = ledger[ledger["contribution"] > 0]
    if shown.empty:
        return create_empty_chart("All blocks vanish")
    fig = px.bar(
        shown, x="label", y="contribution", title=title, log_y=True,
        labels={"label": "block", "contribution": "weighted block quasi-norm"},
    )
    fig.update_layout(**get_plotly_theme()['layout'])
    fig.update_traces(marker_color=SPACE_COLORS.get(space, COLORS['primary']))
    return fig


def create_growth_chart(table: pd.DataFrame, fit: Optional[GrowthFit] = None,
                        title: str = "Norm ratio against ℓ") -> go.Figure:
    """Witness ratios on log axes, with the fitted growth curve when given"""
    if table.empty:
        return create_empty_chart("No witness rows")

    fig = go.Figure()
    converged = table[table["converged"]]
    unconverged = table[~table["converged"]]
    fig.add_trace(go.Scatter(x=converged["ell"], y=converged["ratio"], mode="markers+lines",
                             name="ratio", marker=dict(size=9, color=COLORS['primary'])))
    if not unconverged.empty:
        fig.add_trace(go.Scatter(x=unconverged["ell"], y=unconverged["ratio"], mode="markers",
                                 name="not converged",
                                 marker=dict(size=9, color=COLORS['accent'], symbol="circle-open")))

    if fit is not None:
        ell = np.linspace(table["ell"].min(), table["ell"].max(), 100)
        if fit.model is GrowthModel.POWER:
            curve = np.exp(fit.intercept) * ell ** fit.exponent
            label = f"ℓ^{fit.exponent:.3f}"
        else:
            curve = np.exp(fit.intercept) * 2.0 ** (fit.exponent * ell)
            label = f"2^({fit.exponent:.3f}·ℓ)"
        fig.add_trace(go.Scatter(x=ell, y=curve, mode="lines", name=label,
                                 line=dict(color=COLORS['secondary'], dash="dash")))

    fig.update_layout(**get_plotly_theme()['layout'])
    fig.update_layout(title=title, xaxis_title="ℓ", yaxis_title="ratio", yaxis_type="log")
    return fig


def create_probe_chart(probe: pd.DataFrame, column: str = "max_ratio_ct3") -> go.Figure:
    """Probe maxima against the cube level, one line per exponent"""
    if probe.empty:
        return create_empty_chart("No probe rows")
    fig = px.line(probe, x="j", y=column, color="p", markers=True,
                  labels={"j": "cube level j", column: "max ratio", "p": "p"})
    fig.update_layout(**get_plotly_theme()['layout'])
    fig.update_traces(line=dict(width=3))
    return fig


def format_status(status: str) -> str:
    """Status text with its colour swatch, for markdown"""
    color = STATUS_COLORS.get(status, COLORS['text'])
    return f"<span style='color:{color}; font-weight:600'>{status}</span>"
