"""
Theme configuration for the Besov Lab dashboard
Colour palette, status colours and the plotly layout shared by every figure
"""

COLORS = {
    'primary': '#1F3A68',      # deep blue
    'secondary': '#E0A526',    # ochre
    'accent': '#B5442C',       # brick
    'success': '#2E8B57',
    'warning': '#E0A526',
    'danger': '#B5442C',
    'background': '#FFFFFF',
    'secondary_bg': '#F3F5F8',
    'text': '#22262E',
    'text_light': '#6C757D',
    'border': '#D8DDE4',
    'white': '#FFFFFF',
}

# One colour per embedding status, keyed by the serialized status names
STATUS_COLORS = {
    'Embeds': '#2E8B57',
    'ReverseEmbeds': '#1F3A68',
    'NotComparable': '#E0A526',
    'FailsToEmbed': '#B5442C',
    'NotCoveredByPaper': '#9AA3AF',
}

SPACE_COLORS = {
    'Iso': '#1F3A68',
    'Mixed': '#B5442C',
}

CHART_COLORS = {
    'mixed': ['#1F3A68', '#B5442C', '#2E8B57', '#E0A526', '#6A4C93'],
}


def get_plotly_theme():
    """Plotly layout settings applied to every lab figure"""
    return {
        'layout': {
            'paper_bgcolor': COLORS['background'],
            'plot_bgcolor': COLORS['background'],
            'font': {
                'family': 'Inter, sans-serif',
                'color': COLORS['text']
            },
            'title': {
                'font': {
                    'size': 18,
                    'color': COLORS['primary'],
                    'family': 'Inter, sans-serif'
                }
            },
            'xaxis': {
                'gridcolor': COLORS['border'],
                'linecolor': COLORS['border'],
                'zerolinecolor': COLORS['border'],
            },
            'yaxis': {
                'gridcolor': COLORS['border'],
                'linecolor': COLORS['border'],
                'zerolinecolor': COLORS['border'],
            },
            'colorway': CHART_COLORS['mixed'],
            'hovermode': 'closest',
            'legend': {
                'font': {'color': COLORS['text']}
            }
        }
    }


def apply_streamlit_theme():
    """CSS injected at the top of every page"""
    return f"""
    <style>
        h1, h2, h3, h4 {{
            color: {COLORS['primary']};
        }}

        section[data-testid="stSidebar"] {{
            background-color: {COLORS['secondary_bg']};
        }}

        .kpi-card {{
            background-color: {COLORS['white']};
            border-radius: 10px;
            padding: 20px;
            box-shadow: 0 2px 4px rgba(0,0,0,0.1);
            border-left: 4px solid {COLORS['primary']};
        }}

        [data-testid="stMetricValue"] {{
            font-size: 1.6rem;
            font-weight: 600;
        }}

        .dataframe {{
            border: 1px solid {COLORS['border']};
            border-radius: 5px;
        }}

        #MainMenu {{visibility: hidden;}}
        footer {{visibility: hidden;}}
    </style>
    """
