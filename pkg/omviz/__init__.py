"""
Order-of-magnitude time-series charts and their evaluation toolkit.

Renders log-line, order-of-magnitude line (OML), classic horizon,
order-of-magnitude horizon (OMH) and scale-stack bar (SSB) charts as SVG,
generates the synthetic study data, builds the stimulus set and analyses
scored responses.
"""

__version__ = "0.1.0"
