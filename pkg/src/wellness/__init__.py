"""Desk-scale wellness study platform.

An emulated environmental sensor streams five variables during survey
sessions, an ingestion service enforces the study protocol and persists
submissions append-only, and an analysis engine scores the questionnaires
and reports rank correlations with significance.
"""

__version__ = "0.1.0"
