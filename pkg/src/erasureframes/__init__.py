"""Erasure-robust Parseval frames from signature matrices and two-graphs."""

from .catalog import known_frames, parse_signature_text, emit_signature_text, table2_matrices
from .constructions import ConstructionRecipe, Kind
from .erasures import ErasureReport, ErasureSet, e_m_inf, e_m_p
from .frames import (
    AnalysisOperator,
    FrameParameters,
    GrammianProjection,
    SignatureMatrix,
    signature_parameters,
)
from .seidel import SeidelGraph

__version__ = "0.1.0"

__all__ = [
    "AnalysisOperator",
    "ConstructionRecipe",
    "ErasureReport",
    "ErasureSet",
    "FrameParameters",
    "GrammianProjection",
    "Kind",
    "SeidelGraph",
    "SignatureMatrix",
    "e_m_inf",
    "e_m_p",
    "emit_signature_text",
    "known_frames",
    "parse_signature_text",
    "signature_parameters",
    "table2_matrices",
]
