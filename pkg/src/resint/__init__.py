"""Exact obstructions to meromorphic first integrals of rational maps."""

__version__ = "0.1.0"

from .dynmap.rmap import RationalMap  # noqa: E402
from .obstruction import Kind, ObstructionVerdict, ParamConstraint, PipelineOptions, analyze  # noqa: E402
from .resonance import integral_bound  # noqa: E402
from .verifier import functional_independence, verify_first_integral  # noqa: E402

__all__ = [
    "RationalMap",
    "Kind",
    "ObstructionVerdict",
    "ParamConstraint",
    "PipelineOptions",
    "analyze",
    "integral_bound",
    "functional_independence",
    "verify_first_integral",
]
