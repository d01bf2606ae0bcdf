"""Sign-pattern analysis of coexistence in Lotka-Volterra communities.

Given the signs of the growth rates a and the interaction matrix B, decide
whether any choice of magnitudes admits a positive, asymptotically stable
equilibrium: complete partial sign assignments on the Plucker coordinates of
[diag(a) | B] under the three-term Grassmann-Plucker relations plus
feasibility and stability sign constraints, certify impossibility, enumerate
completions, and search for exact numerical witness points.
"""

from .model import (
    EcologicalNetwork,
    ParameterPoint,
    PatternError,
    SignPattern,
    apply_permutation,
    canonicalize,
    network_to_sign_pattern,
    parse_sign_pattern,
    sample_point,
)

__version__ = "0.1.0"

__all__ = [
    "EcologicalNetwork",
    "ParameterPoint",
    "PatternError",
    "SignPattern",
    "apply_permutation",
    "canonicalize",
    "network_to_sign_pattern",
    "parse_sign_pattern",
    "sample_point",
    "__version__",
]
