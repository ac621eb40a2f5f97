"""Spectral analysis of the Jacobi matrices ``J(alpha)`` whose off-diagonal
weights are ``n`` (odd ``n``) and ``alpha * n`` (even ``n``)."""
from . import elliptic, operator, oracle, powerseries, pseudospectra, spectral
from .elliptic import Modulus, elliptic_constants, jacobi_triple, sncndn, taylor_C
from .estimators import OrthoPolyTransformer, ResolventNormTransformer, SpectrumEstimator, WeylFunction
from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    EjspecError,
    NoConvergence,
    PoleError,
    RegimeError,
    SingularError,
    SpectrumError,
    StripError,
)
from .operator import OperatorSpec, truncate
from .oracle import eig_root, m_oracle, resolvent_norm
from .spectral import eigenvalue, eigenvector, orthopoly, rodriguez, weyl_m

__version__ = "0.1.0"

__all__ = [
    "elliptic",
    "operator",
    "oracle",
    "powerseries",
    "pseudospectra",
    "spectral",
    "Modulus",
    "elliptic_constants",
    "jacobi_triple",
    "sncndn",
    "taylor_C",
    "OperatorSpec",
    "truncate",
    "eig_root",
    "m_oracle",
    "resolvent_norm",
    "eigenvalue",
    "eigenvector",
    "orthopoly",
    "rodriguez",
    "weyl_m",
    "WeylFunction",
    "SpectrumEstimator",
    "ResolventNormTransformer",
    "OrthoPolyTransformer",
    "ConvergenceError",
    "DimensionError",
    "DomainError",
    "EjspecError",
    "NoConvergence",
    "PoleError",
    "RegimeError",
    "SingularError",
    "SpectrumError",
    "StripError",
]
