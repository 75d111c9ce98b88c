"""
Wiring Min-Sets

Reverse engineering of minimal wiring diagrams (unsigned and signed
min-sets) from input-output data over a finite state set, through the
primary decomposition of squarefree monomial ideals, with uniqueness
certificates and experiment design.
"""

__version__ = "0.1.0"

from .datamodel import (
    Alphabet,
    Component,
    DataSet,
    FieldSpec,
    Ideal,
    InputSet,
    Literal,
    MinSetKind,
    MinSetReport,
    Monomial,
)
from .algebra.decompose import minsets

__all__ = [
    "Alphabet",
    "Component",
    "DataSet",
    "FieldSpec",
    "Ideal",
    "InputSet",
    "Literal",
    "MinSetKind",
    "MinSetReport",
    "Monomial",
    "minsets",
]
