"""Anti-list constructions: inductive diagonalization over binary sequences,
base-b rational expansions and finite powerset models, with a brute-force
verifier."""

from antilist.errors import AntilistError, PreconditionError, ProviderExhausted
from antilist.trace import ConstructionTrace, TraceStep

__all__ = [
    "AntilistError",
    "ConstructionTrace",
    "PreconditionError",
    "ProviderExhausted",
    "TraceStep",
]

__version__ = "0.1.0"
