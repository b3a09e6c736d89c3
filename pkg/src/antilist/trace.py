from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any, TypeVar

from antilist.errors import ProviderExhausted

T = TypeVar("T")

EQ = "="
NE = "≠"


@dataclass(frozen=True)
class TraceStep:
    """One induction step: what was compared, which branch fired, what was emitted."""

    index: Any
    candidate: Any
    target: Any
    branch: str
    output: Any


ConstructionTrace = tuple[TraceStep, ...]

# A list of objects indexed from 1: either a finite sequence or a rule i -> item.
Provider = Sequence[T] | Callable[[int], T]


def take(provider: Provider, n: int) -> list:
    """Materialize items 1..n of a provider."""
    if callable(provider):
        out = []
        for i in range(1, n + 1):
            try:
                out.append(provider(i))
            except (IndexError, KeyError, StopIteration):
                raise ProviderExhausted(i) from None
        return out
    if len(provider) < n:
        raise ProviderExhausted(len(provider) + 1)
    return list(provider[:n])
