"""Infinite binary sequences given by a preperiod and a repeating period, and
the two anti-list constructions over a list of them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from antilist.errors import FixtureError
from antilist.trace import EQ, NE, ConstructionTrace, Provider, TraceStep, take

BitWord = tuple[int, ...]


def _check_bits(word, what):
    for b in word:
        if b not in (0, 1):
            raise ValueError(f"{what} contains non-bit {b!r}")


@dataclass(frozen=True)
class BitStream:
    preperiod: BitWord
    period: BitWord

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("period must be nonempty")
        _check_bits(self.preperiod, "preperiod")
        _check_bits(self.period, "period")

    @classmethod
    def parse(cls, text: str) -> BitStream:
        """Parse the ``pre:period`` fixture form, e.g. ``1:01``."""
        text = text.strip()
        if text.count(":") != 1:
            raise FixtureError(f"stream {text!r} must look like 'pre:period'")
        pre, per = text.split(":")
        if not per or any(c not in "01" for c in pre + per):
            raise FixtureError(f"stream {text!r}: bits must be 0/1 and period nonempty")
        return cls(tuple(map(int, pre)), tuple(map(int, per)))

    def __str__(self):
        return "".join(map(str, self.preperiod)) + ":" + "".join(map(str, self.period))

    def at(self, i: int) -> int:
        """The i-th bit, 1-based."""
        if i < 1:
            raise IndexError("streams are indexed from 1")
        m = len(self.preperiod)
        if i <= m:
            return self.preperiod[i - 1]
        return self.period[(i - m - 1) % len(self.period)]


def prefix(s: BitStream, n: int) -> BitWord:
    if n < 0:
        raise ValueError("prefix length must be >= 0")
    return tuple(s.at(i) for i in range(1, n + 1))


def constant(bit: int) -> BitStream:
    return BitStream((), (bit,))


def classical_diagonal(streams: Provider[BitStream], n: int) -> BitWord:
    """c_i = 1 - s_i|_i."""
    return tuple(1 - s.at(i) for i, s in enumerate(take(streams, n), start=1))


def inductive_sigma(
    streams: Provider[BitStream], n: int
) -> tuple[BitWord, ConstructionTrace]:
    """Build sigma one bit at a time so that its length-k prefix never equals
    the length-k prefix of the k-th stream.

    At step k the candidate is the bits chosen so far followed by a 0; if the
    candidate coincides with ``prefix(s_k, k)`` the bit is 1, otherwise 0.
    """
    sigma: list[int] = []
    steps = []
    for k, s in enumerate(take(streams, n), start=1):
        candidate = (*sigma, 0)
        target = prefix(s, k)
        if candidate == target:
            bit, branch = 1, EQ
        else:
            bit, branch = 0, NE
        sigma.append(bit)
        steps.append(TraceStep(k, candidate, target, branch, bit))
    return tuple(sigma), tuple(steps)


def all_streams(max_preperiod: int, max_period: int) -> list[BitStream]:
    """Every stream with preperiod length <= max_preperiod and period length
    in 1..max_period (distinct descriptions, not distinct sequences)."""
    out = []
    for m in range(max_preperiod + 1):
        for pre in product((0, 1), repeat=m):
            for p in range(1, max_period + 1):
                for per in product((0, 1), repeat=p):
                    out.append(BitStream(pre, per))
    return out
