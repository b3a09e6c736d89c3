"""Finite models of f: A -> P(A) over A = {0..n-1} with an explicit well-order,
and the diagonal sets built from them.

Subsets are carried as int bitmasks internally (bit a set <=> a in S) and
exposed as frozensets on the returned witnesses.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import lru_cache

from antilist.errors import FixtureError
from antilist.trace import EQ, NE, ConstructionTrace, TraceStep


def mask_of(elems) -> int:
    m = 0
    for a in elems:
        m |= 1 << a
    return m


@lru_cache(maxsize=1 << 16)
def members(mask: int) -> frozenset[int]:
    return frozenset(a for a in range(mask.bit_length()) if mask >> a & 1)


def format_set(s) -> str:
    if isinstance(s, int):
        s = members(s)
    return "{" + ", ".join(map(str, sorted(s))) + "}"


@dataclass(frozen=True)
class PowersetInstance:
    n: int
    order: tuple[int, ...]
    f: tuple[int, ...]  # f[a] is the bitmask of f(a)

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "f", tuple(self.f))
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if sorted(self.order) != list(range(self.n)):
            raise ValueError(f"order {list(self.order)} is not a permutation of 0..{self.n - 1}")
        if len(self.f) != self.n:
            raise ValueError(f"f must give a subset for each of the {self.n} elements")
        full = (1 << self.n) - 1
        for a, m in enumerate(self.f):
            if m & ~full or m < 0:
                raise ValueError(f"f({a}) is not a subset of A")

    @classmethod
    def from_sets(cls, f, order=None) -> PowersetInstance:
        n = len(f)
        return cls(n, tuple(range(n)) if order is None else tuple(order),
                   tuple(mask_of(s) for s in f))

    @classmethod
    def from_json(cls, text: str) -> PowersetInstance:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FixtureError(f"instance is not valid JSON: {exc}") from None
        if not isinstance(obj, dict) or set(obj) != {"n", "order", "f"}:
            raise FixtureError('instance must be an object with keys "n", "order", "f"')
        n, order, f = obj["n"], obj["order"], obj["f"]
        if not isinstance(n, int) or n < 0:
            raise FixtureError('"n" must be a non-negative integer')
        if not isinstance(f, list) or len(f) != n:
            raise FixtureError(f'"f" must list exactly {n} subsets (f must be total)')
        for a, s in enumerate(f):
            if not isinstance(s, list) or any(
                not isinstance(x, int) or not 0 <= x < n for x in s
            ):
                raise FixtureError(f"f[{a}] must be a list of elements of 0..{n - 1}")
        if not isinstance(order, list) or sorted(order) != list(range(n)):
            raise FixtureError(f'"order" must be a permutation of 0..{n - 1}')
        return cls(n, tuple(order), tuple(mask_of(s) for s in f))

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "order": list(self.order),
             "f": [sorted(members(m)) for m in self.f]},
            separators=(", ", ": "),
        )

    def with_order(self, order) -> PowersetInstance:
        return PowersetInstance(self.n, tuple(order), self.f)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def image(self, mask: int) -> int:
        out = 0
        for a in range(self.n):
            if mask >> a & 1:
                out |= self.f[a]
        return out

    def phi(self, mask: int) -> int:
        """The stage operator S -> {x : f(x) subset of S}."""
        out = 0
        for x, fx in enumerate(self.f):
            if fx & ~mask == 0:
                out |= 1 << x
        return out


@dataclass(frozen=True)
class SubsetWitness:
    subset: frozenset[int]
    trace: ConstructionTrace = ()

    @property
    def mask(self) -> int:
        return mask_of(self.subset)


@dataclass(frozen=True)
class StageSequence:
    """Kleene iterates of the stage operator starting from the empty set.

    ``stages[k + 1]`` is the k-th stage {x : f(x) subset of the union of the
    earlier stages}; ``stages[0]`` is the empty union before any stage.
    ``fixpoint_index`` is the first k with stages[k] == stages[k + 1].
    """

    stages: tuple[frozenset[int], ...]
    fixpoint_index: int
    masks: tuple[int, ...] = field(default=(), repr=False, compare=False)


class Condition(enum.Enum):
    STAR = "star"  # f(b) equals the set of earlier chain elements
    RELAXED = "relaxed"  # f(b) contained in the set of earlier chain elements


def inductive_B(inst: PowersetInstance) -> SubsetWitness:
    """Walk A in order; a joins B exactly when the part of B already built
    equals f(a) restricted to elements <= a."""
    built = 0
    upto = 0
    steps = []
    for a in inst.order:
        upto |= 1 << a
        target = inst.f[a] & upto
        if built == target:
            steps.append(TraceStep(a, members(built), members(target), EQ, frozenset({a})))
            built |= 1 << a
        else:
            steps.append(TraceStep(a, members(built), members(target), NE, frozenset()))
    return SubsetWitness(members(built), tuple(steps))


def chain_candidates(inst: PowersetInstance, chain_mask: int, condition: Condition):
    """Elements, in ≺-order, that may extend a chain whose elements form chain_mask."""
    for b in inst.order:
        if chain_mask >> b & 1:
            continue
        fb = inst.f[b]
        if condition is Condition.STAR:
            if fb == chain_mask:
                yield b
        elif fb & ~chain_mask == 0:
            yield b


def greedy_chain(inst: PowersetInstance, condition: Condition = Condition.STAR) -> SubsetWitness:
    """Extend the chain b_0, b_1, ... with the ≺-least admissible element until
    none is left. The trace lists the chain in order."""
    condition = Condition(condition)
    chain = 0
    steps = []
    gamma = 0
    while True:
        b = next(chain_candidates(inst, chain, condition), None)
        if b is None:
            break
        steps.append(TraceStep(gamma, members(inst.f[b]), members(chain),
                               EQ if condition is Condition.STAR else "⊆", b))
        chain |= 1 << b
        gamma += 1
    return SubsetWitness(members(chain), tuple(steps))


def stage_masks(inst: PowersetInstance) -> list[int]:
    seq = [0]
    while True:
        nxt = inst.phi(seq[-1])
        seq.append(nxt)
        if nxt == seq[-2]:
            return seq


def stages(inst: PowersetInstance) -> tuple[StageSequence, SubsetWitness]:
    seq = stage_masks(inst)
    steps = tuple(
        TraceStep(k, members(seq[k]), None, "", members(seq[k + 1]))
        for k in range(len(seq) - 1)
    )
    sets = tuple(members(m) for m in seq)
    return (
        StageSequence(sets, len(seq) - 2, tuple(seq)),
        SubsetWitness(sets[-1], steps),
    )


def reachability(inst: PowersetInstance) -> list[int]:
    """reach[a] = vertices reachable from a by one or more f-edges."""
    reach = list(inst.f)
    for k in range(inst.n):
        bit = 1 << k
        rk = reach[k]
        for i in range(inst.n):
            if reach[i] & bit:
                reach[i] |= rk
    return reach


def d_infinity(inst: PowersetInstance) -> SubsetWitness:
    """Elements from which no infinite f-chain starts: on a finite graph, those
    whose forward-reachable set touches no cycle."""
    reach = reachability(inst)
    cyclic = 0
    for v in range(inst.n):
        if reach[v] >> v & 1:
            cyclic |= 1 << v
    out = 0
    steps = []
    for a in range(inst.n):
        hits = reach[a] & cyclic
        if not hits:
            out |= 1 << a
        steps.append(TraceStep(a, members(reach[a]), members(cyclic),
                               "∩=∅" if not hits else "∩≠∅", not hits))
    return SubsetWitness(members(out), tuple(steps))


def d_n(inst: PowersetInstance, n: int) -> SubsetWitness:
    """Elements a with no closed f-walk a -> x_1 -> ... -> x_n -> a; n = 0 is
    the classical {a : a not in f(a)}."""
    if n < 0:
        raise ValueError("chain length must be >= 0")
    out = 0
    steps = []
    for a in range(inst.n):
        walk = 1 << a
        for _ in range(n + 1):
            walk = inst.image(walk)
        closes = bool(walk >> a & 1)
        if not closes:
            out |= 1 << a
        steps.append(TraceStep(a, members(walk), a, "∈" if closes else "∉", not closes))
    return SubsetWitness(members(out), tuple(steps))


def in_range(inst: PowersetInstance, subset) -> tuple[bool, int | None]:
    """(True, a) for the numerically least a with f(a) = subset, else (False, None)."""
    m = subset if isinstance(subset, int) else mask_of(subset)
    for a, fa in enumerate(inst.f):
        if fa == m:
            return True, a
    return False, None
