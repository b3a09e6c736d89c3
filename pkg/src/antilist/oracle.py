"""Brute-force ground truth for every construction.

Each named property check takes its witness from a *provider*: a function of
the instance (or list) that calls the library construction under test. The
checks themselves recompute everything they compare against from the literal
definitions (tuple enumeration, truncation formulas, subset enumeration), so
they stay independent of the code paths they judge. Passing ``providers``
overrides individual witnesses, which is how the mutation self-tests inject a
single fault.
"""

from __future__ import annotations

import json
import math
import random
import time
from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from antilist import binseq, exactreal, powerset
from antilist.binseq import BitStream
from antilist.powerset import Condition, PowersetInstance, members

ALL = "all"
IDENTITY = "identity"

# exhaustive choice-function enumeration for Theorem-4 chains stays below this size
ALL_CHAINS_MAX_N = 3
LEASTNESS_MAX_N = 8


@dataclass(frozen=True, order=True)
class Failure:
    property: str
    instance: str
    witness: str


@dataclass
class VerificationReport:
    instances_checked: int = 0
    failures: list[Failure] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, prop: str, instance, witness) -> None:
        self.failures.append(Failure(prop, str(instance), str(witness)))

    def merge(self, other: VerificationReport) -> VerificationReport:
        self.instances_checked += other.instances_checked
        self.failures.extend(other.failures)
        self.elapsed += other.elapsed
        return self

    def finalize(self) -> VerificationReport:
        self.failures.sort()
        return self

    def failed_properties(self) -> set[str]:
        return {f.property for f in self.failures}

    def to_dict(self, max_failures: int | None = 50) -> dict:
        shown = self.failures if max_failures is None else self.failures[:max_failures]
        return {
            "instances_checked": self.instances_checked,
            "failure_count": len(self.failures),
            "failed_properties": sorted(self.failed_properties()),
            "failures": [vars(f) for f in shown],
            "elapsed_seconds": round(self.elapsed, 3),
            "ok": self.ok,
        }

    def render(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)


# ---------------------------------------------------------------- powerset

def enumerate_instances(n: int, orders: str = ALL) -> Iterator[PowersetInstance]:
    """Every f: A -> P(A) on A = {0..n-1}, crossed with every order (ALL) or
    just the identity order."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if orders == ALL:
        order_list = list(permutations(range(n)))
    elif orders == IDENTITY:
        order_list = [tuple(range(n))]
    else:
        raise ValueError(f"orders must be {ALL!r} or {IDENTITY!r}")
    for f in product(range(1 << n), repeat=n):
        for order in order_list:
            yield PowersetInstance(n, order, f)


def random_instance(rng: random.Random, n: int) -> PowersetInstance:
    """Random f with a per-instance edge density drawn from [0, 0.35], so that
    both cyclic and well-founded parts show up at n = 12."""
    p = rng.uniform(0.0, 0.35)
    f = tuple(
        sum(1 << y for y in range(n) if rng.random() < p) for _ in range(n)
    )
    order = list(range(n))
    rng.shuffle(order)
    return PowersetInstance(n, tuple(order), f)


@lru_cache(maxsize=4)
def _stages(inst):
    return powerset.stages(inst)


def _chain_of(w: powerset.SubsetWitness) -> tuple[int, ...]:
    return tuple(step.output for step in w.trace)


DEFAULT_POWERSET_PROVIDERS: dict[str, Callable] = {
    "theorem3": lambda inst: powerset.inductive_B(inst).mask,
    "theorem4.star": lambda inst: _chain_of(powerset.greedy_chain(inst, Condition.STAR)),
    "theorem4.relaxed": lambda inst: _chain_of(powerset.greedy_chain(inst, Condition.RELAXED)),
    "theorem5": lambda inst: _stages(inst)[1].mask,
    "proposition": lambda inst: (_stages(inst)[1].mask, powerset.d_infinity(inst).mask),
    "least_fixpoint": lambda inst: _stages(inst)[0].masks,
    "star_prime": lambda inst: (
        powerset.greedy_chain(inst, Condition.RELAXED).mask,
        _stages(inst)[1].mask,
    ),
    "d_k": lambda inst, k: powerset.d_n(inst, k).mask,
}

POWERSET_PROPERTIES = tuple(DEFAULT_POWERSET_PROVIDERS)


def _in_range(inst: PowersetInstance, mask: int) -> bool:
    return mask in inst.f


def _brute_d(inst: PowersetInstance, k: int) -> int:
    """D_k straight from its definition: search every f-chain a, x_1, ..., x_k
    and test whether a is in f(x_k)."""
    succ = [sorted(members(m)) for m in inst.f]
    out = 0
    for a in range(inst.n):
        frontier = [a]
        for _ in range(k):
            frontier = [y for x in frontier for y in succ[x]]
        if not any(a in succ[x] for x in frontier):
            out |= 1 << a
    return out


def _maximal_chains(inst: PowersetInstance, condition: Condition) -> Iterator[tuple[int, ...]]:
    """Every chain that admits no further extension, over all choice functions."""
    stack = [((), 0)]
    while stack:
        chain, mask = stack.pop()
        cands = list(powerset.chain_candidates(inst, mask, condition))
        if not cands:
            yield chain
        for b in cands:
            stack.append(((*chain, b), mask | 1 << b))


def _check_chain(inst, chain, condition, prop, report, label):
    earlier = 0
    for b in chain:
        if earlier >> b & 1:
            report.fail(prop, label, f"chain {list(chain)} repeats {b}")
            return
        fb = inst.f[b]
        ok = fb == earlier if condition is Condition.STAR else fb & ~earlier == 0
        if not ok:
            report.fail(prop, label, f"chain {list(chain)} violates the condition at {b}")
            return
        earlier |= 1 << b
    for x in range(inst.n):
        if earlier >> x & 1:
            continue
        fx = inst.f[x]
        if (fx == earlier) if condition is Condition.STAR else (fx & ~earlier == 0):
            report.fail(prop, label, f"chain {list(chain)} is not maximal: {x} extends it")
            return
    if _in_range(inst, earlier):
        report.fail(prop, label, f"chain set {powerset.format_set(earlier)} is in range of f")


def verify_instance(
    inst: PowersetInstance,
    max_chain: int = 3,
    providers: Mapping[str, Callable] | None = None,
    report: VerificationReport | None = None,
) -> VerificationReport:
    """Check every powerset property on one instance."""
    p = dict(DEFAULT_POWERSET_PROVIDERS)
    if providers:
        unknown = set(providers) - set(p)
        if unknown:
            raise KeyError(f"unknown properties {sorted(unknown)}")
        p.update(providers)
    rep = report if report is not None else VerificationReport()
    rep.instances_checked += 1
    label = inst.to_json()
    n, f, full = inst.n, inst.f, inst.full

    # Theorem 3: B|<=a != f(a)|<=a for every a, and B outside the range of f
    B = p["theorem3"](inst)
    upto = 0
    for a in inst.order:
        upto |= 1 << a
        if B & upto == f[a] & upto:
            rep.fail("theorem3", label, f"B={powerset.format_set(B)} agrees with f({a}) up to {a}")
            break
    else:
        if _in_range(inst, B):
            rep.fail("theorem3", label, f"B={powerset.format_set(B)} is in range of f")

    # Theorem 4: greedy chains are genuine maximal chains outside the range
    for cond, prop in ((Condition.STAR, "theorem4.star"), (Condition.RELAXED, "theorem4.relaxed")):
        _check_chain(inst, p[prop](inst), cond, prop, rep, label)
        if n <= ALL_CHAINS_MAX_N:
            for chain in _maximal_chains(inst, cond):
                _check_chain(inst, chain, cond, prop, rep, label)

    # Theorem 5
    script_b = p["theorem5"](inst)
    if _in_range(inst, script_b):
        rep.fail("theorem5", label, f"𝓑={powerset.format_set(script_b)} is in range of f")

    # Proposition: fixpoint iteration and cycle reachability agree
    fix, dinf = p["proposition"](inst)
    if fix != dinf:
        rep.fail("proposition", label,
                 f"𝓑={powerset.format_set(fix)} but D_∞={powerset.format_set(dinf)}")

    # least fixpoint of S -> {x : f(x) subset of S}
    seq = p["least_fixpoint"](inst)
    top = seq[-1]

    def phi(s):
        return sum(1 << x for x in range(n) if f[x] & ~s == 0)

    problems = []
    if seq[0] != 0:
        problems.append("first stage is not empty")
    if phi(top) != top:
        problems.append("last stage is not a fixpoint")
    for k in range(len(seq) - 1):
        if seq[k] & ~seq[k + 1]:
            problems.append(f"stage {k} not contained in stage {k + 1}")
        if seq[k + 1] != phi(seq[k]):
            problems.append(f"stage {k + 1} is not the stage operator applied to stage {k}")
    if len(seq) - 2 > n + 1:
        problems.append(f"fixpoint index {len(seq) - 2} exceeds n+1")
    if n <= LEASTNESS_MAX_N:
        for s in range(full + 1):
            if phi(s) == s and top & ~s:
                problems.append(f"smaller fixpoint {powerset.format_set(s)}")
                break
    if problems:
        rep.fail("least_fixpoint", label, "; ".join(problems))

    # finite reading of the triple construction: singleton stages give 𝓑 too
    relaxed, fix2 = p["star_prime"](inst)
    if relaxed != fix2:
        rep.fail("star_prime", label,
                 f"relaxed chain {powerset.format_set(relaxed)} != 𝓑 {powerset.format_set(fix2)}")

    for k in range(max_chain + 1):
        dk = p["d_k"](inst, k)
        expected = _brute_d(inst, k)
        if dk != expected:
            rep.fail("d_k", label, f"D_{k}={powerset.format_set(dk)}, "
                                    f"definition gives {powerset.format_set(expected)}")
        elif _in_range(inst, dk):
            rep.fail("d_k", label, f"D_{k}={powerset.format_set(dk)} is in range of f")
    return rep


def verify_powerset(
    max_n: int = 4,
    max_chain: int = 3,
    all_orders_max_n: int = 3,
    random_count: int = 1000,
    random_n: int = 12,
    seed: int = 0,
    providers: Mapping[str, Callable] | None = None,
) -> VerificationReport:
    """The exhaustive plan: every instance with n <= all_orders_max_n under
    every order, identity order up to max_n, then seeded random instances
    (checked for the fixpoint/reachability agreement only)."""
    start = time.perf_counter()
    rep = VerificationReport()
    for n in range(max_n + 1):
        orders = ALL if n <= all_orders_max_n else IDENTITY
        for inst in enumerate_instances(n, orders):
            verify_instance(inst, max_chain, providers, rep)
    rep.merge(verify_random_agreement(random_count, random_n, seed, providers))
    rep.elapsed = time.perf_counter() - start
    return rep.finalize()


def verify_random_agreement(
    count: int, n: int, seed: int = 0, providers: Mapping[str, Callable] | None = None
) -> VerificationReport:
    prov = (providers or {}).get("proposition", DEFAULT_POWERSET_PROVIDERS["proposition"])
    rng = random.Random(seed)
    rep = VerificationReport()
    for _ in range(count):
        inst = random_instance(rng, n)
        rep.instances_checked += 1
        fix, dinf = prov(inst)
        if fix != dinf:
            rep.fail("proposition", inst.to_json(),
                     f"𝓑={powerset.format_set(fix)} but D_∞={powerset.format_set(dinf)}")
    return rep


# ---------------------------------------------------------------- sequences

def truncation(r: Fraction, base: int, n: int) -> Fraction:
    """Depth-n truncation of the non-terminating expansion: the largest
    multiple of base^-n strictly below r."""
    scale = base**n
    return Fraction(math.ceil(r * scale) - 1, scale)


def oracle_digit(r: Fraction, base: int, j: int) -> int:
    return int(truncation(r, base, j) * base**j - truncation(r, base, j - 1) * base**j)


@dataclass(frozen=True)
class SequenceFamily:
    """Inputs for :func:`verify_sequences`.

    ``streams`` are combined into every list of length 1..depth; ``real_lists``
    are fed to the real-number constructions (inductive/anti-diagonal in each
    of ``bases``, binary variants in base 2); ``expansion_max_den`` sweeps
    every p/q with q up to that bound through ``expansion``; ``golden`` pins
    exact outputs as (construction, reals, base, digits).
    """

    streams: tuple[BitStream, ...] = ()
    real_lists: tuple[tuple[Fraction, ...], ...] = ()
    bases: tuple[int, ...] = (3,)
    expansion_max_den: int = 0
    expansion_bases: tuple[int, ...] = (2, 3, 10)
    golden: tuple[tuple[str, tuple[Fraction, ...], int, tuple[int, ...]], ...] = ()


def random_rational_lists(count: int, length: int, max_den: int, seed: int):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        lst = []
        for _ in range(length):
            q = rng.randint(1, max_den)
            lst.append(Fraction(rng.randint(1, q), q))
        out.append(tuple(lst))
    return tuple(out)


def paper_family() -> SequenceFamily:
    lst = exactreal.PAPER_LIST_BASE3
    return SequenceFamily(
        real_lists=(lst,),
        bases=(3,),
        golden=(
            ("anti_diagonal", lst, 3, (2, 2, 1, 2, 2, 1)),
            ("inductive_real", lst, 3, (2, 1, 1, 1, 2, 1)),
        ),
    )


DEFAULT_SEQUENCE_PROVIDERS: dict[str, Callable] = {
    "binseq.divergence": lambda streams, n: binseq.inductive_sigma(streams, n)[0],
    "binseq.classical_divergence": binseq.classical_diagonal,
    "binseq.base_case": lambda streams: (
        binseq.inductive_sigma(streams, 1)[0][0],
        binseq.classical_diagonal(streams, 1)[0],
    ),
    "exactreal.expansion": exactreal.expansion,
    "exactreal.divergence": lambda reals, b, n: exactreal.inductive_real(reals, b, n)[0].digits,
    "exactreal.anti_diagonal": lambda reals, b, n: exactreal.anti_diagonal(reals, b, n).digits,
    "exactreal.hanf": lambda reals, n: exactreal.hanf_h(reals, n).digits,
    "exactreal.pair_s": lambda reals, n: exactreal.pair_s(reals, n).digits,
    "exactreal.pair_sigma": lambda reals, n: exactreal.pair_sigma(reals, n)[0].digits,
}

_GOLDEN_OPS = {
    "anti_diagonal": lambda reals, b, n: exactreal.anti_diagonal(reals, b, n).digits,
    "inductive_real": lambda reals, b, n: exactreal.inductive_real(reals, b, n)[0].digits,
}

SEQUENCE_PROPERTIES = (*DEFAULT_SEQUENCE_PROVIDERS, "exactreal.golden")


def _word_value(digits, base) -> Fraction:
    return sum((Fraction(d, base**i) for i, d in enumerate(digits, start=1)), Fraction(0))


def _check_expansion(stream, r, base, rep, prop):
    label = f"{exactreal.format_rational(r)} base {base}"
    pre, per = tuple(stream.preperiod), tuple(stream.period)
    m, p = len(pre), len(per)
    if p == 0 or not any(per):
        rep.fail(prop, label, f"period {per} is empty or all zero")
        return
    digits = pre + per
    for j, d in enumerate(digits, start=1):
        if d != oracle_digit(r, base, j):
            rep.fail(prop, label, f"digit {j} is {d}, expected {oracle_digit(r, base, j)}")
            return
    # the remainder after m digits must recur after m+p digits
    rem_m = r * base**m - truncation(r, base, m) * base**m
    rem_mp = r * base ** (m + p) - truncation(r, base, m + p) * base ** (m + p)
    if rem_m != rem_mp:
        rep.fail(prop, label, f"digits do not repeat with period {p} after {m}")
        return
    n_pre = 0
    for d in pre:
        n_pre = n_pre * base + d
    n_per = 0
    for d in per:
        n_per = n_per * base + d
    value = Fraction(n_pre * (base**p - 1) + n_per, base**m * (base**p - 1))
    if value != r:
        rep.fail(prop, label, f"value {value} != {r}")


def _stream_lists(family: Sequence[BitStream], depth: int) -> Iterator[tuple[BitStream, ...]]:
    for length in range(1, depth + 1):
        yield from product(family, repeat=length)


def verify_sequences(
    depth: int,
    family: SequenceFamily | Iterable[BitStream],
    providers: Mapping[str, Callable] | None = None,
) -> VerificationReport:
    """Check the divergence invariants of every sequence construction.

    A bare iterable of streams is taken as ``SequenceFamily(streams=...)``.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if not isinstance(family, SequenceFamily):
        family = SequenceFamily(streams=tuple(family))
    p = dict(DEFAULT_SEQUENCE_PROVIDERS)
    if providers:
        unknown = set(providers) - set(p)
        if unknown:
            raise KeyError(f"unknown properties {sorted(unknown)}")
        p.update(providers)
    start = time.perf_counter()
    rep = VerificationReport()

    for streams in _stream_lists(family.streams, depth):
        rep.instances_checked += 1
        k_max = len(streams)
        label = " ".join(map(str, streams))
        sigma = p["binseq.divergence"](streams, k_max)
        if len(sigma) != k_max:
            rep.fail("binseq.divergence", label, f"length {len(sigma)} != {k_max}")
        else:
            for k in range(1, k_max + 1):
                if tuple(sigma[:k]) == tuple(streams[k - 1].at(i) for i in range(1, k + 1)):
                    rep.fail("binseq.divergence", label, f"sigma|<={k} equals s_{k}|<={k}")
                    break
        c = p["binseq.classical_divergence"](streams, k_max)
        for i in range(1, k_max + 1):
            if c[i - 1] == streams[i - 1].at(i):
                rep.fail("binseq.classical_divergence", label, f"c_{i} equals s_{i}|_{i}")
                break
        s1, c1 = p["binseq.base_case"](streams)
        expected = 1 - streams[0].at(1)
        if not s1 == c1 == expected:
            rep.fail("binseq.base_case", label, f"sigma_1={s1}, c_1={c1}, 1-s_1|_1={expected}")

    for q in range(1, family.expansion_max_den + 1):
        for num in range(1, q + 1):
            if math.gcd(num, q) != 1:
                continue
            r = Fraction(num, q)
            for b in family.expansion_bases:
                rep.instances_checked += 1
                _check_expansion(p["exactreal.expansion"](r, b), r, b, rep, "exactreal.expansion")

    for reals in family.real_lists:
        n = len(reals)
        label = " ".join(map(exactreal.format_rational, reals))
        for b in family.bases:
            rep.instances_checked += 1
            tl = f"{label} base {b}"
            sigma = p["exactreal.divergence"](reals, b, n)
            if any(d not in (1, 2) for d in sigma):
                rep.fail("exactreal.divergence", tl, f"digits {sigma} not all in {{1,2}}")
            for k in range(1, n + 1):
                if _word_value(sigma[:k], b) == truncation(reals[k - 1], b, k):
                    rep.fail("exactreal.divergence", tl, f"sigma|<={k} equals r_{k}|<={k}")
                    break
            c = p["exactreal.anti_diagonal"](reals, b, n)
            for i in range(1, n + 1):
                if c[i - 1] not in (1, 2) or c[i - 1] == oracle_digit(reals[i - 1], b, i):
                    rep.fail("exactreal.anti_diagonal", tl, f"c_{i}={c[i - 1]} against d_{i},{i}")
                    break

        rep.instances_checked += 1
        h = p["exactreal.hanf"](reals, n)
        s = p["exactreal.pair_s"](reals, n)
        ps = p["exactreal.pair_sigma"](reals, n)
        for name, word in (("exactreal.hanf", h), ("exactreal.pair_s", s), ("exactreal.pair_sigma", ps)):
            if len(word) != 2 * n or any(
                (word[2 * i], word[2 * i + 1]) not in ((0, 1), (1, 0)) for i in range(n)
            ):
                rep.fail(name, label, f"output {word} is not {n} pairs from {{01, 10}}")
        for k in range(1, n + 1):
            r = reals[k - 1]
            b_odd, b_even = oracle_digit(r, 2, 2 * k - 1), oracle_digit(r, 2, 2 * k)
            if len(h) >= 2 * k and h[2 * k - 1] == b_even:
                rep.fail("exactreal.hanf", label, f"h_{2 * k} equals b_{k},{2 * k}")
                break
        for k in range(1, n + 1):
            r = reals[k - 1]
            pair = (oracle_digit(r, 2, 2 * k - 1), oracle_digit(r, 2, 2 * k))
            if tuple(s[2 * k - 2:2 * k]) == pair:
                rep.fail("exactreal.pair_s", label, f"pair {k} equals r_{k}'s pair {pair}")
                break
        for k in range(1, n + 1):
            if _word_value(ps[:2 * k], 2) == truncation(reals[k - 1], 2, 2 * k):
                rep.fail("exactreal.pair_sigma", label, f"sigma|<={2 * k} equals r_{k}|<={2 * k}")
                break
        v = _word_value(ps, 2)
        lo = Fraction(1, 3) * (1 - Fraction(1, 4**n))
        if not lo <= v <= Fraction(2, 3):
            rep.fail("exactreal.pair_sigma", label, f"value {v} outside [{lo}, 2/3]")

    for op, reals, b, digits in family.golden:
        rep.instances_checked += 1
        got = tuple(_GOLDEN_OPS[op](reals, b, len(digits)))
        if got != tuple(digits):
            rep.fail("exactreal.golden", op, f"got {got}, expected {tuple(digits)}")

    rep.elapsed = time.perf_counter() - start
    return rep.finalize()


def verify_all(
    seed: int = 0,
    max_n: int = 4,
    max_chain: int = 3,
    random_count: int = 1000,
    real_lists: int = 500,
) -> VerificationReport:
    """Everything the CLI's ``verify`` runs."""
    rep = verify_powerset(max_n=max_n, max_chain=max_chain, random_count=random_count, seed=seed)
    rep.merge(verify_sequences(4, binseq.all_streams(1, 2)))
    rep.merge(verify_sequences(6, paper_family()))
    rep.merge(verify_sequences(1, SequenceFamily(
        real_lists=random_rational_lists(real_lists, 20, 64, seed),
        bases=(3, 10),
        expansion_max_den=50,
    )))
    return rep.finalize()
