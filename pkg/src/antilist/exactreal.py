"""Exact rationals in (0,1], their non-terminating base-b expansions, and the
anti-list constructions over lists of reals.

All arithmetic is done with :class:`fractions.Fraction`; nothing here touches
floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from antilist.errors import FixtureError, PreconditionError
from antilist.trace import EQ, NE, ConstructionTrace, Provider, TraceStep, take

_ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyz"


def rational(p: int, q: int = 1) -> Fraction:
    """Validated constructor for a real in (0,1]."""
    r = Fraction(p, q)
    check_unit(r)
    return r


def check_unit(r: Fraction) -> None:
    if not 0 < r <= 1:
        raise PreconditionError(f"{r} is not in (0,1]")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    m = re.fullmatch(r"(\d+)\s*/\s*(\d+)|(\d+)", text)
    if not m:
        raise FixtureError(f"rational {text!r} must look like 'p/q'")
    if m.group(3) is not None:
        r = Fraction(int(m.group(3)))
    else:
        if int(m.group(2)) == 0:
            raise FixtureError(f"rational {text!r} has zero denominator")
        r = Fraction(int(m.group(1)), int(m.group(2)))
    if not 0 < r <= 1:
        raise FixtureError(f"rational {text!r} is not in (0,1]")
    return r


def format_rational(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


def _digit_char(d: int) -> str:
    return _ALPHABET[d] if d < len(_ALPHABET) else f"[{d}]"


def _digits_str(digits) -> str:
    return "".join(_digit_char(d) for d in digits)


def _check_base(base: int) -> None:
    if not isinstance(base, int) or base < 2:
        raise PreconditionError(f"base must be an integer >= 2, got {base!r}")


@dataclass(frozen=True)
class DigitWord:
    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(self.digits))
        _check_base(self.base)
        if any(not 0 <= d < self.base for d in self.digits):
            raise ValueError(f"digit out of range for base {self.base}")

    def __len__(self):
        return len(self.digits)

    def value(self) -> Fraction:
        """sum of d_j * b^-j over the word; may be 0."""
        num = 0
        for d in self.digits:
            num = num * self.base + d
        return Fraction(num, self.base ** len(self.digits))

    def render(self, truncated: bool = True) -> str:
        tail = "…" if truncated else ""
        return f"0.{_digits_str(self.digits)}{tail}_{self.base}"


@dataclass(frozen=True)
class DigitStream:
    """d_1 d_2 ... in base b: a preperiod followed by a repeated period that is
    not all zeros, so the expansion never terminates."""

    base: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        _check_base(self.base)
        if not self.period:
            raise ValueError("period must be nonempty")
        if any(not 0 <= d < self.base for d in self.preperiod + self.period):
            raise ValueError(f"digit out of range for base {self.base}")
        if not any(self.period):
            raise ValueError("period is all zeros: expansion would terminate")

    def at(self, i: int) -> int:
        if i < 1:
            raise IndexError("digits are indexed from 1")
        m = len(self.preperiod)
        if i <= m:
            return self.preperiod[i - 1]
        return self.period[(i - m - 1) % len(self.period)]

    def word(self, n: int) -> DigitWord:
        return DigitWord(self.base, tuple(self.at(i) for i in range(1, n + 1)))

    def value(self) -> Fraction:
        b = self.base
        pre = DigitWord(b, self.preperiod).value()
        per = DigitWord(b, self.period).value()
        # period word w repeated forever is w * b^p / (b^p - 1)
        p = len(self.period)
        return pre + per * Fraction(b**p, b**p - 1) / b ** len(self.preperiod)

    def __str__(self):
        return f"0.{_digits_str(self.preperiod)}({_digits_str(self.period)})_{self.base}"

    @classmethod
    def parse(cls, text: str, base: int | None = None) -> DigitStream:
        """Parse ``0.<pre>(<period>)_b``; the ``_b`` suffix may be omitted when
        ``base`` is given."""
        m = re.fullmatch(r"0\.([0-9a-z]*)\(([0-9a-z]+)\)(?:_(\d+))?", text.strip())
        if not m:
            raise FixtureError(f"digit stream {text!r} must look like '0.pre(period)_b'")
        if m.group(3) is not None:
            b = int(m.group(3))
            if base is not None and b != base:
                raise FixtureError(f"stream {text!r} is in base {b}, expected {base}")
        elif base is None:
            raise FixtureError(f"stream {text!r} names no base")
        else:
            b = base
        try:
            return cls(
                b,
                tuple(_ALPHABET.index(c) for c in m.group(1)),
                tuple(_ALPHABET.index(c) for c in m.group(2)),
            )
        except ValueError as exc:
            raise FixtureError(f"digit stream {text!r}: {exc}") from None


def expansion(r: Fraction, base: int) -> DigitStream:
    """The unique expansion of r in (0,1] whose digits are not ultimately 0.

    Terminating rationals come out in their (b-1)-tail form, e.g. 1/3 in base
    3 is 0.0(2). Each step takes the largest digit d with d/b < remainder
    (strictly), which keeps the remainder in (0,1] instead of letting it hit 0.
    """
    _check_base(base)
    r = Fraction(r)
    check_unit(r)
    p, q = r.numerator, r.denominator
    seen: dict[int, int] = {}
    digits = []
    # invariant: remainder p/q in (0,1]
    while p not in seen:
        seen[p] = len(digits)
        d = (p * base - 1) // q
        digits.append(d)
        p = p * base - d * q
    start = seen[p]
    return DigitStream(base, tuple(digits[:start]), tuple(digits[start:]))


def partial_sum(d: DigitStream, n: int) -> Fraction:
    """sum_{j<=n} d_j b^-j, i.e. the value of the first n summands (may be 0)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return d.word(n).value()


def _require_base_above_two(base, op):
    if not isinstance(base, int) or base <= 2:
        raise PreconditionError(f"base must exceed 2 for {op}")


def anti_diagonal(reals: Provider[Fraction], base: int, n: int) -> DigitWord:
    """c_i = 2 if the i-th digit of r_i is 1, else 1."""
    _require_base_above_two(base, "anti_diagonal")
    out = []
    for i, r in enumerate(take(reals, n), start=1):
        out.append(2 if expansion(r, base).at(i) == 1 else 1)
    return DigitWord(base, out)


def inductive_real(
    reals: Provider[Fraction], base: int, n: int
) -> tuple[DigitWord, ConstructionTrace]:
    """sigma_k = 2 when appending digit 1 at position k to the digits chosen so
    far gives exactly the depth-k truncation of r_k, else 1."""
    _require_base_above_two(base, "inductive_real")
    sigma: list[int] = []
    so_far = Fraction(0)
    steps = []
    for k, r in enumerate(take(reals, n), start=1):
        unit = Fraction(1, base**k)
        candidate = so_far + unit
        target = partial_sum(expansion(r, base), k)
        if candidate == target:
            digit, branch = 2, EQ
        else:
            digit, branch = 1, NE
        sigma.append(digit)
        so_far += digit * unit
        steps.append(TraceStep(k, candidate, target, branch, digit))
    return DigitWord(base, sigma), tuple(steps)


def _binary(reals, n):
    return [expansion(r, 2) for r in take(reals, n)]


def hanf_h(reals: Provider[Fraction], n: int) -> DigitWord:
    """Pairs (h_{2k-1}, h_{2k}) = (0,1) if b_{k,2k} = 0 else (1,0)."""
    out: list[int] = []
    for k, e in enumerate(_binary(reals, n), start=1):
        out += (0, 1) if e.at(2 * k) == 0 else (1, 0)
    return DigitWord(2, out)


def pair_s(reals: Provider[Fraction], n: int) -> DigitWord:
    """Pairs (s_{2k-1}, s_{2k}) = (1,0) if r_k's digit pair at 2k-1, 2k is
    (0,1), else (0,1)."""
    out: list[int] = []
    for k, e in enumerate(_binary(reals, n), start=1):
        out += (1, 0) if (e.at(2 * k - 1), e.at(2 * k)) == (0, 1) else (0, 1)
    return DigitWord(2, out)


def pair_sigma(
    reals: Provider[Fraction], n: int
) -> tuple[DigitWord, ConstructionTrace]:
    """Inductive binary variant: emit (1,0) when the pairs so far plus 2^-2k
    equal the depth-2k truncation of r_k, else (0,1). The result always lies
    in [1/3, 2/3]."""
    sigma: list[int] = []
    so_far = Fraction(0)
    steps = []
    for k, e in enumerate(_binary(reals, n), start=1):
        candidate = so_far + Fraction(1, 4**k)
        target = partial_sum(e, 2 * k)
        if candidate == target:
            pair, branch = (1, 0), EQ
        else:
            pair, branch = (0, 1), NE
        sigma += pair
        so_far += Fraction(2 * pair[0] + pair[1], 4**k)
        steps.append(TraceStep(k, candidate, target, branch, pair))
    return DigitWord(2, sigma), tuple(steps)


# the worked base-3 list: 0.1(2), 0.(1), 0.(2), 0.(21), 0.2(1), 0.(12)
PAPER_LIST_BASE3 = tuple(
    Fraction(p, q) for p, q in ((2, 3), (1, 2), (1, 1), (7, 8), (5, 6), (5, 8))
)
