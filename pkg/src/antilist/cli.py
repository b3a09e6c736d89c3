"""Command-line front end: one subcommand per construction.

Fixtures come from ``--input PATH``, ``--inline TEXT`` or standard input.
Exit codes: 0 success, 1 verification failures, 2 bad input or violated
precondition.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from antilist import binseq, exactreal, oracle, powerset
from antilist.binseq import BitStream
from antilist.errors import AntilistError, FixtureError
from antilist.exactreal import DigitStream, DigitWord
from antilist.powerset import Condition, PowersetInstance, format_set


class UsageError(Exception):
    pass


# ------------------------------------------------------------ fixtures

def _lines(text: str) -> list[str]:
    out = []
    for raw in text.replace(";", "\n").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_streams(text: str) -> list[BitStream]:
    return [BitStream.parse(line) for line in _lines(text)]


def parse_reals(text: str, base: int | None = None) -> list[Fraction]:
    """``p/q`` per line; ``0.pre(period)[_b]`` digit streams are accepted too
    and stand for their exact value."""
    out = []
    for line in _lines(text):
        if line.startswith("0.") and "(" in line:
            out.append(DigitStream.parse(line, base).value())
        else:
            out.append(exactreal.parse_rational(line))
    return out


def emit_streams(streams) -> str:
    return "".join(f"{s}\n" for s in streams)


def emit_reals(reals) -> str:
    return "".join(f"{exactreal.format_rational(r)}\n" for r in reals)


def _read_input(args) -> str:
    if args.inline is not None:
        return args.inline
    if args.input and args.input != "-":
        try:
            with open(args.input, encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise FixtureError(f"cannot read {args.input}: {exc.strerror}") from None
    return sys.stdin.read()


# ------------------------------------------------------------ rendering

def _cell(v) -> str:
    if isinstance(v, Fraction):
        return str(v) if v else "0"
    if isinstance(v, frozenset):
        return format_set(v)
    if isinstance(v, tuple):
        if all(isinstance(x, int) for x in v):
            return "⟨" + ",".join(map(str, v)) + "⟩"
        return "(" + ", ".join(map(_cell, v)) + ")"
    if v is None:
        return "-"
    return str(v)


def render_trace(trace, headers=("step", "candidate", "target", "branch", "output")) -> str:
    rows = [headers] + [
        (str(s.index), _cell(s.candidate), _cell(s.target), s.branch or "-", _cell(s.output))
        for s in trace
    ]
    widths = [max(len(r[i]) for r in rows) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _bits(word) -> str:
    return "".join(map(str, word)) + "…"


def _real_lines(name: str, word: DigitWord) -> list[str]:
    value = word.value()
    return [f"{name} = {word.render()}",
            f"{name}|≤{len(word)} = {value if value else 0}"]


# ------------------------------------------------------------ commands

def _depth(args, available: int) -> int:
    return available if args.depth is None else args.depth


def _base_above_two(args, cmd):
    base = 3 if args.base is None else args.base
    if base <= 2:
        raise UsageError(f"base must exceed 2 for {cmd}")
    return base


def _base_two(args, cmd):
    if args.base is not None and args.base != 2:
        raise UsageError(f"base must be 2 for {cmd}")
    return 2


def cmd_seq(args) -> list[str]:
    streams = parse_streams(_read_input(args))
    if args.emit_fixture:
        return [emit_streams(streams).rstrip("\n")]
    n = _depth(args, len(streams))
    if n < 1:
        raise UsageError("depth must be at least 1")
    if args.command == "seq-diag":
        return [f"c = {_bits(binseq.classical_diagonal(streams, n))}"]
    word, trace = binseq.inductive_sigma(streams, n)
    out = [f"σ = {_bits(word)}"]
    if args.trace:
        out.append(render_trace(trace))
    return out


def cmd_real(args) -> list[str]:
    cmd = args.command
    if cmd in ("real-anti", "real-ind"):
        base = _base_above_two(args, cmd)
    else:
        base = _base_two(args, cmd)
    reals = parse_reals(_read_input(args), base)
    if args.emit_fixture:
        return [emit_reals(reals).rstrip("\n")]
    n = _depth(args, len(reals))
    if n < 1:
        raise UsageError("depth must be at least 1")
    trace = None
    if cmd == "real-anti":
        name, word = "c", exactreal.anti_diagonal(reals, base, n)
    elif cmd == "real-ind":
        name, (word, trace) = "σ", exactreal.inductive_real(reals, base, n)
    elif cmd == "real-h":
        name, word = "h", exactreal.hanf_h(reals, n)
    elif cmd == "real-pairs":
        name, word = "s", exactreal.pair_s(reals, n)
    else:
        name, (word, trace) = "σ", exactreal.pair_sigma(reals, n)
    out = _real_lines(name, word)
    if args.trace:
        if trace is None:
            exps = [exactreal.expansion(r, base) for r in reals[:n]]
            out.append("inputs:")
            out += [f"  r_{i} = {exactreal.format_rational(r)} = {e}"
                    for i, (r, e) in enumerate(zip(reals, exps), start=1)]
        else:
            out.append(render_trace(trace))
    return out


def cmd_pow(args) -> list[str]:
    inst = PowersetInstance.from_json(_read_input(args))
    if args.order is not None:
        try:
            order = [int(x) for x in args.order.split(",") if x.strip()]
            inst = inst.with_order(order)
        except ValueError as exc:
            raise UsageError(f"--order: {exc}") from None
    if args.emit_fixture:
        return [inst.to_json()]
    cmd = args.command
    out = []
    if cmd == "pow-b":
        name, w = "B", powerset.inductive_B(inst)
    elif cmd == "pow-chain":
        name, w = "B", powerset.greedy_chain(inst, Condition(args.condition))
        out.append("chain = " + ("⟨" + ", ".join(str(s.output) for s in w.trace) + "⟩"))
    elif cmd == "pow-stages":
        seq, w = powerset.stages(inst)
        name = "𝓑"
        out += [f"stage {k} = {format_set(s)}" for k, s in enumerate(seq.stages)]
        out.append(f"fixpoint index = {seq.fixpoint_index}")
    elif cmd == "pow-dn":
        if args.chain < 0:
            raise UsageError("chain length must be >= 0")
        name, w = f"D_{args.chain}", powerset.d_n(inst, args.chain)
    else:
        name, w = "D_∞", powerset.d_infinity(inst)
    out.append(f"{name} = {format_set(w.subset)}")
    hit, a = powerset.in_range(inst, w.subset)
    out.append(f"in range of f: yes (f({a}))" if hit else "in range of f: no")
    if args.trace:
        out.append(render_trace(w.trace))
    return out


def cmd_verify(args) -> tuple[list[str], int]:
    rep = oracle.verify_all(
        seed=args.seed,
        max_n=args.max_n,
        max_chain=args.max_chain,
        random_count=args.random,
        real_lists=args.real_lists,
    )
    return [rep.render()], 0 if rep.ok else 1


# ------------------------------------------------------------ parser

SEQ = ("seq-diag", "seq-ind")
REAL = ("real-anti", "real-ind", "real-h", "real-pairs", "real-pairind")
POW = ("pow-b", "pow-chain", "pow-stages", "pow-dn", "pow-dinf")

HELP = {
    "seq-diag": "classical anti-diagonal of a list of binary streams",
    "seq-ind": "inductive anti-list binary sequence",
    "real-anti": "anti-diagonal real in base b > 2",
    "real-ind": "inductive anti-list real in base b > 2",
    "real-h": "binary pair construction on b_{k,2k}",
    "real-pairs": "binary pair construction on digit pairs",
    "real-pairind": "inductive binary pair construction, value in [1/3, 2/3]",
    "pow-b": "inductive diagonal subset along the well-order",
    "pow-chain": "greedy maximal chain under the equality or subset condition",
    "pow-stages": "stage iteration and its fixpoint",
    "pow-dn": "sets with no closed f-walk of a given length",
    "pow-dinf": "elements with no infinite f-chain",
    "verify": "run the exhaustive brute-force verification",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="antilist", description="Inductive anti-list constructions with exact arithmetic."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def fixture_opts(p):
        src = p.add_mutually_exclusive_group()
        src.add_argument("-i", "--input", help="fixture file ('-' or omitted: stdin)")
        src.add_argument("-e", "--inline", help="fixture text; ';' separates lines")
        p.add_argument("--trace", action="store_true", help="print the step trace")
        p.add_argument("--emit-fixture", action="store_true",
                       help="print the parsed fixture in canonical form and exit")

    for name in SEQ + REAL:
        p = sub.add_parser(name, help=HELP[name])
        fixture_opts(p)
        p.add_argument("-d", "--depth", type=int,
                       help="digits (pairs for binary variants); default: list length")
        if name in REAL:
            p.add_argument("-b", "--base", type=int)
    for name in POW:
        p = sub.add_parser(name, help=HELP[name])
        fixture_opts(p)
        p.add_argument("--order", help="comma-separated well-order, least first")
        if name == "pow-chain":
            p.add_argument("--condition", choices=[c.value for c in Condition], default="star")
        if name == "pow-dn":
            p.add_argument("-k", "--chain", type=int, default=0, help="chain length n >= 0")

    p = sub.add_parser("verify", help=HELP["verify"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-chain", type=int, default=3)
    p.add_argument("--random", type=int, default=1000, help="random n=12 instances")
    p.add_argument("--real-lists", type=int, default=500)
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            lines, code = cmd_verify(args)
        elif args.command in SEQ:
            lines, code = cmd_seq(args), 0
        elif args.command in REAL:
            lines, code = cmd_real(args), 0
        else:
            lines, code = cmd_pow(args), 0
    except (UsageError, AntilistError, ValueError) as exc:
        print(f"antilist {args.command}: error: {exc}", file=sys.stderr)
        return 2
    for line in lines:
        print(line)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
