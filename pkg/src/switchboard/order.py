"""Finite strict posets, the height function, and the chain switchboard."""

from __future__ import annotations

import graphlib
from dataclasses import dataclass

from .core import Switchboard, ValidationReport, Violation
from .errors import FormatError, InvalidStructure


@dataclass(frozen=True)
class FinitePoset:
    carrier: tuple
    pairs: frozenset = frozenset()

    def __post_init__(self):
        carrier = tuple(self.carrier)
        if len(set(carrier)) != len(carrier):
            raise FormatError("poset carrier has repeated keys")
        keys = set(carrier)
        pairs = frozenset((a, b) for a, b in self.pairs)
        for a, b in pairs:
            if a not in keys or b not in keys:
                raise FormatError(f"pair ({a!r}, {b!r}) leaves the carrier")
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "pairs", pairs)


def validate_poset(p: FinitePoset) -> ValidationReport:
    out = []
    succ: dict = {}
    for a, b in p.pairs:
        succ.setdefault(a, set()).add(b)
    for a, b in sorted(p.pairs, key=repr):
        if a == b:
            out.append(Violation("irreflexive", (a,)))
        elif (b, a) in p.pairs:
            out.append(Violation("asymmetric", (a, b)))
        for c in sorted(succ.get(b, ()), key=repr):
            if (a, c) not in p.pairs:
                out.append(Violation("transitive", (a, b, c)))
    return ValidationReport(tuple(out))


def hgt_all(p: FinitePoset):
    """Heights of every key and the height of the poset.

    ``hgt(a)`` is the length of the longest chain strictly below ``a``
    (minimal elements get 0); the poset height is the largest chain
    cardinality, i.e. ``max hgt + 1``, or 0 when empty.
    """
    report = validate_poset(p)
    if not report.valid:
        raise InvalidStructure(report, "poset")
    preds: dict = {k: set() for k in p.carrier}
    for a, b in p.pairs:
        preds[b].add(a)
    try:
        order = list(graphlib.TopologicalSorter(preds).static_order())
    except graphlib.CycleError as exc:
        raise InvalidStructure(ValidationReport((Violation("acyclic", tuple(exc.args[1])),)), "poset") from None
    hgt: dict = {}
    for k in order:
        hgt[k] = 1 + max((hgt[j] for j in preds[k]), default=-1)
    height = max(hgt.values()) + 1 if hgt else 0
    return {k: hgt[k] for k in p.carrier}, height


def edge_poset(s) -> FinitePoset:
    return FinitePoset(tuple(s.edges()), s.lt)


def chain_switchboard(k: int) -> Switchboard:
    """Elements ``0..2k-1`` with {0,1} < {2,3} < ... closed transitively, nothing else."""
    if k < 0:
        raise ValueError("k must be non-negative")
    chain = [(2 * i, 2 * i + 1) for i in range(k)]
    lt = frozenset((chain[i], chain[j]) for i in range(k) for j in range(i + 1, k))
    return Switchboard(2 * k, lt)


def _key_str(key) -> str:
    if isinstance(key, tuple):
        return "(" + ",".join(_key_str(x) for x in key) + ")"
    return str(key)


def dump_poset(p: FinitePoset) -> str:
    lines = [f"node {_key_str(k)}" for k in p.carrier]
    index = {k: i for i, k in enumerate(p.carrier)}
    for a, b in sorted(p.pairs, key=lambda ab: (index[ab[0]], index[ab[1]])):
        lines.append(f"lt {_key_str(a)} {_key_str(b)}")
    return "\n".join(lines) + ("\n" if lines else "")


def _parse_key(tok: str, lineno: int):
    if tok.startswith("(") and tok.endswith(")"):
        inner = tok[1:-1]
        if not inner:
            return ()
        try:
            return tuple(int(x) for x in inner.split(","))
        except ValueError:
            raise FormatError(f"bad tuple key {tok!r}", lineno) from None
    try:
        return int(tok)
    except ValueError:
        return tok


def load_poset(text: str) -> FinitePoset:
    carrier, pairs = [], set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "node" and len(tokens) == 2:
            carrier.append(_parse_key(tokens[1], lineno))
        elif tokens[0] == "lt" and len(tokens) == 3:
            pairs.add((_parse_key(tokens[1], lineno), _parse_key(tokens[2], lineno)))
        else:
            raise FormatError(f"expected 'node <key>' or 'lt <key> <key>', got {line!r}", lineno)
    return FinitePoset(tuple(carrier), frozenset(pairs))
