"""Quantifier-free types over a base and the symmetry predicates on 2-types.

A type is the full atomic diagram of ``tuple ∪ base``.  Terms are written
``(0, i)`` for tuple slot ``i`` and ``(1, j)`` for the ``j``-th base element
in ascending id order, so types taken in different structures can be
compared once their bases are listed in corresponding order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .amalg import extend_patch, glue, is_freely_amalgamated, patch_of, restrict_patch, structure_of
from .core import LabeledSwitchboard, edge, relabel, validate
from .errors import InvalidStructure, PreconditionError
from .generic import TwoTypeSpec, two_type_spec


@dataclass(frozen=True)
class QfType:
    arity: int
    facts: tuple
    base: tuple = field(default=(), compare=False)

    def swapped(self, perm) -> "QfType":
        """The same diagram with tuple slot ``i`` renamed ``perm[i]``."""

        def t(term):
            return (0, perm[term[1]]) if term[0] == 0 else term

        def e(pair):
            return tuple(sorted(t(x) for x in pair))

        out = []
        for fact in self.facts:
            if fact[0] == "lt":
                out.append(("lt", e(fact[1]), e(fact[2])))
            elif fact[0] == "eq":
                out.append(("eq",) + e((fact[1], fact[2])))
            else:
                out.append((fact[0], t(fact[1]), e(fact[2])))
        return QfType(self.arity, tuple(sorted(out)), self.base)


def qf_type(m: LabeledSwitchboard, tup, B) -> QfType:
    tup = tuple(tup)
    B = sorted(set(B))
    for a in list(tup) + B:
        if not 0 <= a < m.n:
            raise PreconditionError(f"element {a} out of range")
    overlap = set(tup) & set(B)
    if overlap:
        raise PreconditionError(f"tuple and base overlap in {sorted(overlap)}")
    term: dict = {}
    for j, b in enumerate(B):
        term[b] = (1, j)
    facts = []
    for i, a in enumerate(tup):
        if a in term:
            facts.append(("eq", term[a], (0, i)))
        else:
            term[a] = (0, i)

    def canon(e):
        return tuple(sorted((term[e[0]], term[e[1]])))

    for e, f in m.lt:
        if all(x in term for x in e + f):
            facts.append(("lt", canon(e), canon(f)))
    elems = sorted(term)
    for a in elems:
        for e in itertools.combinations(elems, 2):
            if a in e:
                continue
            facts.append(("up" if m.favors(a, e) else "down", term[a], canon(e)))
    return QfType(len(tup), tuple(sorted(facts)), tuple(B))


def _check_pair(m, B, a1, a2):
    B = sorted(set(B))
    for a in (a1, a2):
        if not 0 <= a < m.n:
            raise PreconditionError(f"element {a} out of range")
        if a in B:
            raise PreconditionError(f"{a} must lie outside the base")
    if a1 == a2:
        raise PreconditionError("a1 and a2 must be distinct")
    return B


def is_half_symmetric(m: LabeledSwitchboard, B, a1: int, a2: int) -> bool:
    B = _check_pair(m, B, a1, a2)
    for b, c in itertools.permutations(B, 2):
        if m.less(edge(a1, b), edge(a2, c)) != m.less(edge(a2, b), edge(a1, c)):
            return False
    return True


def same_one_type(m, B, a1, a2) -> Optional[tuple]:
    """None when ``a1 ≡_B a2``, else the first fact on which they differ."""
    t1 = set(qf_type(m, (a1,), B).facts)
    t2 = set(qf_type(m, (a2,), B).facts)
    diff = sorted(t1 ^ t2)
    return diff[0] if diff else None


def is_symmetric(m: LabeledSwitchboard, B, a1: int, a2: int) -> bool:
    B = _check_pair(m, B, a1, a2)
    diff = same_one_type(m, B, a1, a2)
    if diff is not None:
        raise PreconditionError(f"{a1} and {a2} have different types over the base; differing fact {diff}")
    if not is_half_symmetric(m, B, a1, a2):
        return False
    for b in B:
        if m.favors(a1, edge(a2, b)) != m.favors(a2, edge(a1, b)):
            return False
        if m.disfavors(a1, edge(a2, b)) != m.disfavors(a2, edge(a1, b)):
            return False
    return True


def find_middle(m, B, lower, upper):
    """Some base edge strictly between ``lower`` and ``upper``, or None."""
    for g in itertools.combinations(sorted(B), 2):
        if m.less(lower, g) and m.less(g, upper):
            return g
    return None


def is_distinguished(m: LabeledSwitchboard, B, a1: int, a2: int) -> bool:
    B = _check_pair(m, B, a1, a2)
    for b in B:
        for c in B:
            if b == c:
                # edges through a shared vertex are never comparable
                continue
            e, f = edge(a1, b), edge(a2, c)
            if m.less(f, e) and find_middle(m, B, f, e) is None:
                return False
            if m.less(e, f) and find_middle(m, B, e, f) is None:
                return False
    return True


def cross_relations(m, B, a1, a2) -> list:
    """Order facts between an edge through ``a1`` and one through ``a2`` (both into B)."""
    out = []
    for b in B:
        for c in B:
            e, f = edge(a1, b), edge(a2, c)
            if m.less(e, f) or m.less(f, e):
                out.append((e, f))
    return out


# -- sequences -------------------------------------------------------------


@dataclass(frozen=True)
class IndexFlags:
    index: int
    realizes_q: Optional[bool]
    freely_amalgamated: Optional[bool]
    distinguished: Optional[bool]
    symmetric: Optional[bool]


@dataclass(frozen=True)
class CoreSequenceReport:
    structure: LabeledSwitchboard
    base: tuple
    sequence: tuple
    q_type: QfType
    flags: tuple

    @property
    def pairwise_distinct(self) -> bool:
        return len(set(self.sequence)) == len(self.sequence)


def _spec_parts(q: TwoTypeSpec):
    report = validate(q.structure)
    if not report.valid:
        raise InvalidStructure(report, "2-type spec")
    base = q.base_ids
    s, t = q.pair
    diff = same_one_type(q.structure, base, s, t)
    if diff is not None:
        raise PreconditionError(f"the two coordinates of q have different 1-types; differing fact {diff}")
    b = len(base)
    mapping = {old: new for new, old in enumerate(base)}
    mapping[s] = b
    mapping[t] = b + 1
    return relabel(q.structure, mapping), b


def build_core_sequence(q: TwoTypeSpec, k: int) -> CoreSequenceReport:
    """Realize ``q`` along c_0..c_k with c_i, c_0 freely amalgamated over B c_{i-1}.

    The base becomes ``0..|B|-1`` and ``c_i`` gets id ``|B| + i``.
    """
    if k < 1:
        raise PreconditionError("a sequence needs k >= 1")
    Q, b = _spec_parts(q)
    base = tuple(range(b))
    ident = {j: j for j in range(b)}
    ids, pairs = patch_of(Q)
    seq = [b, b + 1]
    for i in range(2, k + 1):
        prev, ci = seq[-1], b + i
        step_ids, step_pairs = patch_of(Q, {**ident, b: prev, b + 1: ci})
        w_ids = frozenset(base) | {prev, seq[0]}
        f_ids, f_pairs = glue(w_ids, restrict_patch(pairs, w_ids), step_ids, step_pairs)
        ids, pairs = extend_patch(ids, pairs, f_ids, f_pairs)
        seq.append(ci)
    m = structure_of(ids, pairs)
    q_type = qf_type(Q, (b, b + 1), base)
    return CoreSequenceReport(m, base, tuple(seq), q_type, tuple(sequence_flags(m, base, seq, q_type)))


def sequence_flags(m, base, seq, q_type):
    c0 = seq[0]
    out = []
    for i, ci in enumerate(seq):
        realizes = qf_type(m, (ci, seq[i + 1]), base) == q_type if i + 1 < len(seq) else None
        free = bool(is_freely_amalgamated(m, set(base) | {seq[i - 1]}, ci, c0)) if i >= 2 else None
        dist = is_distinguished(m, base, c0, ci) if i >= 1 else None
        sym = is_symmetric(m, base, c0, ci) if i >= 1 else None
        out.append(IndexFlags(i, realizes, free, dist, sym))
    return out


@dataclass
class Verdict:
    passed: bool
    records: list
    trace: tuple = ()

    def lines(self) -> list[str]:
        out = [f"{name} {i} {'PASS' if ok else 'FAIL'}" for name, i, ok in self.records]
        out.append(f"verdict - {'PASS' if self.passed else 'FAIL'}")
        return out


def check_core_conclusions(report: CoreSequenceReport, B=None) -> Verdict:
    """Distinguished from index |B| on; symmetric past |B| when q itself is distinguished."""
    m, seq = report.structure, report.sequence
    B = report.base if B is None else tuple(sorted(B))
    b, k = len(B), len(seq) - 1
    if k <= b:
        raise PreconditionError(f"sequence length {k} must exceed |B| = {b}")
    c0 = seq[0]
    q_dist = is_distinguished(m, B, c0, seq[1])
    records = [("q-distinguished", 1, q_dist)]
    part2 = part3 = True
    for i in range(1, k + 1):
        d = is_distinguished(m, B, c0, seq[i])
        s = is_symmetric(m, B, c0, seq[i])
        records.append(("distinguished", i, d))
        records.append(("symmetric", i, s))
        if i >= b and not d:
            part2 = False
        if q_dist and i > b and not s:
            part3 = False
    records.append(("part2", b, part2))
    records.append(("part3", b + 1, part3 or not q_dist))
    return Verdict(part2 and part3, records, (report,))


def two_stage_symmetry(q: TwoTypeSpec, k1: int, k2: int) -> Verdict:
    """Extract a distinguished q' at index |B|, rebuild with it, expect symmetry at |B|+1."""
    b = len(q.base_ids)
    n1 = max(b, 1)
    if k1 < n1:
        raise PreconditionError(f"k1 must be at least {n1}")
    if k2 < b + 1:
        raise PreconditionError(f"k2 must be at least |B|+1 = {b + 1}")
    first = build_core_sequence(q, k1)
    records = [("realizes-q", i, f.realizes_q) for i, f in enumerate(first.flags) if f.realizes_q is not None]
    seq = first.sequence
    q2 = two_type_spec(first.structure, first.base, seq[0], seq[n1])
    q2_dist = is_distinguished(q2.structure, q2.base_ids, *q2.pair)
    records.append(("q-prime-distinguished", n1, q2_dist))
    if not q2_dist:
        return Verdict(False, records, (first, q2))
    second = build_core_sequence(q2, k2)
    records += [("realizes-q-prime", i, f.realizes_q) for i, f in enumerate(second.flags) if f.realizes_q is not None]
    seq2 = second.sequence
    sym = is_symmetric(second.structure, second.base, seq2[0], seq2[b + 1])
    swap_equal = qf_type(second.structure, (seq2[0], seq2[b + 1]), second.base) == qf_type(
        second.structure, (seq2[b + 1], seq2[0]), second.base
    )
    records.append(("symmetric", b + 1, sym))
    records.append(("swap-equal", b + 1, swap_equal))
    passed = all(ok for _, _, ok in records)
    return Verdict(passed, records, (first, q2, second))
