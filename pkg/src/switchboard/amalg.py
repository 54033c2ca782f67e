"""Amalgamation of strict orders and of labeled switchboards.

Labeled switchboards are glued through their triangle relations: the two
relations are unioned and transitively closed as partial orders, then read
back.  General amalgams are built one fresh point per side at a time.

Internally a structure with arbitrary element ids is handled as a *patch*:
a pair ``(ids, pairs)`` where ``pairs`` is its triangle relation written in
those ids.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .core import (
    LabeledSwitchboard,
    TriangleRelation,
    edge,
    from_triangle,
    restrict,
    validate,
)
from .errors import InvalidStructure, PreconditionError


@dataclass(frozen=True)
class PartialRelation:
    carrier: frozenset
    pairs: frozenset = frozenset()

    def __post_init__(self):
        carrier = frozenset(self.carrier)
        pairs = frozenset(self.pairs)
        for a, b in pairs:
            if a not in carrier or b not in carrier:
                raise PreconditionError(f"pair ({a!r}, {b!r}) leaves the carrier")
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "pairs", pairs)

    def restrict(self, subset) -> "PartialRelation":
        subset = frozenset(subset)
        return PartialRelation(subset, frozenset(p for p in self.pairs if p[0] in subset and p[1] in subset))


def transitive_closure(pairs) -> frozenset:
    succ: dict = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    out = set()
    for start in succ:
        seen = set()
        stack = list(succ[start])
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(succ.get(x, ()))
        out.update((start, x) for x in seen)
    return frozenset(out)


def is_transitive(pairs) -> bool:
    pairs = frozenset(pairs)
    succ: dict = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    return all((a, c) in pairs for a, b in pairs for c in succ.get(b, ()))


def union_closure(r1: PartialRelation, r2: PartialRelation) -> PartialRelation:
    """Transitive closure of ``r1 ∪ r2`` on the union of the carriers."""
    for r in (r1, r2):
        if not is_transitive(r.pairs):
            raise PreconditionError("union_closure needs transitive inputs")
    shared = r1.carrier & r2.carrier
    if r1.restrict(shared).pairs != r2.restrict(shared).pairs:
        raise PreconditionError("relations disagree on the shared carrier")
    return PartialRelation(r1.carrier | r2.carrier, transitive_closure(r1.pairs | r2.pairs))


# -- patches ---------------------------------------------------------------


def _elements(node):
    return (node,) if isinstance(node, int) else node


def node_carrier(ids) -> frozenset:
    ids = sorted(ids)
    return frozenset(ids) | frozenset(itertools.combinations(ids, 2))


def patch_of(l: LabeledSwitchboard, mapping=None):
    """Triangle relation of ``l`` with element ``a`` renamed ``mapping[a]``."""
    if mapping is None:
        return frozenset(range(l.n)), frozenset(l.lt | l.up)

    def m(node):
        if isinstance(node, int):
            return mapping[node]
        return edge(mapping[node[0]], mapping[node[1]])

    ids = frozenset(mapping[a] for a in range(l.n))
    return ids, frozenset((m(x), m(y)) for x, y in l.lt | l.up)


def restrict_patch(pairs, ids) -> frozenset:
    ids = set(ids)
    return frozenset(p for p in pairs if all(a in ids for node in p for a in _elements(node)))


def glue(ids1, pairs1, ids2, pairs2):
    """Union-closure of two triangle relations sharing ``ids1 & ids2``."""
    r = union_closure(PartialRelation(node_carrier(ids1), pairs1), PartialRelation(node_carrier(ids2), pairs2))
    return frozenset(ids1) | frozenset(ids2), r.pairs


def extend_patch(cur_ids, cur_pairs, ext_ids, ext_pairs):
    """Amalgamate ``ext`` onto ``cur`` over their shared ids.

    The fresh ids of ``ext`` are added in ascending order; for each one the
    remaining points of ``cur`` are glued on one at a time, so every single
    gluing step is a one-point free amalgam.
    """
    shared = frozenset(cur_ids) & frozenset(ext_ids)
    if restrict_patch(cur_pairs, shared) != restrict_patch(ext_pairs, shared):
        raise PreconditionError("structures disagree on their shared elements")
    base = set(shared)
    for c in sorted(frozenset(ext_ids) - shared):
        d_ids = frozenset(base | {c})
        d_pairs = restrict_patch(ext_pairs, d_ids)
        done = set(base)
        for x in sorted(frozenset(cur_ids) - base):
            l_ids = frozenset(done | {x})
            d_ids, d_pairs = glue(l_ids, restrict_patch(cur_pairs, l_ids), d_ids, d_pairs)
            done.add(x)
        cur_ids, cur_pairs = d_ids, d_pairs
        base.add(c)
    return frozenset(cur_ids), frozenset(cur_pairs)


def structure_of(ids, pairs, names=None) -> LabeledSwitchboard:
    n = len(ids)
    if frozenset(ids) != frozenset(range(n)):
        raise PreconditionError("patch ids must be 0..n-1 to become a structure")
    return from_triangle(TriangleRelation(n, pairs), names)


def _require_valid(*structures):
    for s in structures:
        report = validate(s)
        if not report.valid:
            raise InvalidStructure(report, "labeled switchboard")


# -- one-point free amalgamation ------------------------------------------


def free_amalgam_one_point(s: LabeledSwitchboard, a1ext: LabeledSwitchboard, a2ext: LabeledSwitchboard) -> LabeledSwitchboard:
    """Glue two one-point extensions of ``s`` freely.

    Each extension must be ``s`` plus one new element with the highest id.
    In the result ``s`` keeps ids ``0..n-1``, ``a1 = n`` and ``a2 = n+1``.
    """
    _require_valid(s, a1ext, a2ext)
    n = s.n
    for ext in (a1ext, a2ext):
        if ext.n != n + 1 or restrict(ext, range(n)) != s:
            raise PreconditionError("each extension must be the base plus one new last element")
    ids1, pairs1 = patch_of(a1ext)
    ids2, pairs2 = patch_of(a2ext, {**{i: i for i in range(n)}, n: n + 1})
    ids, pairs = glue(ids1, pairs1, ids2, pairs2)
    return structure_of(ids, pairs)


@dataclass(frozen=True)
class FreeAmalgamCheck:
    ok: bool
    condition: Optional[str] = None
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def is_freely_amalgamated(m: LabeledSwitchboard, S, a1: int, a2: int) -> FreeAmalgamCheck:
    """Check the six free-amalgamation conditions for ``a1, a2`` over ``S``."""
    S = sorted(set(S))
    for a in (a1, a2):
        if not 0 <= a < m.n:
            raise PreconditionError(f"element {a} out of range")
        if a in S:
            raise PreconditionError(f"{a} must lie outside the base")
    if a1 == a2:
        raise PreconditionError("a1 and a2 must be distinct")
    for x in S:
        if not 0 <= x < m.n:
            raise PreconditionError(f"base element {x} out of range")
    base_edges = list(itertools.combinations(S, 2))

    def through_base(e, f):
        return any(m.less(e, g) and m.less(g, f) for g in base_edges)

    for label, (p, q) in (("i", (a1, a2)), ("ii", (a2, a1))):
        for x in S:
            for y in S:
                e, f = edge(p, x), edge(q, y)
                if m.less(e, f) != through_base(e, f):
                    return FreeAmalgamCheck(False, label, (e, f))

    bridge = edge(a1, a2)
    pool = S + [a1, a2]
    for g in itertools.combinations(sorted(pool), 2):
        if g != bridge and (m.less(g, bridge) or m.less(bridge, g)):
            return FreeAmalgamCheck(False, "iii", (bridge, g))

    for x in S:
        if not m.disfavors(x, bridge):
            return FreeAmalgamCheck(False, "iv", (x, bridge))

    for label, (p, q) in (("v", (a1, a2)), ("vi", (a2, a1))):
        for x in S:
            f = edge(q, x)
            via = any(m.favors(p, g) and m.less(g, f) for g in base_edges)
            if m.favors(p, f) != via:
                return FreeAmalgamCheck(False, label, (p, f))
    return FreeAmalgamCheck(True)


# -- general amalgamation -------------------------------------------------


@dataclass(frozen=True)
class AmalgamResult:
    result: LabeledSwitchboard
    left_embedding: dict
    right_embedding: dict


def is_embedding(small, big, mapping) -> bool:
    if set(mapping) != set(range(small.n)):
        return False
    image = list(mapping.values())
    if len(set(image)) != len(image) or not all(0 <= b < big.n for b in image):
        return False
    _, pairs = patch_of(small, mapping)
    return pairs == restrict_patch(patch_of(big)[1], image)


def amalgamate(base: LabeledSwitchboard, left: LabeledSwitchboard, right: LabeledSwitchboard, left_map=None, right_map=None) -> AmalgamResult:
    """Strong amalgam of ``left`` and ``right`` over ``base``.

    ``left_map`` / ``right_map`` send base ids into each side (identity on
    ``0..|base|-1`` by default).  Left ids are kept; the right side's fresh
    elements are renumbered after them in ascending order.
    """
    _require_valid(base, left, right)
    ident = {i: i for i in range(base.n)}
    left_map = dict(ident if left_map is None else left_map)
    right_map = dict(ident if right_map is None else right_map)
    if not is_embedding(base, left, left_map):
        raise PreconditionError("left map is not an embedding of the base")
    if not is_embedding(base, right, right_map):
        raise PreconditionError("right map is not an embedding of the base")

    to_result = {right_map[a]: left_map[a] for a in range(base.n)}
    fresh = [c for c in range(right.n) if c not in to_result]
    for i, c in enumerate(fresh):
        to_result[c] = left.n + i
    ids, pairs = extend_patch(*patch_of(left), *patch_of(right, to_result))
    result = structure_of(ids, pairs)
    return AmalgamResult(result, {i: i for i in range(left.n)}, dict(sorted(to_result.items())))
