"""Switchboards, labeled switchboards and their triangle-relation form.

Elements are the integers ``0..n-1``.  An edge is a 2-element subset,
stored as a sorted pair ``(lo, hi)``.  The strict order lives on edges and
is stored transitively closed; the favor relation ``up`` is stored
explicitly and disfavor is whatever trichotomy leaves over.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Union

import networkx as nx
from networkx.algorithms import isomorphism as nx_iso

from .errors import EnumerationCapExceeded, FormatError, InvalidStructure

Edge = tuple[int, int]
Node = Union[int, Edge]

DEFAULT_MAX_ELEMENTS = 12
DEFAULT_MAX_NODES = 2**20


def edge(a: int, b: int) -> Edge:
    if a == b:
        raise FormatError(f"edge needs two distinct elements, got {a},{b}")
    return (a, b) if a < b else (b, a)


def all_edges(n: int) -> list[Edge]:
    return list(itertools.combinations(range(n), 2))


def size_cap() -> int:
    """Element cap for enumerations; ``SWB_SIZE_CAP`` overrides the default."""
    raw = os.environ.get("SWB_SIZE_CAP")
    if raw is None:
        return DEFAULT_MAX_ELEMENTS
    try:
        return int(raw)
    except ValueError:
        raise FormatError(f"SWB_SIZE_CAP must be an integer, got {raw!r}") from None


def _check_edge(e, n, what):
    if not (isinstance(e, tuple) and len(e) == 2):
        raise FormatError(f"{what}: {e!r} is not an edge")
    lo, hi = e
    if not (isinstance(lo, int) and isinstance(hi, int)):
        raise FormatError(f"{what}: {e!r} has non-integer ends")
    if lo == hi:
        raise FormatError(f"{what}: {e!r} is a singleton, not an edge")
    if lo > hi:
        raise FormatError(f"{what}: {e!r} is not canonical (lo < hi)")
    if lo < 0 or hi >= n:
        raise FormatError(f"{what}: {e!r} out of range for n={n}")


def _check_element(a, n, what):
    if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < n:
        raise FormatError(f"{what}: element {a!r} out of range for n={n}")


def _check_names(names, n):
    if names is None:
        return None
    names = tuple(names)
    if len(names) != n:
        raise FormatError(f"expected {n} names, got {len(names)}")
    if len(set(names)) != n:
        raise FormatError("element names must be unique")
    for name in names:
        if not isinstance(name, str) or not name or any(ch.isspace() for ch in name):
            raise FormatError(f"bad element name {name!r}")
    return names


class _EdgeOrder:
    """Order queries shared by both structure types (needs ``n`` and ``lt``)."""

    @cached_property
    def _above(self) -> dict[Edge, frozenset[Edge]]:
        out: dict[Edge, set] = {}
        for e, f in self.lt:
            out.setdefault(e, set()).add(f)
        return {k: frozenset(v) for k, v in out.items()}

    @cached_property
    def _below(self) -> dict[Edge, frozenset[Edge]]:
        out: dict[Edge, set] = {}
        for e, f in self.lt:
            out.setdefault(f, set()).add(e)
        return {k: frozenset(v) for k, v in out.items()}

    def less(self, e: Edge, f: Edge) -> bool:
        return (e, f) in self.lt

    def above(self, e: Edge) -> frozenset[Edge]:
        return self._above.get(e, frozenset())

    def below(self, e: Edge) -> frozenset[Edge]:
        return self._below.get(e, frozenset())

    def edges(self) -> list[Edge]:
        return all_edges(self.n)


@dataclass(frozen=True)
class Switchboard(_EdgeOrder):
    n: int
    lt: frozenset = frozenset()
    names: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise FormatError(f"element count must be a natural number, got {self.n!r}")
        lt = frozenset((tuple(e), tuple(f)) for e, f in self.lt)
        for e, f in lt:
            _check_edge(e, self.n, "lt")
            _check_edge(f, self.n, "lt")
        object.__setattr__(self, "lt", lt)
        object.__setattr__(self, "names", _check_names(self.names, self.n))


@dataclass(frozen=True)
class LabeledSwitchboard(_EdgeOrder):
    base: Switchboard
    up: frozenset = frozenset()

    def __post_init__(self):
        up = frozenset((a, tuple(e)) for a, e in self.up)
        for a, e in up:
            _check_element(a, self.n, "up")
            _check_edge(e, self.n, "up")
        object.__setattr__(self, "up", up)

    @classmethod
    def of(cls, n, lt=(), up=(), names=None) -> "LabeledSwitchboard":
        return cls(Switchboard(n, frozenset(lt), names), frozenset(up))

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def lt(self) -> frozenset:
        return self.base.lt

    @property
    def names(self):
        return self.base.names

    def favors(self, a: int, e: Edge) -> bool:
        return (a, e) in self.up

    def disfavors(self, a: int, e: Edge) -> bool:
        return a not in e and (a, e) not in self.up

    @cached_property
    def _favored(self) -> dict[int, frozenset[Edge]]:
        out: dict[int, set] = {}
        for a, e in self.up:
            out.setdefault(a, set()).add(e)
        return {k: frozenset(v) for k, v in out.items()}

    def favored(self, a: int) -> frozenset[Edge]:
        return self._favored.get(a, frozenset())

    def tripartition(self, a: int):
        """(favored, incident, disfavored) edge sets for element ``a``."""
        up, inc, down = set(), set(), set()
        for e in self.edges():
            if a in e:
                inc.add(e)
            elif (a, e) in self.up:
                up.add(e)
            else:
                down.add(e)
        return frozenset(up), frozenset(inc), frozenset(down)


class Violation(NamedTuple):
    axiom: str
    witness: tuple

    def __str__(self):
        return f"{self.axiom} {self.witness}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid


def _order_violations(s) -> list[Violation]:
    out = []
    lt = s.lt
    for e, f in sorted(lt):
        if e == f:
            out.append(Violation("irreflexive", (e,)))
            continue
        if e < f and (f, e) in lt:
            out.append(Violation("asymmetric", (e, f)))
        shared = set(e) & set(f)
        if shared:
            out.append(Violation("switchboard", (min(shared), e, f)))
    for e, f in sorted(lt):
        for g in sorted(s.above(f)):
            if (e, g) not in lt:
                out.append(Violation("transitive", (e, f, g)))
    return out


def validate(s) -> ValidationReport:
    """Check every axiom; list each violation with a witness tuple."""
    out = _order_violations(s)
    if isinstance(s, LabeledSwitchboard):
        up = s.up
        for a, e in sorted(up):
            if a in e:
                out.append(Violation("trichotomy", (a, e)))
        for a, e in sorted(up):
            for f in sorted(s.above(e)):
                if (a, f) not in up:
                    out.append(Violation("upward", (a, e, f)))
        for a in range(s.n):
            for e in s.edges():
                if a in e or (a, e) in up:
                    continue
                for f in sorted(s.below(e)):
                    if not s.disfavors(a, f):
                        out.append(Violation("downward", (a, e, f)))
    return ValidationReport(tuple(out))


def replay(s, v: Violation) -> bool:
    """True iff the witness in ``v`` really exhibits its axiom failure in ``s``."""
    w = v.witness
    if isinstance(s, TriangleRelation):
        return _replay_triangle(s, v)
    lt = s.lt
    up = getattr(s, "up", frozenset())
    if v.axiom == "irreflexive":
        return (w[0], w[0]) in lt
    if v.axiom == "asymmetric":
        return (w[0], w[1]) in lt and (w[1], w[0]) in lt
    if v.axiom == "transitive":
        e, f, g = w
        return (e, f) in lt and (f, g) in lt and (e, g) not in lt
    if v.axiom == "switchboard":
        x, e, f = w
        return x in e and x in f and e != f and (e, f) in lt
    if v.axiom == "trichotomy":
        a, e = w
        return a in e and (a, e) in up
    if v.axiom == "upward":
        a, e, f = w
        return (a, e) in up and (e, f) in lt and (a, f) not in up
    if v.axiom == "downward":
        a, e, f = w
        down_e = a not in e and (a, e) not in up
        down_f = a not in f and (a, f) not in up
        return down_e and (f, e) in lt and not down_f
    raise ValueError(f"unknown axiom {v.axiom!r}")


def label_canonical(s) -> LabeledSwitchboard:
    """Favor exactly when some edge through ``a`` lies below: a ↑ e iff ∃z {a,z} < e."""
    if isinstance(s, LabeledSwitchboard):
        s = s.base
    report = validate(s)
    if not report.valid:
        raise InvalidStructure(report, "switchboard")
    up = {(a, f) for e, f in s.lt for a in e}
    return LabeledSwitchboard(s, frozenset(up))


# -- triangle relations ---------------------------------------------------


def node_key(x):
    return (0, x, 0) if isinstance(x, int) else (1,) + x


@dataclass(frozen=True)
class TriangleRelation:
    n: int
    rel: frozenset = frozenset()

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise FormatError(f"element count must be a natural number, got {self.n!r}")
        rel = frozenset((_norm_node(x), _norm_node(y)) for x, y in self.rel)
        for x, y in rel:
            for node in (x, y):
                if isinstance(node, int):
                    _check_element(node, self.n, "triangle")
                else:
                    _check_edge(node, self.n, "triangle")
        object.__setattr__(self, "rel", rel)


def _norm_node(x):
    if isinstance(x, (list, tuple)):
        return tuple(x)
    return x


def validate_triangle(t: TriangleRelation) -> ValidationReport:
    rel = t.rel
    succ: dict = {}
    for x, y in rel:
        succ.setdefault(x, set()).add(y)
    out = []
    for x, y in sorted(rel, key=lambda p: (node_key(p[0]), node_key(p[1]))):
        if x == y:
            out.append(Violation("irreflexive", (x,)))
        if isinstance(y, int):
            out.append(Violation("right-edge", (x, y)))
        elif isinstance(x, int):
            if x in y:
                out.append(Violation("incidence", (x, y)))
        else:
            for z in x:
                if (z, y) not in rel:
                    out.append(Violation("edge-projection", (x, y, z)))
        for z in sorted(succ.get(y, ()), key=node_key):
            if (x, z) not in rel:
                out.append(Violation("transitive", (x, y, z)))
    return ValidationReport(tuple(out))


def _replay_triangle(t, v):
    rel, w = t.rel, v.witness
    if v.axiom == "irreflexive":
        return (w[0], w[0]) in rel
    if v.axiom == "right-edge":
        return (w[0], w[1]) in rel and isinstance(w[1], int)
    if v.axiom == "incidence":
        return (w[0], w[1]) in rel and w[0] in w[1]
    if v.axiom == "edge-projection":
        e, f, z = w
        return (e, f) in rel and z in e and (z, f) not in rel
    if v.axiom == "transitive":
        x, y, z = w
        return (x, y) in rel and (y, z) in rel and (x, z) not in rel
    raise ValueError(f"unknown axiom {v.axiom!r}")


def to_triangle(l: LabeledSwitchboard) -> TriangleRelation:
    report = validate(l)
    if not report.valid:
        raise InvalidStructure(report, "labeled switchboard")
    return TriangleRelation(l.n, l.lt | l.up)


def from_triangle(t: TriangleRelation, names=None) -> LabeledSwitchboard:
    report = validate_triangle(t)
    if not report.valid:
        raise InvalidStructure(report, "triangle relation")
    lt = frozenset(p for p in t.rel if not isinstance(p[0], int))
    up = frozenset(p for p in t.rel if isinstance(p[0], int))
    return LabeledSwitchboard(Switchboard(t.n, lt, names), up)


# -- enumeration ----------------------------------------------------------


def enumerate_labelings(s, max_elements=None, max_nodes=DEFAULT_MAX_NODES) -> list[LabeledSwitchboard]:
    """All labeled expansions of ``s``.

    Labels of different elements never interact, so each element's favored
    set (an up-set respecting the forced facts) is enumerated on its own and
    the results are combined by product.  Exceeding either cap raises.
    """
    if isinstance(s, LabeledSwitchboard):
        s = s.base
    report = validate(s)
    if not report.valid:
        raise InvalidStructure(report, "switchboard")
    if max_elements is None:
        max_elements = size_cap()
    if s.n > max_elements:
        raise EnumerationCapExceeded(f"n={s.n} exceeds the enumeration cap of {max_elements} elements")

    # top-first: every edge comes after all edges above it
    topfirst = sorted(s.edges(), key=lambda e: (-len(s.below(e)), e))
    nodes = 0
    per_element = []
    for a in range(s.n):
        incident = [e for e in s.edges() if a in e]
        forced_up = {f for e in incident for f in s.above(e)}
        forced_down = {f for e in incident for f in s.below(e)}
        cand = [e for e in topfirst if a not in e]
        options = []
        chosen: set = set()

        def rec(i):
            nonlocal nodes
            nodes += 1
            if nodes > max_nodes:
                raise EnumerationCapExceeded(f"more than {max_nodes} branch nodes")
            if i == len(cand):
                options.append(frozenset(chosen))
                return
            e = cand[i]
            if e not in forced_up:
                rec(i + 1)
            if e not in forced_down and all(g in chosen for g in s.above(e)):
                chosen.add(e)
                rec(i + 1)
                chosen.discard(e)

        rec(0)
        per_element.append(options)

    total = 1
    for options in per_element:
        total *= len(options)
    if nodes + total > max_nodes:
        raise EnumerationCapExceeded(f"{total} labelings exceed the cap of {max_nodes} nodes")

    out = []
    for combo in itertools.product(*per_element):
        up = frozenset((a, e) for a, favored in enumerate(combo) for e in favored)
        out.append(LabeledSwitchboard(s, up))
    return out


# -- substructures, relabeling, isomorphism -------------------------------


def restrict(l, subset: Iterable[int]):
    """Induced substructure on ``subset``, renumbered by rank (order preserving)."""
    ids = sorted(set(subset))
    for a in ids:
        _check_element(a, l.n, "restrict")
    pos = {a: i for i, a in enumerate(ids)}
    keep = set(ids)

    def inside(e):
        return e[0] in keep and e[1] in keep

    def m(e):
        return (pos[e[0]], pos[e[1]])

    lt = frozenset((m(e), m(f)) for e, f in l.lt if inside(e) and inside(f))
    names = None if l.names is None else tuple(l.names[a] for a in ids)
    base = Switchboard(len(ids), lt, names)
    if isinstance(l, Switchboard):
        return base
    up = frozenset((pos[a], m(e)) for a, e in l.up if a in keep and inside(e))
    return LabeledSwitchboard(base, up)


def relabel(l, mapping, n: Optional[int] = None):
    """Image of ``l`` under an injective element map into ``0..n-1``."""
    mapping = dict(mapping) if not isinstance(mapping, dict) else mapping
    if set(mapping) != set(range(l.n)):
        raise FormatError("relabel map must cover every element")
    if len(set(mapping.values())) != l.n:
        raise FormatError("relabel map must be injective")
    if n is None:
        n = l.n
    lt = frozenset((edge(mapping[e[0]], mapping[e[1]]), edge(mapping[f[0]], mapping[f[1]])) for e, f in l.lt)
    base = Switchboard(n, lt)
    if isinstance(l, Switchboard):
        return base
    up = frozenset((mapping[a], edge(mapping[e[0]], mapping[e[1]])) for a, e in l.up)
    return LabeledSwitchboard(base, up)


def _as_digraph(s) -> nx.DiGraph:
    g = nx.DiGraph()
    for a in range(s.n):
        g.add_node(("v", a), kind="v")
    for e in s.edges():
        g.add_node(("e",) + e, kind="e")
        for x in e:
            g.add_edge(("v", x), ("e",) + e, kind="in")
    for e, f in s.lt:
        g.add_edge(("e",) + e, ("e",) + f, kind="lt")
    for a, e in getattr(s, "up", ()):
        g.add_edge(("v", a), ("e",) + e, kind="up")
    return g


def isomorphic(l1, l2):
    """``(True, map)`` when some bijection carries ``l1`` onto ``l2``, else ``(False, None)``."""
    if type(l1) is not type(l2) or l1.n != l2.n:
        return False, None
    if len(l1.lt) != len(l2.lt) or len(getattr(l1, "up", ())) != len(getattr(l2, "up", ())):
        return False, None
    matcher = nx_iso.DiGraphMatcher(
        _as_digraph(l1),
        _as_digraph(l2),
        node_match=nx_iso.categorical_node_match("kind", None),
        edge_match=nx_iso.categorical_edge_match("kind", None),
    )
    if not matcher.is_isomorphic():
        return False, None
    mapping = {a[1]: b[1] for a, b in matcher.mapping.items() if a[0] == "v"}
    return True, dict(sorted(mapping.items()))
