"""Finite extension constructions: witnesses, free copies, random structures."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from numbers import Real

from .amalg import extend_patch, free_amalgam_one_point, glue, patch_of, restrict_patch, structure_of
from .core import LabeledSwitchboard, Switchboard, edge, restrict, validate
from .errors import InvalidStructure, PreconditionError


@dataclass(frozen=True)
class OneTypeSpec:
    """A structure on B ∪ {point}; the non-point elements, ascending, stand for B."""

    structure: LabeledSwitchboard
    point: int

    def __post_init__(self):
        if not 0 <= self.point < self.structure.n:
            raise PreconditionError("spec point out of range")

    @property
    def base_ids(self) -> list[int]:
        return [i for i in range(self.structure.n) if i != self.point]


@dataclass(frozen=True)
class TwoTypeSpec:
    structure: LabeledSwitchboard
    pair: tuple

    def __post_init__(self):
        s, t = self.pair
        n = self.structure.n
        if not (0 <= s < n and 0 <= t < n) or s == t:
            raise PreconditionError("spec pair must be two distinct elements")

    @property
    def base_ids(self) -> list[int]:
        return [i for i in range(self.structure.n) if i not in self.pair]

    def one_types(self):
        s, t = self.pair
        base = self.base_ids
        return restrict(self.structure, base + [s]), restrict(self.structure, base + [t])


def one_type_spec(m: LabeledSwitchboard, B, x: int) -> OneTypeSpec:
    ids = sorted(set(B) | {x})
    return OneTypeSpec(restrict(m, ids), ids.index(x))


def two_type_spec(m: LabeledSwitchboard, B, x: int, y: int) -> TwoTypeSpec:
    ids = sorted(set(B) | {x, y})
    return TwoTypeSpec(restrict(m, ids), (ids.index(x), ids.index(y)))


# -- witnesses -------------------------------------------------------------


def _gadget(m, x, e, w, direction):
    y, z = e
    lt = {(edge(x, w), e)} if direction == "up" else {(e, edge(x, w))}
    up = set()
    if direction == "up":
        up |= {(x, e), (w, e)}
    else:
        up |= {(y, edge(x, w)), (z, edge(x, w))}
    if m.favors(y, edge(x, z)):
        up.add((y, edge(x, z)))
    if m.favors(z, edge(x, y)):
        up.add((z, edge(x, y)))
    return lt, up


def _witness(m, x, e, direction):
    report = validate(m)
    if not report.valid:
        raise InvalidStructure(report, "labeled switchboard")
    e = edge(*e)
    if not 0 <= x < m.n or max(e) >= m.n:
        raise PreconditionError("witness arguments out of range")
    if x in e:
        raise PreconditionError(f"{x} lies on {e}; no witness is promised")
    if direction == "up" and not m.favors(x, e):
        raise PreconditionError(f"{x} does not favor {e}")
    if direction == "down" and not m.disfavors(x, e):
        raise PreconditionError(f"{x} does not disfavor {e}")
    w = m.n
    lt, up = _gadget(m, x, e, w, direction)
    ids = frozenset((x, w) + e)
    pairs = frozenset(lt | up)
    gadget_report = validate(structure_of(*_compact(ids, pairs)))
    if not gadget_report.valid:
        raise InvalidStructure(gadget_report, "witness gadget")
    out = structure_of(*extend_patch(*patch_of(m), ids, pairs))
    return out, w


def _compact(ids, pairs):
    ordered = sorted(ids)
    mapping = {a: i for i, a in enumerate(ordered)}

    def m(node):
        return mapping[node] if isinstance(node, int) else edge(mapping[node[0]], mapping[node[1]])

    return frozenset(range(len(ordered))), frozenset((m(a), m(b)) for a, b in pairs)


def witness_up(m: LabeledSwitchboard, x: int, e):
    """Extend ``m`` by a fresh ``w`` with {x,w} < e, given x ↑ e."""
    return _witness(m, x, e, "up")


def witness_down(m: LabeledSwitchboard, x: int, e):
    """Extend ``m`` by a fresh ``w`` with {x,w} > e, given x ↓ e."""
    return _witness(m, x, e, "down")


# -- free copies -----------------------------------------------------------


def free_copy(m: LabeledSwitchboard, B, a: int, spec: OneTypeSpec):
    """Add a realization ``e2`` of ``spec`` freely amalgamated with ``a`` over ``B``."""
    report = validate(m)
    if not report.valid:
        raise InvalidStructure(report, "labeled switchboard")
    B = sorted(set(B))
    if a in B or not 0 <= a < m.n:
        raise PreconditionError("a must be an element of m outside B")
    if len(spec.base_ids) != len(B):
        raise PreconditionError("spec base size differs from B")
    if restrict(spec.structure, spec.base_ids) != restrict(m, B):
        raise PreconditionError("spec base disagrees with m restricted to B")
    e2 = m.n
    mapping = dict(zip(spec.base_ids, B))
    mapping[spec.point] = e2
    spec_ids, spec_pairs = patch_of(spec.structure, mapping)
    local_ids = frozenset(B) | {a}
    local_pairs = restrict_patch(patch_of(m)[1], local_ids)
    pair_ids, pair_pairs = glue(local_ids, local_pairs, spec_ids, spec_pairs)
    out = structure_of(*extend_patch(*patch_of(m), pair_ids, pair_pairs))
    return out, e2


# -- random structures -----------------------------------------------------


def _check_density(density):
    if not isinstance(density, Real) or not 0 <= density <= 1:
        raise ValueError(f"density must be a number in [0, 1], got {density!r}")


def _fits_labels(g, h, n, fixed):
    """Can g < h hold without contradicting any fixed favor fact?"""
    for a in range(n):
        if a in g and a not in h and fixed.get((a, h)) is False:
            return False
        if a in h and a not in g and fixed.get((a, g)) is True:
            return False
        if fixed.get((a, g)) is True and (a in h or fixed.get((a, h)) is False):
            return False
        if a not in h and fixed.get((a, h)) is False and (a in g or fixed.get((a, g)) is True):
            return False
    return True


def _grow_order(n, rng, density, lt=frozenset(), candidates=None, protected=None, fixed=None):
    """Randomly add disjoint-edge comparabilities, re-closing after each one.

    A candidate is kept only if the closed order still satisfies the
    Switchboard Axiom, adds nothing among the ``protected`` elements, and
    contradicts none of the ``fixed`` favor facts.
    """
    lt = set(lt)
    above: dict = {}
    below: dict = {}
    for e, f in lt:
        above.setdefault(e, set()).add(f)
        below.setdefault(f, set()).add(e)
    if candidates is None:
        edges = list(itertools.combinations(range(n), 2))
        candidates = [(e, f) for e in edges for f in edges if not set(e) & set(f)]
    candidates = sorted(candidates)
    rng.shuffle(candidates)
    for e, f in candidates:
        if rng.random() >= density:
            continue
        if (e, f) in lt or (f, e) in lt:
            continue
        lows = below.get(e, set()) | {e}
        highs = above.get(f, set()) | {f}
        new = [(g, h) for g in lows for h in highs if (g, h) not in lt]
        if any(set(g) & set(h) or (h, g) in lt for g, h in new):
            continue
        if protected is not None and any(set(g) <= protected and set(h) <= protected for g, h in new):
            continue
        if fixed and not all(_fits_labels(g, h, n, fixed) for g, h in new):
            continue
        for g, h in new:
            lt.add((g, h))
            above.setdefault(g, set()).add(h)
            below.setdefault(h, set()).add(g)
    return frozenset(lt)


def _assign_labels(n, lt, rng, fixed=None):
    """Choose favor facts edge by edge in a linear extension of the order.

    Forced facts come first (a favored or incident edge below forces ↑; an
    incident or disfavored, already decided edge above forces ↓); anything
    else is a coin flip.  Facts in ``fixed`` are kept as given.
    """
    fixed = fixed or {}
    sb = Switchboard(n, lt)
    ascending = sorted(sb.edges(), key=lambda e: (len(sb.below(e)), e))
    up = set()
    for a in range(n):
        decided: dict = {}
        for e in ascending:
            if a in e:
                continue
            if (a, e) in fixed:
                decided[e] = fixed[(a, e)]
        for e in ascending:
            if a in e or (a, e) in fixed:
                continue
            force_up = any(a in g or decided.get(g) for g in sb.below(e))
            force_down = any(a in g or decided.get(g) is False for g in sb.above(e))
            if force_up and force_down:
                raise AssertionError(f"forced-label conflict for {a} on {e}")
            if force_up:
                decided[e] = True
            elif force_down:
                decided[e] = False
            else:
                decided[e] = rng.random() < 0.5
        up.update((a, e) for e, v in decided.items() if v)
    return frozenset(up)


def random_labeled(n: int, seed: int, density=0.5) -> LabeledSwitchboard:
    """Seeded random labeled switchboard on ``n`` elements."""
    if n < 0:
        raise ValueError("n must be non-negative")
    _check_density(density)
    rng = random.Random(seed)
    lt = _grow_order(n, rng, density)
    up = _assign_labels(n, lt, rng)
    out = LabeledSwitchboard(Switchboard(n, lt), up)
    report = validate(out)
    if not report.valid:
        raise AssertionError(f"random_labeled produced an invalid structure: {report}")
    return out


def random_extension(m: LabeledSwitchboard, seed, density=0.5) -> LabeledSwitchboard:
    """Seeded random one-point extension of ``m``; the new element is ``m.n``."""
    _check_density(density)
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    n = m.n + 1
    p = m.n
    edges = list(itertools.combinations(range(n), 2))
    candidates = [(e, f) for e in edges for f in edges if not set(e) & set(f) and (p in e or p in f)]
    fixed = {(a, e): m.favors(a, e) for a in range(m.n) for e in m.edges() if a not in e}
    lt = _grow_order(n, rng, density, m.lt, candidates, protected=set(range(m.n)), fixed=fixed)
    up = _assign_labels(n, lt, rng, fixed)
    out = LabeledSwitchboard(Switchboard(n, lt), up)
    report = validate(out)
    if not report.valid or restrict(out, range(m.n)) != m:
        raise AssertionError(f"random_extension broke its contract: {report}")
    return out


def _close_labels(n, lt, up):
    sb = Switchboard(n, frozenset(lt))
    up = set(up)
    changed = True
    while changed:
        changed = False
        for a, e in list(up):
            for f in sb.above(e):
                if (a, f) not in up and a not in f:
                    up.add((a, f))
                    changed = True
    return up


def _perturb(q, s, t, base, rng):
    """One random change to the facts linking ``s`` and ``t``; None if rejected."""
    n = q.n
    bridge = edge(s, t)
    if rng.random() < 0.5 and len(base) >= 2:
        b, c = rng.sample(base, 2)
        if rng.random() < 0.5:
            e, f = edge(s, b), edge(t, c)
        else:
            e, f = bridge, edge(b, c)
        if rng.random() < 0.5:
            e, f = f, e
        lt = set(q.lt) | {(e, f)}
        lt |= {(g, f) for g in q.below(e)} | {(e, h) for h in q.above(f)}
        lt |= {(g, h) for g in q.below(e) for h in q.above(f)}
        up = set(q.up)
        for g, h in lt:
            up |= {(x, h) for x in g if x not in h}
            up -= {(x, g) for x in h}
        up = _close_labels(n, lt, up)
    else:
        b = rng.choice(base) if base else None
        choices = [(s, edge(t, b)), (t, edge(s, b)), (b, bridge)] if b is not None else []
        if not choices:
            return None
        fact = rng.choice(choices)
        lt = set(q.lt)
        up = set(q.up) ^ {fact}
    try:
        cand = LabeledSwitchboard(Switchboard(n, frozenset(lt)), frozenset(up))
    except Exception:
        return None
    if not validate(cand).valid:
        return None
    for x in (s, t):
        if restrict(cand, base + [x]) != restrict(q, base + [x]):
            return None
    return cand


def random_two_type(base_size: int, seed: int, density=0.5, steps: int = 12) -> TwoTypeSpec:
    """Seeded random 2-type over a base whose two coordinates share a 1-type.

    Starts from the free amalgam of one random extension with itself, then
    tries ``steps`` random changes to the cross facts, keeping those that
    stay valid and leave both 1-types intact.
    """
    _check_density(density)
    rng = random.Random(seed)
    base = random_labeled(base_size, rng.getrandbits(64), density)
    ext = random_extension(base, rng, density)
    q = free_amalgam_one_point(base, ext, ext)
    s, t = base_size, base_size + 1
    base_ids = list(range(base_size))
    for _ in range(steps):
        cand = _perturb(q, s, t, base_ids, rng)
        if cand is not None:
            q = cand
    return TwoTypeSpec(q, (s, t))
