"""Vectorized one-point free amalgams for exhaustive sweeps.

Computes the same union-closure as :func:`amalg.free_amalgam_one_point`
for many extension pairs at once, and evaluates the labeled-switchboard
axioms, both restrictions, and the free-amalgamation conditions on every
result with boolean array operations.  Node layout for a base of size
``n``: elements ``0..n+1`` (``a1 = n``, ``a2 = n+1``) followed by the edges
of ``n+2`` points in :func:`core.all_edges` order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .core import LabeledSwitchboard, Switchboard, all_edges, restrict
from .errors import PreconditionError

CHECKS = (
    "irreflexive",
    "asymmetric",
    "switchboard",
    "transitive",
    "trichotomy",
    "upward",
    "downward",
    "extends-left",
    "extends-right",
    "free-i",
    "free-ii",
    "free-iii",
    "free-iv",
    "free-v",
    "free-vi",
)


class _Layout:
    def __init__(self, n: int):
        self.n = n
        self.N = N = n + 2
        self.edges = all_edges(N)
        self.eidx = {e: i for i, e in enumerate(self.edges)}
        self.V = N + len(self.edges)
        E = len(self.edges)
        self.share = np.array([[bool(set(e) & set(f)) for f in self.edges] for e in self.edges], dtype=bool).reshape(E, E)
        self.inc = np.array([[a in e for e in self.edges] for a in range(N)], dtype=bool).reshape(N, E)
        self.base_edges = [self.eidx[g] for g in itertools.combinations(range(n), 2)]
        self.bridge = self.eidx[(n, n + 1)]

    def node(self, x) -> int:
        return x if isinstance(x, int) else self.N + self.eidx[x]

    def side_mask(self, elems) -> np.ndarray:
        elems = set(elems)
        inside = [a in elems for a in range(self.N)] + [set(e) <= elems for e in self.edges]
        v = np.array(inside, dtype=bool)
        return np.outer(v, v)

    def embed(self, ext: LabeledSwitchboard, fresh: int) -> np.ndarray:
        mapping = {i: i for i in range(self.n)}
        mapping[self.n] = fresh
        M = np.zeros((self.V, self.V), dtype=bool)

        def m(node):
            if isinstance(node, int):
                return mapping[node]
            a, b = sorted((mapping[node[0]], mapping[node[1]]))
            return (a, b)

        for x, y in ext.lt | ext.up:
            M[self.node(m(x)), self.node(m(y))] = True
        return M


def _closure(R: np.ndarray, N: int) -> np.ndarray:
    # rows packed into bitmasks; elements never sit on the right, so only
    # edges can be intermediates
    V = R.shape[1]
    packed = np.packbits(R, axis=2, bitorder="little")
    rows = np.zeros(R.shape[:2], dtype=np.uint64)
    for byte in range(packed.shape[2]):
        rows |= packed[:, :, byte].astype(np.uint64) << np.uint64(8 * byte)
    one = np.uint64(1)
    for k in range(N, V):
        has_k = (rows >> np.uint64(k)) & one
        rows |= (np.uint64(0) - has_k) & rows[:, k : k + 1]
    out = np.empty(packed.shape, dtype=np.uint8)
    for byte in range(packed.shape[2]):
        out[:, :, byte] = (rows >> np.uint64(8 * byte)).astype(np.uint8)
    return np.unpackbits(out, axis=2, count=V, bitorder="little").astype(bool)


def _f32(x: np.ndarray) -> np.ndarray:
    return x if x.dtype == np.float32 else x.astype(np.float32)


def _bmm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # float32 goes through BLAS; integer matmul does not
    return np.matmul(_f32(a), _f32(b)) > 0.5


def _flags(lay: _Layout, R, M1, M2, mask1, mask2) -> dict:
    N, n = lay.N, lay.n
    LT = R[:, N:, N:]
    UP = R[:, :N, N:]
    E = LT.shape[1]
    out = {}
    out["irreflexive"] = ~LT[:, np.arange(E), np.arange(E)].any(axis=1)
    out["asymmetric"] = ~(LT & LT.transpose(0, 2, 1)).any(axis=(1, 2))
    out["switchboard"] = ~(LT & lay.share).any(axis=(1, 2))
    LTf = LT.astype(np.float32)
    out["transitive"] = ~(_bmm(LTf, LTf) & ~LT).any(axis=(1, 2))
    out["trichotomy"] = ~(UP & lay.inc).any(axis=(1, 2))
    out["upward"] = ~(_bmm(UP, LTf) & ~UP).any(axis=(1, 2))
    D = ~UP & ~lay.inc
    out["downward"] = ~(_bmm(D, LTf.transpose(0, 2, 1)) & ~D).any(axis=(1, 2))
    out["extends-left"] = ((R & mask1) == M1).all(axis=(1, 2))
    out["extends-right"] = ((R & mask2) == M2).all(axis=(1, 2))

    G = lay.base_edges
    S = range(n)
    for name, p, q in (("free-i", n, n + 1), ("free-ii", n + 1, n)):
        Ep = [lay.eidx[tuple(sorted((p, x)))] for x in S]
        Fq = [lay.eidx[tuple(sorted((q, y)))] for y in S]
        direct = LT[:, Ep][:, :, Fq]
        via = _bmm(LTf[:, Ep][:, :, G], LTf[:, G][:, :, Fq])
        out[name] = (direct == via).all(axis=(1, 2))
    others = [i for i in range(E) if i != lay.bridge]
    b = lay.bridge
    out["free-iii"] = ~(LT[:, others, b].any(axis=1) | LT[:, b, others].any(axis=1))
    out["free-iv"] = ~UP[:, list(S), b].any(axis=1)
    for name, p, q in (("free-v", n, n + 1), ("free-vi", n + 1, n)):
        Fq = [lay.eidx[tuple(sorted((q, x)))] for x in S]
        direct = UP[:, p, Fq]
        via = _bmm(UP[:, p : p + 1, G], LTf[:, G][:, :, Fq])[:, 0, :]
        out[name] = (direct == via).all(axis=1)
    return out


@dataclass
class BatchReport:
    total: int = 0
    failures: int = 0
    first_failure: tuple | None = None
    by_check: dict = field(default_factory=lambda: {c: 0 for c in CHECKS})

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.total > 0


def _check_extensions(s, exts):
    for ext in exts:
        if ext.n != s.n + 1 or restrict(ext, range(s.n)) != s:
            raise PreconditionError("each extension must be the base plus one new last element")


def free_amalgam_arrays(s: LabeledSwitchboard, exts, pairs):
    """Closed triangle relations (one per pair) as a ``(len(pairs), V, V)`` array."""
    _check_extensions(s, exts)
    lay = _Layout(s.n)
    M1 = np.stack([lay.embed(x, s.n) for x in exts]) if exts else np.zeros((0, lay.V, lay.V), bool)
    M2 = np.stack([lay.embed(x, s.n + 1) for x in exts]) if exts else np.zeros((0, lay.V, lay.V), bool)
    I = np.array([p[0] for p in pairs], dtype=np.int64)
    J = np.array([p[1] for p in pairs], dtype=np.int64)
    return _closure(M1[I] | M2[J], lay.N), lay


def decode(lay: _Layout, R: np.ndarray) -> LabeledSwitchboard:
    """One closed relation back to a structure (no validation)."""
    N = lay.N
    lt = {(lay.edges[i], lay.edges[j]) for i, j in zip(*np.nonzero(R[N:, N:]))}
    up = {(int(a), lay.edges[j]) for a, j in zip(*np.nonzero(R[:N, N:]))}
    return LabeledSwitchboard(Switchboard(N, frozenset(lt)), frozenset(up))


def sweep_free_amalgams(s: LabeledSwitchboard, exts, pairs=None, chunk: int = 32768) -> BatchReport:
    """Check every pair (all ordered pairs by default) of one-point extensions."""
    _check_extensions(s, exts)
    lay = _Layout(s.n)
    k = len(exts)
    M1 = np.stack([lay.embed(x, s.n) for x in exts])
    M2 = np.stack([lay.embed(x, s.n + 1) for x in exts])
    mask1 = lay.side_mask(range(s.n + 1))
    mask2 = lay.side_mask(list(range(s.n)) + [s.n + 1])
    if pairs is None:
        I_all = np.repeat(np.arange(k), k)
        J_all = np.tile(np.arange(k), k)
    else:
        I_all = np.array([p[0] for p in pairs], dtype=np.int64)
        J_all = np.array([p[1] for p in pairs], dtype=np.int64)
    report = BatchReport()
    for start in range(0, len(I_all), chunk):
        I, J = I_all[start : start + chunk], J_all[start : start + chunk]
        R = _closure(M1[I] | M2[J], lay.N)
        flags = _flags(lay, R, M1[I], M2[J], mask1, mask2)
        ok = np.ones(len(I), dtype=bool)
        for name in CHECKS:
            bad = ~flags[name]
            report.by_check[name] += int(bad.sum())
            ok &= flags[name]
        report.total += len(I)
        fails = np.nonzero(~ok)[0]
        report.failures += len(fails)
        if len(fails) and report.first_failure is None:
            report.first_failure = (int(I[fails[0]]), int(J[fails[0]]))
    return report
