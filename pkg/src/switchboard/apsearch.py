"""Search for failures of amalgamation among unlabeled switchboards.

A triple ``(A, B, C)`` with ``B`` and ``C`` one-point extensions of ``A``
fails to amalgamate when no switchboard on any carrier extends both.  Any
amalgam restricts to one on the image of ``B ∪ C``, so it suffices to rule
out the disjoint pushout carrier and the carrier in which the two new
points are identified.  Each carrier is ruled out by a complete
backtracking search over the relation between every undecided pair of
disjoint edges; the certificate records the node count of each search so a
replay can confirm it exactly.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .core import Switchboard, all_edges

FORMAT = "swb-ap-failure/1"


@dataclass
class SearchStats:
    nodes: int = 0
    completions: int = 0


def _closure_with(lt: frozenset, e, f) -> frozenset:
    below = {a for a, b in lt if b == e} | {e}
    above = {b for a, b in lt if a == f} | {f}
    return lt | frozenset(itertools.product(below, above))


def _consistent(lt, inc, groups) -> bool:
    for e, f in lt:
        if e == f or set(e) & set(f):
            return False
        if frozenset((e, f)) in inc:
            return False
    for ids, allowed in groups:
        for e, f in lt:
            if set(e) <= ids and set(f) <= ids and (e, f) not in allowed:
                return False
    return True


def completions(n: int, required, groups=(), stats: SearchStats | None = None, stop_after=None):
    """Yield every switchboard order on ``0..n-1`` containing ``required``.

    ``groups`` is a sequence of ``(ids, order)``; the result restricted to
    edges inside ``ids`` must be exactly ``order``.  Pairs of edges inside a
    group are therefore never branched on.
    """
    stats = stats if stats is not None else SearchStats()
    groups = [(frozenset(ids), frozenset(order)) for ids, order in groups]
    edges = all_edges(n)
    open_pairs = [
        (e, f)
        for e, f in itertools.combinations(edges, 2)
        if not set(e) & set(f) and not any(set(e) | set(f) <= ids for ids, _ in groups)
    ]
    lt0 = frozenset()
    for e, f in sorted(required):
        if (e, f) not in lt0:
            lt0 = _closure_with(lt0, e, f)

    def dfs(lt, inc, start):
        stats.nodes += 1
        if not _consistent(lt, inc, groups):
            return
        for i in range(start, len(open_pairs)):
            e, f = open_pairs[i]
            if (e, f) not in lt and (f, e) not in lt and frozenset((e, f)) not in inc:
                break
        else:
            stats.completions += 1
            yield lt
            return
        yield from dfs(_closure_with(lt, e, f), inc, i + 1)
        yield from dfs(_closure_with(lt, f, e), inc, i + 1)
        yield from dfs(lt, inc | {frozenset((e, f))}, i + 1)

    found = 0
    for lt in dfs(lt0, frozenset(), 0):
        yield lt
        found += 1
        if stop_after is not None and found >= stop_after:
            return


def all_switchboards(n: int) -> list[Switchboard]:
    return [Switchboard(n, lt) for lt in completions(n, ())]


def one_point_extensions(a: Switchboard) -> list[Switchboard]:
    ids = range(a.n)
    return [Switchboard(a.n + 1, lt) for lt in completions(a.n + 1, a.lt, [(ids, a.lt)])]


def _shift(lt, mapping):
    return frozenset(
        (tuple(sorted((mapping[e[0]], mapping[e[1]]))), tuple(sorted((mapping[f[0]], mapping[f[1]])))) for e, f in lt
    )


def _cases(a: Switchboard, b: Switchboard, c: Switchboard):
    """Carriers to rule out: disjoint pushout, and the two new points identified."""
    k = a.n
    base = list(range(k))
    to_c = {i: i for i in base} | {k: k + 1}
    yield {
        "carrier": k + 2,
        "identify": [],
        "required": b.lt | _shift(c.lt, to_c),
        "groups": [(base + [k], b.lt), (base + [k + 1], _shift(c.lt, to_c))],
    }
    yield {
        "carrier": k + 1,
        "identify": [[k, k]],
        "required": b.lt | c.lt,
        "groups": [(base + [k], b.lt), (base + [k], c.lt)],
    }


def rule_out(a, b, c):
    """Run the exhaustive search on every carrier; None if some amalgam exists."""
    records = []
    for case in _cases(a, b, c):
        stats = SearchStats()
        for _ in completions(case["carrier"], case["required"], case["groups"], stats, stop_after=1):
            return None
        records.append({"carrier": case["carrier"], "identify": case["identify"], "nodes": stats.nodes, "completions": 0})
    return records


def _sb_json(s: Switchboard) -> dict:
    return {"n": s.n, "lt": [[list(e), list(f)] for e, f in sorted(s.lt)]}


def _sb_from_json(d) -> Switchboard:
    return Switchboard(d["n"], frozenset((tuple(e), tuple(f)) for e, f in d["lt"]))


def certificate(a, b, c, records) -> dict:
    return {
        "format": FORMAT,
        "A": _sb_json(a),
        "B": _sb_json(b),
        "C": _sb_json(c),
        "embeddings": {"A->B": list(range(a.n)), "A->C": list(range(a.n))},
        "cases": records,
        "bound": sum(r["nodes"] for r in records),
    }


@dataclass
class SearchResult:
    certificates: list = field(default_factory=list)
    triples_examined: int = 0


def search(max_n: int, limit: int = 1) -> SearchResult:
    """Scan bases of increasing size whose pushout fits in ``max_n`` points."""
    out = SearchResult()
    for k in range(0, max_n - 1):
        for a in all_switchboards(k):
            exts = one_point_extensions(a)
            for b, c in itertools.combinations_with_replacement(exts, 2):
                out.triples_examined += 1
                records = rule_out(a, b, c)
                if records is not None:
                    out.certificates.append(certificate(a, b, c, records))
                    if len(out.certificates) >= limit:
                        return out
    return out


def replay(cert: dict) -> tuple[bool, str]:
    """Re-run a certificate's searches and compare every recorded count."""
    if cert.get("format") != FORMAT:
        return False, f"unknown certificate format {cert.get('format')!r}"
    a, b, c = (_sb_from_json(cert[k]) for k in "ABC")
    for s in (b, c):
        if s.n != a.n + 1 or Switchboard(a.n, frozenset((e, f) for e, f in s.lt if max(e + f) < a.n)) != a:
            return False, "B and C must be one-point extensions of A"
    cases = list(_cases(a, b, c))
    if len(cases) != len(cert["cases"]):
        return False, "certificate does not cover every carrier"
    total = 0
    for case, rec in zip(cases, cert["cases"]):
        stats = SearchStats()
        for _ in completions(case["carrier"], case["required"], case["groups"], stats, stop_after=1):
            return False, f"carrier {case['carrier']} admits an amalgam"
        if stats.nodes != rec["nodes"] or rec["completions"] != 0:
            return False, f"node count mismatch on carrier {case['carrier']}: {stats.nodes} != {rec['nodes']}"
        total += stats.nodes
    if total != cert["bound"]:
        return False, "bound does not match the case totals"
    return True, f"verified: {total} search nodes, no amalgam"


def dumps_certificates(certs) -> str:
    return json.dumps(certs, indent=2, sort_keys=True) + "\n"
