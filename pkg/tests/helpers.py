"""Hand-built structures and independent oracles shared by the test modules."""

import random
import re

import networkx as nx

from switchboard.amalg import PartialRelation
from switchboard.core import LabeledSwitchboard, all_edges, to_triangle, validate
from switchboard.generic import TwoTypeSpec
from switchboard.order import FinitePoset

U, V, X, Y = 0, 1, 2, 3


def cross_fact_q() -> TwoTypeSpec:
    """B = {u, v}; x and y favor {u, v}; q adds {x,u} < {y,v} and its forced labels."""
    up = {
        (X, (U, V)),
        (Y, (U, V)),
        (U, (V, X)),
        (U, (V, Y)),
        (X, (V, Y)),
        (U, (V, Y)),
    }
    m = LabeledSwitchboard.of(4, lt={((U, X), (V, Y))}, up=up)
    return TwoTypeSpec(m, (X, Y))


def brute_labelings(s):
    # every subset of non-incident (element, edge) pairs, filtered by the validator
    slots = [(a, e) for a in range(s.n) for e in all_edges(s.n) if a not in e]
    out = set()
    for bits in range(2 ** len(slots)):
        up = frozenset(slots[i] for i in range(len(slots)) if bits >> i & 1)
        cand = LabeledSwitchboard(s, up)
        if validate(cand).valid:
            out.add(cand)
    return out


class NaiveEval:
    """Evaluate formula text directly while parsing it, against the triangle relation."""

    def __init__(self, m, env):
        self.rel = to_triangle(m).rel
        self.env = env

    def run(self, text):
        self.toks = re.findall(r"[A-Za-z_]\w*|@\d+|[()!&|,]", text)
        self.i = 0
        value = self.disj()
        assert self.i == len(self.toks)
        return value

    def next(self):
        self.i += 1
        return self.toks[self.i - 1]

    def disj(self):
        v = self.conj()
        while self.i < len(self.toks) and self.toks[self.i] == "|":
            self.next()
            w = self.conj()
            v = v or w
        return v

    def conj(self):
        v = self.neg()
        while self.i < len(self.toks) and self.toks[self.i] == "&":
            self.next()
            w = self.neg()
            v = v and w
        return v

    def neg(self):
        tok = self.next()
        if tok == "!":
            return not self.neg()
        if tok == "(":
            v = self.disj()
            assert self.next() == ")"
            return v
        args = []
        self.next()
        while True:
            t = self.next()
            args.append(int(t[1:]) if t.startswith("@") else self.env[t])
            if self.next() == ")":
                break
        return self.atom(tok, args)

    def atom(self, pred, v):
        if pred == "eq":
            return v[0] == v[1]
        if pred == "lt":
            if v[0] == v[1] or v[2] == v[3]:
                return False
            return (tuple(sorted(v[:2])), tuple(sorted(v[2:]))) in self.rel
        if v[1] == v[2] or v[0] in v[1:]:
            return False
        fav = (v[0], tuple(sorted(v[1:]))) in self.rel
        return fav if pred == "up" else not fav


def random_poset(size, seed, p=0.35):
    rng = random.Random(seed)
    order = list(range(size))
    rng.shuffle(order)
    pairs = {(order[i], order[j]) for i in range(size) for j in range(i + 1, size) if rng.random() < p}
    changed = True
    while changed:
        extra = {(a, d) for a, b in pairs for c, d in pairs if b == c} - pairs
        changed = bool(extra)
        pairs |= extra
    return FinitePoset(tuple(range(size)), frozenset(pairs))


def longest_chain_below(p):
    # enumerate every strictly ascending path explicitly
    succ = {k: [b for a, b in p.pairs if a == k] for k in p.carrier}
    best = {k: 0 for k in p.carrier}

    def walk(k, length):
        best[k] = max(best[k], length)
        for nxt in succ[k]:
            walk(nxt, length + 1)

    for k in p.carrier:
        walk(k, 0)
    return best


def random_transitive(nodes, rng, p):
    nodes = list(nodes)
    rng.shuffle(nodes)
    pairs = {(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1 :] if rng.random() < p}
    return PartialRelation(frozenset(nodes), frozenset(nx.transitive_closure(nx.DiGraph(list(pairs))).edges()))


def overlapping_pair(seed):
    # restrict one transitive relation to two overlapping carriers so they agree on the overlap
    rng = random.Random(seed)
    size = rng.randint(1, 8)
    whole = random_transitive(range(size), rng, rng.random())
    left = {x for x in range(size) if rng.random() < 0.6}
    right = {x for x in range(size) if x not in left or rng.random() < 0.4}
    return whole.restrict(left), whole.restrict(right)


def bfs_closure(pairs):
    succ = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    out = set()
    for start in succ:
        frontier, seen = list(succ[start]), set()
        while frontier:
            nxt = []
            for x in frontier:
                if x not in seen:
                    seen.add(x)
                    nxt.extend(succ.get(x, ()))
            frontier = nxt
        out |= {(start, x) for x in seen}
    return out
