"""Seeded property suites shared by the ``check`` subcommand and the tests."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .amalg import free_amalgam_one_point, is_freely_amalgamated
from .core import Switchboard, edge, enumerate_labelings, from_triangle, restrict, to_triangle, validate
from .generic import random_extension, random_labeled, random_two_type, witness_down, witness_up
from .io import dumps
from .order import chain_switchboard, edge_poset, hgt_all
from .qftypes import build_core_sequence, check_core_conclusions, is_distinguished, is_half_symmetric, two_stage_symmetry


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    failures: int
    first_failure: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" first: {self.first_failure}" if self.first_failure else ""
        return f"{status} {self.name} {self.cases - self.failures}/{self.cases}{tail}"


class _Tally:
    def __init__(self, name):
        self.name, self.cases, self.failures, self.first = name, 0, 0, ""

    def add(self, ok, what=""):
        self.cases += 1
        if not ok:
            self.failures += 1
            self.first = self.first or what

    def result(self):
        return SuiteResult(self.name, self.cases, self.failures, self.first)


def labeling_count() -> SuiteResult:
    t = _Tally("labeling-count")
    t.add(len(enumerate_labelings(Switchboard(3, frozenset()))) == 8, "n=3 expansions != 8")
    return t.result()


def triangle_roundtrip(cases=200, seed=0) -> SuiteResult:
    t = _Tally("triangle-roundtrip")
    rng = random.Random(seed)
    pool = list(enumerate_labelings(Switchboard(3, frozenset())))
    pool += [random_labeled(rng.randint(0, 8), rng.randrange(2**32), rng.random()) for _ in range(cases)]
    for m in pool:
        t.add(dumps(from_triangle(to_triangle(m))) == dumps(m), f"n={m.n}")
    return t.result()


def free_amalgams(cases=200, seed=1) -> SuiteResult:
    t = _Tally("free-amalgam")
    rng = random.Random(seed)
    for _ in range(cases):
        s = random_labeled(rng.randint(0, 6), rng.randrange(2**32), rng.random())
        a1 = random_extension(s, rng, rng.random())
        a2 = random_extension(s, rng, rng.random())
        out = free_amalgam_one_point(s, a1, a2)
        n = s.n
        ok = (
            validate(out).valid
            and restrict(out, range(n + 1)) == a1
            and restrict(out, list(range(n)) + [n + 1]) == a2
            and bool(is_freely_amalgamated(out, range(n), n, n + 1))
        )
        t.add(ok, f"base n={n}")
    return t.result()


def witnesses(cases=200, seed=2) -> SuiteResult:
    t = _Tally("witness")
    rng = random.Random(seed)
    while t.cases < cases:
        m = random_labeled(rng.randint(3, 7), rng.randrange(2**32), rng.random())
        x = rng.randrange(m.n)
        others = [a for a in range(m.n) if a != x]
        e = edge(*rng.sample(others, 2))
        up = m.favors(x, e)
        out, w = (witness_up if up else witness_down)(m, x, e)
        fact = out.less(edge(x, w), e) if up else out.less(e, edge(x, w))
        t.add(validate(out).valid and fact and restrict(out, range(m.n)) == m, f"x={x} e={e}")
    return t.result()


def distinguished_half_symmetric(cases=300, seed=3) -> SuiteResult:
    t = _Tally("distinguished-half-symmetric")
    rng = random.Random(seed)
    for _ in range(cases):
        q = random_two_type(rng.randint(1, 4), rng.randrange(2**32), rng.random())
        m, B, (a1, a2) = q.structure, q.base_ids, q.pair
        if is_distinguished(m, B, a1, a2):
            t.add(is_half_symmetric(m, B, a1, a2), f"B={B}")
    return t.result()


def core_sequences(cases=40, seed=4) -> SuiteResult:
    t = _Tally("core-sequence")
    rng = random.Random(seed)
    for _ in range(cases):
        b = rng.randint(1, 4)
        q = random_two_type(b, rng.randrange(2**32), rng.random())
        report = build_core_sequence(q, b + 2)
        realized = all(f.realizes_q for f in report.flags if f.realizes_q is not None)
        t.add(realized and check_core_conclusions(report).passed, f"|B|={b}")
    return t.result()


def two_stage(cases=40, seed=5) -> SuiteResult:
    t = _Tally("two-stage")
    rng = random.Random(seed)
    for _ in range(cases):
        b = rng.randint(1, 4)
        q = random_two_type(b, rng.randrange(2**32), rng.random())
        t.add(two_stage_symmetry(q, max(b, 1), b + 1).passed, f"|B|={b}")
    return t.result()


def heights() -> SuiteResult:
    t = _Tally("chain-height")
    for k in range(11):
        t.add(hgt_all(edge_poset(chain_switchboard(k)))[1] == k, f"k={k}")
    return t.result()


SUITES = (labeling_count, triangle_roundtrip, free_amalgams, witnesses, distinguished_half_symmetric, core_sequences, two_stage, heights)


def run_all() -> list[SuiteResult]:
    return [suite() for suite in SUITES]
