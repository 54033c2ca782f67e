import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import brute_labelings
from switchboard.core import (
    LabeledSwitchboard,
    Switchboard,
    TriangleRelation,
    all_edges,
    edge,
    enumerate_labelings,
    from_triangle,
    isomorphic,
    label_canonical,
    relabel,
    replay,
    restrict,
    to_triangle,
    validate,
    validate_triangle,
)
from switchboard.errors import EnumerationCapExceeded, FormatError, InvalidStructure
from switchboard.generic import random_labeled
from switchboard.io import dumps
from switchboard.order import chain_switchboard


def test_edge_is_canonical():
    assert edge(3, 1) == (1, 3)
    with pytest.raises(FormatError):
        edge(2, 2)


def test_all_edges_count():
    assert len(all_edges(5)) == 10
    assert all_edges(1) == []


def test_three_points_admit_only_the_empty_order():
    # any comparable pair of edges needs four distinct points
    for e, f in itertools.permutations(all_edges(3), 2):
        assert not validate(Switchboard(3, frozenset({(e, f)}))).valid


def test_switchboard_axiom_violation_has_witness():
    s = Switchboard(4, frozenset({((0, 1), (0, 2))}))
    report = validate(s)
    assert not report.valid
    axioms = {v.axiom for v in report.violations}
    assert "switchboard" in axioms
    for v in report.violations:
        assert replay(s, v)


def test_transitivity_violation():
    lt = {((0, 1), (2, 3)), ((2, 3), (4, 5))}
    report = validate(Switchboard(6, frozenset(lt)))
    assert [v.axiom for v in report.violations] == ["transitive"]
    assert report.violations[0].witness == ((0, 1), (2, 3), (4, 5))


def test_upward_and_downward_violations():
    s = chain_switchboard(2)
    # 0 favors {2,3} is forced by {0,1} < {2,3}
    bare = LabeledSwitchboard(s, frozenset())
    report = validate(bare)
    assert {v.axiom for v in report.violations} == {"downward"}
    for v in report.violations:
        assert replay(bare, v)
    fav = LabeledSwitchboard(s, frozenset({(2, (0, 1))}))
    assert "upward" in {v.axiom for v in validate(fav).violations}


def test_trichotomy_violation():
    s = LabeledSwitchboard.of(3, up={(0, (0, 1))})
    assert [v.axiom for v in validate(s).violations] == ["trichotomy"]


def test_out_of_range_edge_is_a_format_error():
    with pytest.raises(FormatError):
        Switchboard(3, frozenset({((0, 1), (2, 3))}))


def test_canonical_label_on_chain():
    lab = label_canonical(chain_switchboard(2))
    assert lab.up == {(0, (2, 3)), (1, (2, 3))}
    assert validate(lab).valid


def test_canonical_label_rejects_invalid():
    with pytest.raises(InvalidStructure):
        label_canonical(Switchboard(4, frozenset({((0, 1), (0, 2))})))


def test_labelings_of_three_points():
    found = enumerate_labelings(Switchboard(3, frozenset()))
    assert len(found) == 8
    assert set(found) == brute_labelings(Switchboard(3, frozenset()))


def test_labelings_of_chain_match_brute_force():
    s = chain_switchboard(2)
    found = enumerate_labelings(s)
    assert len(set(found)) == len(found)
    assert set(found) == brute_labelings(s)


def test_labelings_of_four_point_structures_match_brute_force():
    s = Switchboard(4, frozenset({((0, 1), (2, 3)), ((0, 2), (1, 3))}))
    assert set(enumerate_labelings(s)) == brute_labelings(s)


def test_canonical_label_is_among_labelings():
    s = chain_switchboard(2)
    assert label_canonical(s) in enumerate_labelings(s)


def test_enumeration_cap(monkeypatch):
    with pytest.raises(EnumerationCapExceeded):
        enumerate_labelings(Switchboard(13, frozenset()))
    monkeypatch.setenv("SWB_SIZE_CAP", "2")
    with pytest.raises(EnumerationCapExceeded):
        enumerate_labelings(Switchboard(3, frozenset()))
    with pytest.raises(EnumerationCapExceeded):
        enumerate_labelings(Switchboard(5, frozenset()), max_elements=6, max_nodes=3)


def test_triangle_round_trip_and_axioms():
    for lab in enumerate_labelings(chain_switchboard(2)):
        t = to_triangle(lab)
        assert validate_triangle(t).valid
        assert from_triangle(t) == lab


def test_triangle_violations():
    t = TriangleRelation(3, frozenset({(0, (0, 1))}))
    assert [v.axiom for v in validate_triangle(t).violations] == ["incidence"]
    t = TriangleRelation(4, frozenset({((0, 1), (2, 3))}))
    axioms = {v.axiom for v in validate_triangle(t).violations}
    assert axioms == {"edge-projection"}
    for v in validate_triangle(t).violations:
        assert replay(t, v)
    with pytest.raises(InvalidStructure):
        from_triangle(t)


def test_restrict_and_relabel():
    lab = label_canonical(chain_switchboard(3))
    sub = restrict(lab, [2, 3, 4, 5])
    assert sub == label_canonical(chain_switchboard(2))
    perm = {0: 2, 1: 3, 2: 0, 3: 1}
    moved = relabel(label_canonical(chain_switchboard(2)), perm)
    assert moved.lt == {((2, 3), (0, 1))}


def test_isomorphic_returns_verified_map():
    a = label_canonical(chain_switchboard(2))
    b = relabel(a, {0: 3, 1: 2, 2: 1, 3: 0})
    ok, mapping = isomorphic(a, b)
    assert ok
    assert relabel(a, mapping) == b
    richer = [l for l in enumerate_labelings(chain_switchboard(2)) if len(l.up) > len(a.up)]
    assert richer and not isomorphic(a, richer[0])[0]


@given(st.integers(0, 7), st.integers(0, 2**32 - 1), st.floats(0, 1))
def test_random_structures_round_trip_through_triangle(n, seed, density):
    m = random_labeled(n, seed, density)
    assert validate(m).valid
    assert dumps(from_triangle(to_triangle(m))) == dumps(m)


@given(st.integers(1, 6), st.integers(0, 2**32 - 1), st.randoms(use_true_random=False))
def test_isomorphic_under_random_permutation(n, seed, rnd):
    m = random_labeled(n, seed)
    perm = list(range(n))
    rnd.shuffle(perm)
    moved = relabel(m, dict(enumerate(perm)))
    ok, mapping = isomorphic(m, moved)
    assert ok and relabel(m, mapping) == moved


@given(st.integers(0, 7), st.integers(0, 2**32 - 1))
def test_tripartition_covers_every_edge(n, seed):
    m = random_labeled(n, seed)
    for a in range(n):
        up, inc, down = m.tripartition(a)
        assert up | inc | down == set(m.edges())
        assert not (up & inc or up & down or inc & down)
        assert len(inc) == n - 1


@given(st.integers(2, 7), st.integers(0, 2**32 - 1))
def test_proto_facts_hold(n, seed):
    m = random_labeled(n, seed)
    for e, f in m.lt:
        for a in e:
            assert m.favors(a, f)
        for a in f:
            assert m.disfavors(a, e)
