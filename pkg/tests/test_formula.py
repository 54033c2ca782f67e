import itertools
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from switchboard.core import LabeledSwitchboard, label_canonical
from helpers import NaiveEval
from switchboard.errors import PreconditionError
from switchboard.formula import (
    And,
    ArityError,
    Atom,
    Const,
    FormulaSyntaxError,
    Not,
    Or,
    Var,
    evaluate,
    parse_formula,
    phi_poset,
    phi_sets,
    to_text,
    variables,
)
from switchboard.generic import random_labeled
from switchboard.order import chain_switchboard, hgt_all, validate_poset

CORPUS = [line for line in (Path(__file__).parent / "data" / "formulas.txt").read_text().splitlines() if line]


def test_corpus_has_fifty_formulas():
    assert len(CORPUS) == 50


@pytest.mark.parametrize("text", CORPUS)
def test_parse_print_parse_fixpoint(text):
    f = parse_formula(text)
    printed = to_text(f)
    assert parse_formula(printed) == f
    assert to_text(parse_formula(printed)) == printed


def test_examples():
    assert parse_formula("lt(x1,x2,y1,y2)") == Atom("lt", (Var("x1"), Var("x2"), Var("y1"), Var("y2")))
    f = parse_formula("up(y1,x1,@3) & !eq(x1,@3)")
    assert f == And(Atom("up", (Var("y1"), Var("x1"), Const(3))), Not(Atom("eq", (Var("x1"), Const(3)))))
    assert to_text(f) == "up(y1,x1,@3) & !eq(x1,@3)"


def test_precedence_and_associativity():
    a, b, c = (Atom("eq", (Var(v), Var("y1"))) for v in ("x1", "x2", "x3"))
    assert parse_formula("eq(x1,y1) | eq(x2,y1) & eq(x3,y1)") == Or(a, And(b, c))
    assert parse_formula("eq(x1,y1) | eq(x2,y1) | eq(x3,y1)") == Or(Or(a, b), c)
    right = Or(a, Or(b, c))
    assert parse_formula(to_text(right)) == right
    assert parse_formula("!eq(x1,y1) & eq(x2,y1)") == And(Not(a), b)


@pytest.mark.parametrize(
    "text, pos",
    [("lt(x1,x2,y1)", 0), ("eq(x1,y1", 8), ("eq(x1,y1) &", 11), ("up(x1,,y1)", 6), ("eq(x1,y1) $", 10), ("eq(x1,y1) eq(x1,y1)", 10)],
)
def test_syntax_errors_have_positions(text, pos):
    with pytest.raises(FormulaSyntaxError) as exc:
        parse_formula(text)
    assert exc.value.pos == pos
    assert f"position {pos}" in str(exc.value)


def test_arity_error_type():
    with pytest.raises(ArityError):
        parse_formula("lt(x1,x2,y1)")
    with pytest.raises(ArityError):
        parse_formula("eq(x1)")


def test_keywords_are_not_variables():
    with pytest.raises(FormulaSyntaxError):
        parse_formula("eq(lt,x1)")


def _structures():
    out = [label_canonical(chain_switchboard(2))]
    out += [random_labeled(n, seed, d) for n in (4, 5) for seed, d in ((1, 0.3), (2, 0.6), (3, 0.9))]
    return out


def test_evaluator_matches_naive_on_all_assignments():
    names = ["x1", "x2", "y1", "y2"]
    checked = 0
    for m in _structures():
        for text in CORPUS:
            f = parse_formula(text)
            used = sorted(variables(f))
            oracle = NaiveEval(m, {})
            for vals in itertools.product(range(m.n), repeat=len(used)):
                env = dict(zip(used, vals))
                oracle.env = env
                assert evaluate(m, f, env) == oracle.run(text), (text, env)
                checked += 1
    assert set().union(*(variables(parse_formula(t)) for t in CORPUS)) <= set(names)
    assert checked > 10000


def test_phi_poset_on_chain():
    m = label_canonical(chain_switchboard(2))
    f = parse_formula("lt(x1,x2,y1,y2)")
    sets = phi_sets(m, f, ["x1", "x2"], ["y1", "y2"])
    assert len(sets) == 16
    assert sets[(2, 3)] == {(0, 1), (1, 0)}
    assert sets[(0, 1)] == frozenset()
    poset = phi_poset(m, f, ["x1", "x2"], ["y1", "y2"])
    assert ((0, 1), (2, 3)) in poset.pairs
    assert hgt_all(poset)[1] == 2


def test_phi_poset_of_equality_is_an_antichain():
    m = random_labeled(4, 0)
    poset = phi_poset(m, parse_formula("eq(x1,y1)"), ["x1"], ["y1"])
    assert poset.pairs == frozenset()
    assert hgt_all(poset)[1] == 1


def test_phi_poset_errors():
    m = random_labeled(3, 0)
    with pytest.raises(PreconditionError):
        phi_poset(m, parse_formula("eq(x1,@7)"), ["x1"], [])
    with pytest.raises(PreconditionError):
        phi_poset(m, parse_formula("eq(x1,z)"), ["x1"], [])
    with pytest.raises(PreconditionError):
        phi_poset(m, parse_formula("eq(x1,y1)"), ["x1"], ["x1", "y1"])


def test_degenerate_atoms_are_false():
    m = label_canonical(chain_switchboard(2))
    for text in ("lt(x1,x1,y1,y2)", "up(y1,x1,x1)", "down(y1,x1,x1)"):
        f = parse_formula(text)
        assert not any(evaluate(m, f, {"x1": a, "y1": 2, "y2": 3}) for a in range(4))


terms = st.one_of(st.sampled_from(["x1", "x2", "y1"]).map(Var), st.integers(0, 3).map(Const))
atoms = st.one_of(
    st.tuples(terms, terms, terms, terms).map(lambda t: Atom("lt", t)),
    st.tuples(terms, terms, terms).map(lambda t: Atom("up", t)),
    st.tuples(terms, terms, terms).map(lambda t: Atom("down", t)),
    st.tuples(terms, terms).map(lambda t: Atom("eq", t)),
)
formulas = st.recursive(
    atoms,
    lambda sub: st.one_of(sub.map(Not), st.tuples(sub, sub).map(lambda p: And(*p)), st.tuples(sub, sub).map(lambda p: Or(*p))),
    max_leaves=12,
)


@given(formulas)
def test_printer_round_trips_any_ast(f):
    assert parse_formula(to_text(f)) == f


@given(formulas, st.integers(4, 5), st.integers(0, 2**16))
def test_phi_poset_is_a_valid_poset(f, n, seed):
    m = random_labeled(n, seed)
    assert isinstance(m, LabeledSwitchboard)
    poset = phi_poset(m, f, ["x1", "x2"], ["y1"])
    assert validate_poset(poset).valid
    assert hgt_all(poset)[1] >= 1
