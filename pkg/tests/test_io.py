import pytest
from hypothesis import given
from hypothesis import strategies as st

from switchboard.core import LabeledSwitchboard, Switchboard
from switchboard.errors import FormatError
from switchboard.generic import random_labeled
from switchboard.io import Document, dump_document, dumps, loads, parse_document
from switchboard.order import chain_switchboard


def test_dump_format():
    text = dumps(LabeledSwitchboard.of(4, lt={((0, 1), (2, 3))}, up={(0, (2, 3)), (1, (2, 3))}))
    assert text == "%lsb 1\nn 4\nlt 0 1 2 3\nup 0 2 3\nup 1 2 3\n"


def test_unlabeled_round_trip():
    s = chain_switchboard(3)
    assert loads(dumps(s)) == s
    assert isinstance(loads(dumps(s)), Switchboard)


def test_names_round_trip():
    s = LabeledSwitchboard.of(3, names=("u", "v", "x"))
    back = loads(dumps(s))
    assert back.names == ("u", "v", "x")


def test_comments_blank_lines_and_dn():
    text = "# hi\n%lsb 1\n\nn 4   # four\nlt 0 1 2 3\nup 0 2 3\nup 1 2 3\ndn 2 0 1\n"
    s = loads(text)
    assert s.n == 4 and s.disfavors(2, (0, 1))


@pytest.mark.parametrize(
    "text, line",
    [
        ("%lsb 2\n", 1),
        ("%lsb 1\nn 3\nlt 0 1 1 2\nlt 0 1 2 3\n", 4),
        ("%lsb 1\nn 4\nlt 1 0 2 3\n", 3),
        ("%lsb 1\nn 4\nup 0 2 3\ndn 0 2 3\n", 4),
        ("%lsb 1\nn 4\nbogus 1\n", 3),
        ("%lsb 1\nlt 0 1 2 3\n", 2),
        ("%sb 1\nn 4\nup 0 1 2\n", 3),
        ("%lsb 1\nn 4\nlt 0 1 2 x\n", 3),
        ("%lsb 1\nn 2\nn 3\n", 3),
        ("%lsb 1\nn 3\nmap 0 1\n", 3),
    ],
)
def test_format_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as exc:
        loads(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_missing_header_and_n():
    with pytest.raises(FormatError):
        loads("")
    with pytest.raises(FormatError):
        loads("%lsb 1\n")


def test_trailers_round_trip():
    doc = Document(chain_switchboard(2), points=(1,), pair=(0, 2), embeddings={"left": {0: 0, 1: 3}})
    back = parse_document(dump_document(doc))
    assert back.points == (1,) and back.pair == (0, 2)
    assert back.embeddings == {"left": {0: 0, 1: 3}}


def test_partial_names_rejected():
    with pytest.raises(FormatError):
        loads("%lsb 1\nn 2\nname 0 a\n")


def test_loader_accepts_unsorted_lines():
    a = loads("%lsb 1\nn 4\nup 1 2 3\nlt 0 1 2 3\nup 0 2 3\n")
    b = loads("%lsb 1\nn 4\nlt 0 1 2 3\nup 0 2 3\nup 1 2 3\n")
    assert a == b and dumps(a) == dumps(b)


@given(st.integers(0, 8), st.integers(0, 2**32 - 1), st.floats(0, 1))
def test_round_trip_is_exact(n, seed, density):
    m = random_labeled(n, seed, density)
    text = dumps(m)
    assert loads(text) == m
    assert dumps(loads(text)) == text
