"""Line-oriented text format for (labeled) switchboards.

::

    %lsb 1
    n 4
    lt 0 1 2 3
    up 0 2 3
    up 1 2 3

``dn a b c`` lines are accepted on input and must agree with the derived
disfavor relation.  Trailer directives carry extra data for other commands:
``point <id>``, ``pair <id> <id>``, and ``embedding left|right`` followed by
``map <from> <to>`` lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import LabeledSwitchboard, Switchboard
from .errors import FormatError

HEADERS = {"%sb": Switchboard, "%lsb": LabeledSwitchboard}


@dataclass
class Document:
    structure: object
    points: tuple = ()
    pair: Optional[tuple] = None
    embeddings: dict = field(default_factory=dict)


def dumps(s, trailer=()) -> str:
    labeled = isinstance(s, LabeledSwitchboard)
    lines = ["%lsb 1" if labeled else "%sb 1", f"n {s.n}"]
    if s.names is not None:
        lines += [f"name {i} {name}" for i, name in enumerate(s.names)]
    lines += [f"lt {e[0]} {e[1]} {f[0]} {f[1]}" for e, f in sorted(s.lt)]
    if labeled:
        lines += [f"up {a} {e[0]} {e[1]}" for a, e in sorted(s.up)]
    lines += list(trailer)
    return "\n".join(lines) + "\n"


def dump_document(doc: Document) -> str:
    trailer = [f"point {p}" for p in doc.points]
    if doc.pair is not None:
        trailer.append(f"pair {doc.pair[0]} {doc.pair[1]}")
    for side in ("left", "right"):
        if side in doc.embeddings:
            trailer.append(f"embedding {side}")
            trailer += [f"map {a} {b}" for a, b in sorted(doc.embeddings[side].items())]
    return dumps(doc.structure, trailer)


def _ints(tokens, count, lineno, what):
    if len(tokens) != count:
        raise FormatError(f"{what} takes {count} integers, got {len(tokens)}", lineno)
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"{what}: non-integer argument in {' '.join(tokens)!r}", lineno) from None


def _edge_arg(lo, hi, n, lineno):
    if not lo < hi:
        raise FormatError(f"edge {lo} {hi} must be written with lo < hi", lineno)
    if lo < 0 or hi >= n:
        raise FormatError(f"edge {lo} {hi} out of range for n={n}", lineno)
    return (lo, hi)


def _elem_arg(a, n, lineno):
    if not 0 <= a < n:
        raise FormatError(f"element {a} out of range for n={n}", lineno)
    return a


def parse_document(text: str) -> Document:
    kind = None
    n = None
    names: dict[int, str] = {}
    lt, up, dn = set(), set(), []
    points: list[int] = []
    pair = None
    embeddings: dict[str, dict] = {}
    section = None

    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head, args = tokens[0], tokens[1:]
        if kind is None:
            if head not in HEADERS or args != ["1"]:
                raise FormatError(f"expected '%sb 1' or '%lsb 1' header, got {line!r}", lineno)
            kind = HEADERS[head]
            continue
        if head == "n":
            if n is not None:
                raise FormatError("duplicate 'n' line", lineno)
            (n,) = _ints(args, 1, lineno, "n")
            if n < 0:
                raise FormatError("element count must be non-negative", lineno)
            continue
        if n is None:
            raise FormatError(f"'{head}' before 'n'", lineno)
        if head == "name":
            if len(args) != 2:
                raise FormatError("name takes an id and a token", lineno)
            (i,) = _ints(args[:1], 1, lineno, "name")
            _elem_arg(i, n, lineno)
            if i in names:
                raise FormatError(f"element {i} named twice", lineno)
            names[i] = args[1]
        elif head == "lt":
            a, b, c, d = _ints(args, 4, lineno, "lt")
            lt.add((_edge_arg(a, b, n, lineno), _edge_arg(c, d, n, lineno)))
        elif head in ("up", "dn"):
            if kind is not LabeledSwitchboard:
                raise FormatError(f"'{head}' facts need a '%lsb' header", lineno)
            a, b, c = _ints(args, 3, lineno, head)
            fact = (_elem_arg(a, n, lineno), _edge_arg(b, c, n, lineno))
            if head == "up":
                up.add(fact)
            else:
                dn.append((fact, lineno))
        elif head == "point":
            (p,) = _ints(args, 1, lineno, "point")
            points.append(_elem_arg(p, n, lineno))
        elif head == "pair":
            s, t = _ints(args, 2, lineno, "pair")
            pair = (_elem_arg(s, n, lineno), _elem_arg(t, n, lineno))
        elif head == "embedding":
            if args not in (["left"], ["right"]):
                raise FormatError("embedding must be 'left' or 'right'", lineno)
            section = args[0]
            embeddings[section] = {}
        elif head == "map":
            if section is None:
                raise FormatError("'map' outside an embedding section", lineno)
            a, b = _ints(args, 2, lineno, "map")
            embeddings[section][a] = b
        else:
            raise FormatError(f"unknown directive {head!r}", lineno)

    if kind is None:
        raise FormatError("empty input: missing header")
    if n is None:
        raise FormatError("missing 'n' line")
    name_tuple = None
    if names:
        if set(names) != set(range(n)):
            raise FormatError("names must be given for every element or none")
        name_tuple = tuple(names[i] for i in range(n))
    base = Switchboard(n, frozenset(lt), name_tuple)
    if kind is Switchboard:
        structure = base
    else:
        for (a, e), lineno in dn:
            if a in e or (a, e) in up:
                raise FormatError(f"'dn {a} {e[0]} {e[1]}' disagrees with the derived disfavor relation", lineno)
        structure = LabeledSwitchboard(base, frozenset(up))
    return Document(structure, tuple(points), pair, embeddings)


def loads(text: str):
    return parse_document(text).structure


def load(path):
    with open(path, encoding="ascii") as fh:
        return loads(fh.read())


def load_document(path) -> Document:
    with open(path, encoding="ascii") as fh:
        return parse_document(fh.read())
