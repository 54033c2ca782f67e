"""Command-line front end.

Exit codes: 0 success, 1 a violation or FAIL verdict, 2 usage/parse/format
errors.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import apsearch, checks
from .amalg import amalgamate, free_amalgam_one_point
from .core import LabeledSwitchboard, edge, enumerate_labelings, label_canonical, validate
from .errors import EnumerationCapExceeded, FormatError, InvalidStructure, PreconditionError
from .formula import parse_formula, phi_poset
from .generic import TwoTypeSpec, random_labeled, witness_down, witness_up
from .io import Document, dump_document, dumps, parse_document
from .order import dump_poset, edge_poset, hgt_all, load_poset
from .qftypes import build_core_sequence, check_core_conclusions, two_stage_symmetry


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="ascii") as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def _doc(path: str) -> Document:
    return parse_document(_read(path))


def _labeled(path: str) -> LabeledSwitchboard:
    s = _doc(path).structure
    if not isinstance(s, LabeledSwitchboard):
        raise FormatError(f"{path}: expected a labeled structure ('%lsb 1' header)")
    return s


def _valid(s, what):
    report = validate(s)
    if not report.valid:
        raise InvalidStructure(report, what)
    return s


def _spec(path: str) -> TwoTypeSpec:
    doc = _doc(path)
    if not isinstance(doc.structure, LabeledSwitchboard):
        raise FormatError(f"{path}: a 2-type spec needs a labeled structure")
    if doc.pair is None:
        raise FormatError(f"{path}: a 2-type spec needs a 'pair <s> <t>' line")
    return TwoTypeSpec(_valid(doc.structure, "2-type spec"), doc.pair)


def _vars(text: str) -> list[str]:
    return [v for v in text.split(",") if v] if text else []


def cmd_validate(args) -> int:
    s = _doc(args.file).structure
    report = validate(s)
    if report.valid:
        print("valid")
        return 0
    for v in report.violations:
        print(v)
    return 1


def cmd_label(args) -> int:
    s = _valid(_doc(args.file).structure, "switchboard")
    base = s.base if isinstance(s, LabeledSwitchboard) else s
    sys.stdout.write(dumps(label_canonical(base)))
    return 0


def cmd_labelings(args) -> int:
    s = _valid(_doc(args.file).structure, "switchboard")
    base = s.base if isinstance(s, LabeledSwitchboard) else s
    found = enumerate_labelings(base)
    print(len(found))
    if args.list:
        for l in found:
            sys.stdout.write(dumps(l))
    return 0


def _embedding(doc: Document):
    for side in ("left", "right"):
        if side in doc.embeddings:
            return doc.embeddings[side]
    return None


def cmd_amalgamate(args) -> int:
    base = _valid(_labeled(args.base), "base")
    left_doc, right_doc = _doc(args.left), _doc(args.right)
    for d, name in ((left_doc, "left"), (right_doc, "right")):
        if not isinstance(d.structure, LabeledSwitchboard):
            raise FormatError(f"{name}: expected a labeled structure")
    res = amalgamate(base, left_doc.structure, right_doc.structure, _embedding(left_doc), _embedding(right_doc))
    sys.stdout.write(dump_document(Document(res.result, embeddings={"left": res.left_embedding, "right": res.right_embedding})))
    return 0


def cmd_free_amalgam(args) -> int:
    s = _labeled(args.base)
    out = free_amalgam_one_point(s, _labeled(args.left), _labeled(args.right))
    sys.stdout.write(dump_document(Document(out, pair=(s.n, s.n + 1))))
    return 0


def _edge_arg(text: str):
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise FormatError(f"--edge expects 'i,j', got {text!r}") from None
    if a == b:
        raise FormatError("--edge needs two distinct elements")
    return edge(a, b)


def cmd_witness(args) -> int:
    m = _labeled(args.file)
    build = witness_up if args.dir == "up" else witness_down
    out, w = build(m, args.x, _edge_arg(args.edge))
    sys.stdout.write(dump_document(Document(out, points=(w,))))
    return 0


def cmd_height(args) -> int:
    if args.edges:
        poset = edge_poset(_valid(_doc(args.edges).structure, "switchboard"))
    else:
        poset = load_poset(_read(args.poset))
    _, height = hgt_all(poset)
    print(height)
    return 0


def cmd_eval(args) -> int:
    m = _valid(_labeled(args.file), "structure")
    f = parse_formula(args.formula)
    poset = phi_poset(m, f, _vars(args.obj), _vars(args.param))
    sys.stdout.write(dump_poset(poset))
    print(f"height {hgt_all(poset)[1]}")
    return 0


def cmd_gen(args) -> int:
    sys.stdout.write(dumps(random_labeled(args.n, args.seed, args.density)))
    return 0


def cmd_sequence(args) -> int:
    report = build_core_sequence(_spec(args.q), args.length)
    print("sequence " + " ".join(str(c) for c in report.sequence))
    for f in report.flags:
        if f.realizes_q is not None:
            print(f"realizes-q {f.index} {'PASS' if f.realizes_q else 'FAIL'}")
        if f.freely_amalgamated is not None:
            print(f"free {f.index} {'PASS' if f.freely_amalgamated else 'FAIL'}")
    if args.emit_structure:
        sys.stdout.write(dumps(report.structure))
    if not args.check:
        return 0
    verdict = check_core_conclusions(report)
    for line in verdict.lines():
        print(line)
    return 0 if verdict.passed else 1


def cmd_two_stage(args) -> int:
    verdict = two_stage_symmetry(_spec(args.q), args.k1, args.k2)
    for line in verdict.lines():
        print(line)
    return 0 if verdict.passed else 1


def cmd_ap_failure(args) -> int:
    if args.replay:
        try:
            certs = json.loads(_read(args.replay))
        except json.JSONDecodeError as exc:
            raise FormatError(f"certificate is not JSON: {exc}") from None
        certs = certs if isinstance(certs, list) else [certs]
        ok = True
        for i, cert in enumerate(certs):
            good, msg = apsearch.replay(cert)
            print(f"certificate {i} {'PASS' if good else 'FAIL'} {msg}")
            ok = ok and good
        return 0 if ok else 1
    result = apsearch.search(args.max_n, args.limit)
    sys.stdout.write(apsearch.dumps_certificates(result.certificates))
    print(f"examined {result.triples_examined} triples, {len(result.certificates)} failures", file=sys.stderr)
    return 0 if result.certificates else 1


def cmd_check(args) -> int:
    ok = True
    for r in checks.run_all():
        print(r.line())
        ok = ok and r.passed
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="swb", description="Finite switchboard toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check every axiom")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("label", help="print the canonical labeling")
    s.add_argument("file")
    s.set_defaults(func=cmd_label)

    s = sub.add_parser("labelings", help="count all labeled expansions")
    s.add_argument("file")
    s.add_argument("--list", action="store_true", help="also print every expansion")
    s.set_defaults(func=cmd_labelings)

    s = sub.add_parser("amalgamate", help="strong amalgam over a base")
    s.add_argument("--base", required=True)
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.set_defaults(func=cmd_amalgamate)

    s = sub.add_parser("free-amalgam", help="free amalgam of two one-point extensions")
    s.add_argument("--base", required=True)
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.set_defaults(func=cmd_free_amalgam)

    s = sub.add_parser("witness", help="add a point realizing x's label on an edge by order")
    s.add_argument("--dir", choices=("up", "down"), required=True)
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--edge", required=True)
    s.add_argument("file")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("height", help="height of an edge poset or a poset file")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--edges")
    g.add_argument("--poset")
    s.set_defaults(func=cmd_height)

    s = sub.add_parser("eval", help="φ-set poset of a formula")
    s.add_argument("--formula", required=True)
    s.add_argument("--obj", default="")
    s.add_argument("--param", default="")
    s.add_argument("file")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("gen", help="seeded random labeled switchboard")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--density", type=float, default=0.5)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("sequence", help="build c_0..c_K from a 2-type spec")
    s.add_argument("--q", required=True)
    s.add_argument("--length", type=int, required=True)
    s.add_argument("--check", action="store_true")
    s.add_argument("--emit-structure", action="store_true")
    s.set_defaults(func=cmd_sequence)

    s = sub.add_parser("two-stage", help="two-stage symmetry scenario")
    s.add_argument("--q", required=True)
    s.add_argument("--k1", type=int, required=True)
    s.add_argument("--k2", type=int, required=True)
    s.set_defaults(func=cmd_two_stage)

    s = sub.add_parser("ap-failure", help="search for unlabeled amalgamation failures")
    s.add_argument("--max-n", type=int, default=6)
    s.add_argument("--limit", type=int, default=1)
    s.add_argument("--replay", metavar="CERT")
    s.set_defaults(func=cmd_ap_failure)

    s = sub.add_parser("check", help="run the property suites")
    s.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidStructure as exc:
        print(f"swb: {exc}", file=sys.stderr)
        return 1
    except (FormatError, PreconditionError, EnumerationCapExceeded) as exc:
        print(f"swb: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
