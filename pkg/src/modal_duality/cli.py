"""Command line front end.

Exit codes: 0 success or verdict true, 1 verdict false (the report carries
the witness), 2 usage, parse or schema error.
"""
from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from typing import Any, Sequence

from . import functors as fn
from . import suites
from .core import (
    BoxAlgebra,
    CapError,
    Kappa,
    KripkeFrame,
    MRFrame,
    NFrame,
    check_kappa_dd,
    check_nfr,
    is_all_directed,
    validate_algebra,
)
from .documents import (
    DocumentError,
    MapDocument,
    dumps,
    parse_document,
    serialize_document,
)
from .duality import verify_cama_nfr, verify_nfr_equivalence, verify_tau, verify_theta
from .generators import FIXTURE_DOCUMENTS
from .morphisms import is_cba_hom, is_kripke_hom, is_mkf_hom, is_modal_hom, is_nfr_hom

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2

FUNCTORS = ("G", "F", "N", "H", "J", "K", "M", "L", "U", "thomason-G", "thomason-F")
CATEGORIES = ("kripke", "mkf", "nfr", "cama", "cba")
ROUNDTRIPS = ("tau", "theta", "nfr-equiv", "cama-nfr")
SUITES = ("counterexamples", "tau", "theta", "nfr-equiv", "cama-nfr", "lemma", "corollary", "adjoints", "non-normal")


class UsageError(Exception):
    pass


def _kappa(text: str) -> Kappa:
    try:
        return Kappa.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read(source: str, stdin) -> Any:
    if source.startswith("fx:"):
        name = source[3:]
        if name not in FIXTURE_DOCUMENTS:
            raise UsageError(f"unknown fixture {name!r}; known: {sorted(FIXTURE_DOCUMENTS)}")
        return FIXTURE_DOCUMENTS[name]()
    if source == "-":
        text = stdin.read()
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {source}: {exc.strerror}") from None
    return parse_document(text)


def _expect(doc, types, what: str):
    if not isinstance(doc, types):
        names = " or ".join(t.__name__ for t in (types if isinstance(types, tuple) else (types,)))
        raise UsageError(f"{what} must be {names}, got {type(doc).__name__}")
    return doc


def _labels_of(doc) -> tuple[str, ...]:
    return doc.atoms if isinstance(doc, BoxAlgebra) else doc.worlds


def _world_map(m, src, dst) -> tuple[int, ...]:
    if isinstance(m, tuple):
        if len(m) != len(_labels_of(src)) or any(not 0 <= y < len(_labels_of(dst)) for y in m):
            raise UsageError("fixture map does not fit the given structures")
        return m
    _expect(m, MapDocument, "map")
    return m.world_map(_labels_of(src), _labels_of(dst))


# -- commands ----------------------------------------------------------------

def cmd_apply(args, stdin) -> tuple[int, Any]:
    doc = _read(args.input, stdin)
    name = args.functor
    try:
        if name in ("G", "N", "L", "U"):
            M = _expect(doc, MRFrame, f"{name} input")
            out = {"G": fn.G_obj, "N": fn.N_obj, "L": fn.L_obj, "U": fn.U_obj}[name](M)
        elif name in ("F", "J", "thomason-F"):
            A = _expect(doc, BoxAlgebra, f"{name} input")
            out = {"F": fn.F_obj, "J": fn.J_obj, "thomason-F": fn.thomason_F_obj}[name](A)
        elif name in ("H", "K"):
            Z = _expect(doc, NFrame, f"{name} input")
            out = fn.H_obj(Z, args.kappa) if name == "H" else fn.K_obj(Z)
        else:
            K = _expect(doc, KripkeFrame, f"{name} input")
            out = fn.M_obj(K) if name == "M" else fn.thomason_G_obj(K)
    except (ValueError, CapError) as exc:
        # precondition failures are verdicts about the input, not usage errors
        return EXIT_FALSE, {"command": "apply", "functor": name, "verdict": False, "error": str(exc)}
    return EXIT_OK, out


def cmd_check_hom(args, stdin) -> tuple[int, dict]:
    m = _read(args.map, stdin)
    src = _read(args.source, stdin)
    dst = _read(args.target, stdin)
    cat = args.category
    if cat in ("cama", "cba"):
        A = _expect(src, BoxAlgebra, "source")
        B = _expect(dst, BoxAlgebra, "target")
        h = _expect(m, MapDocument, "map").element_map(A, B)
        rep = is_modal_hom(h) if cat == "cama" else is_cba_hom(h)
    else:
        types = {"kripke": KripkeFrame, "mkf": MRFrame, "nfr": NFrame}[cat]
        _expect(src, types, "source")
        _expect(dst, types, "target")
        f = _world_map(m, src, dst)
        check = {"kripke": is_kripke_hom, "mkf": is_mkf_hom, "nfr": is_nfr_hom}[cat]
        rep = check(f, src, dst)
    report = {"command": "check-hom", "category": cat, **rep.as_dict()}
    return (EXIT_OK if rep else EXIT_FALSE), report


def cmd_roundtrip(args, stdin) -> tuple[int, dict]:
    doc = _read(args.input, stdin)
    kind, kappa = args.kind, args.kappa
    try:
        if kind == "tau":
            rep = verify_tau(_expect(doc, BoxAlgebra, "tau input"))
        elif kind == "theta":
            rep = verify_theta(_expect(doc, MRFrame, "theta input"))
        elif kind == "nfr-equiv":
            doc = _expect(doc, (MRFrame, NFrame), "nfr-equiv input")
            rep = verify_nfr_equivalence(M=doc, kappa=kappa) if isinstance(doc, MRFrame) else \
                verify_nfr_equivalence(Z=doc, kappa=kappa)
        else:
            doc = _expect(doc, (BoxAlgebra, NFrame), "cama-nfr input")
            rep = verify_cama_nfr(A=doc, kappa=kappa) if isinstance(doc, BoxAlgebra) else \
                verify_cama_nfr(Z=doc, kappa=kappa)
    except ValueError as exc:
        return EXIT_FALSE, {"command": "roundtrip", "kind": kind, "verdict": False, "error": str(exc)}
    report = {"command": "roundtrip", "kind": kind, "kappa": str(kappa), **rep.as_dict()}
    return (EXIT_OK if rep.ok else EXIT_FALSE), report


def cmd_props(args, stdin) -> tuple[int, dict]:
    doc = _read(args.input, stdin)
    kappa = args.kappa
    report: dict[str, Any] = {"command": "props", "kappa": str(kappa)}
    if isinstance(doc, BoxAlgebra):
        cls = validate_algebra(doc, kappa)
        report.update(kind="cama", normal=cls.normal, **cls.as_dict(doc.atoms))
    elif isinstance(doc, MRFrame):
        report.update(
            kind="mkf",
            directed=check_kappa_dd(doc, kappa).as_dict(),
            completely_directed=is_all_directed(doc),
            relations=len(doc.rels),
        )
    elif isinstance(doc, NFrame):
        report.update(kind="nfr", complete=check_nfr(doc, kappa).as_dict())
    elif isinstance(doc, KripkeFrame):
        report.update(kind="kripke", pairs=bin(doc.rel).count("1"))
    else:
        raise UsageError("props expects a frame or an algebra, not a map")
    return EXIT_OK, report


def cmd_counterexamples(args, stdin) -> tuple[int, dict]:
    report = {"command": "counterexamples", **suites.counterexamples()}
    return (EXIT_OK if report["ok"] else EXIT_FALSE), report


def cmd_suite(args, stdin) -> tuple[int, dict]:
    caps = {"max_worlds": args.max_worlds, "max_relations": args.max_relations}
    if args.only is None:
        body = suites.run_all(args.seed, args.count, max_atoms=args.max_atoms, **caps)
    else:
        n = args.count
        runners = {
            "counterexamples": lambda: suites.counterexamples(),
            "tau": lambda: suites.tau_suite(args.max_atoms),
            "theta": lambda: suites.theta_suite(args.seed, n if n is not None else 1000, **caps),
            "nfr-equiv": lambda: suites.nfr_equivalence_suite(args.seed, n if n is not None else 500, **caps),
            "cama-nfr": suites.cama_nfr_suite,
            "lemma": suites.lemma_suite,
            "corollary": lambda: suites.corollary_suite(args.seed, n if n is not None else 200, **caps),
            "adjoints": lambda: suites.adjoint_suite(args.max_atoms),
            "non-normal": suites.nonnormal_witness,
        }
        result = runners[args.only]()
        body = {"seed": args.seed, "suites": [result], "ok": result["ok"]}
    report = {"command": "suite", **body}
    return (EXIT_OK if report["ok"] else EXIT_FALSE), report


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field from reports")
    common.add_argument("-o", "--output", help="write the result here instead of stdout")

    parser = argparse.ArgumentParser(prog="modal-duality", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("apply", parents=[common], help="apply a functor's object part")
    p.add_argument("functor", choices=FUNCTORS)
    p.add_argument("input")
    p.add_argument("--kappa", type=_kappa, default=None, help="check completeness before H")
    p.set_defaults(run=cmd_apply)

    p = sub.add_parser("check-hom", parents=[common], help="check a morphism")
    p.add_argument("category", choices=CATEGORIES)
    p.add_argument("map")
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(run=cmd_check_hom)

    p = sub.add_parser("roundtrip", parents=[common], help="verify a unit or counit isomorphism")
    p.add_argument("kind", choices=ROUNDTRIPS)
    p.add_argument("input")
    p.add_argument("--kappa", type=_kappa, default=Kappa(), help="positive integer k or 'all'")
    p.set_defaults(run=cmd_roundtrip)

    p = sub.add_parser("props", parents=[common], help="classify a frame or algebra")
    p.add_argument("input")
    p.add_argument("--kappa", type=_kappa, default=Kappa())
    p.set_defaults(run=cmd_props)

    p = sub.add_parser("counterexamples", parents=[common], help="reproduce the three functoriality failures")
    p.set_defaults(run=cmd_counterexamples)

    p = sub.add_parser("suite", parents=[common], help="run the theorem suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=None, help="cases per seeded suite")
    p.add_argument("--max-worlds", type=int, default=3)
    p.add_argument("--max-relations", type=int, default=3)
    p.add_argument("--max-atoms", type=int, default=3)
    p.add_argument("--only", choices=SUITES)
    p.set_defaults(run=cmd_suite)
    return parser


def _render(result: Any, stamp: bool) -> str:
    if isinstance(result, (KripkeFrame, MRFrame, NFrame, BoxAlgebra, MapDocument)):
        return serialize_document(result)
    if stamp:
        result = {**result, "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds")}
    return dumps(result)


def run_command(argv: Sequence[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, result = args.run(args, stdin)
    except (UsageError, DocumentError, CapError, ValueError) as exc:
        stderr.write(dumps({"command": args.command, "error": str(exc)}))
        return EXIT_USAGE
    text = _render(result, not args.no_timestamp)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
