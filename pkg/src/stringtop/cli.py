"""Command line front end.

Every verb prints a deterministic JSON report (keys sorted, fixed basis
order).  Dimension tables can also be written as CSV.  Exit status is 0 on
success, 1 when a validation or property check fails and 2 on usage errors,
unreadable or malformed inputs and window overflow.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .algebra import validate_dga
from .checks import DEFAULT_SEED, run_suite
from .conf import compare_up_to_sign, geometric_coproduct_pipeline
from .fields import Field
from .frobenius import (BUILTIN, FrobeniusAlgebra, builtin_model, from_spec_file,
                        shipped_model_path, validate_frobenius)
from .hochschild import CochainTensor, HochschildElement, TruncationOverflow
from .homology import (WindowError, hochschild_chain_complex, hochschild_cochain_complex,
                       homology, tate_complex)
from .lens import LensSpace, coproduct_invariance_search, rho_coproduct, thm_lens_scan
from .products import cup, gamma, gh_star


class UsageError(Exception):
    pass


def load_model(spec: str, field: str | None = None) -> FrobeniusAlgebra:
    """A model from a JSON file, or one of the shipped models by short name."""
    path = Path(spec)
    if path.is_file():
        try:
            F = from_spec_file(path)
        except OSError as exc:
            raise UsageError(f"cannot read {spec}: {exc}") from exc
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    elif spec in BUILTIN:
        F = builtin_model(spec)
    else:
        raise UsageError(f"{spec}: no such file and not a shipped model ({', '.join(BUILTIN)})")
    if field is not None:
        F = F.change_field(_field(field))
    return F


def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON ({exc})") from exc


def _chain(F: FrobeniusAlgebra, path: str) -> HochschildElement:
    x = HochschildElement.from_json(F.field, _read_json(path))
    _check_labels(F, [l for w, m in x.keys() for l in w + (m,)], path)
    return x


def _cochain(F: FrobeniusAlgebra, path: str) -> CochainTensor:
    f = CochainTensor.from_json(F.field, _read_json(path))
    _check_labels(F, [l for w, o in f.keys() for l in w + (o,)], path)
    return f


def _check_labels(F: FrobeniusAlgebra, labels: list[str], path: str) -> None:
    unknown = sorted(set(labels) - set(F.labels))
    if unknown:
        raise UsageError(f"{path}: unknown basis labels {unknown}")


def _emit(args: argparse.Namespace, payload: Any, table: list[tuple[int, int]] | None = None) -> None:
    if getattr(args, "format", "json") == "csv" and table is not None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "dim"])
        w.writerows(table)
        text = buf.getvalue()
    elif isinstance(payload, str):
        text = payload if payload.endswith("\n") else payload + "\n"
    else:
        text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _window(args: argparse.Namespace) -> range:
    if args.L < 1:
        raise UsageError("--L must be positive")
    if args.kmin > args.kmax:
        raise UsageError("--kmin must not exceed --kmax")
    return range(args.kmin, args.kmax + 1)


# verbs

def cmd_validate(args: argparse.Namespace) -> int:
    F = load_model(args.model, args.field)
    lines = []
    status = 0
    for what, found in (("dga", validate_dga(F.algebra)), ("frobenius", validate_frobenius(F))):
        if found:
            status = 1
            lines.append(f"{what}: {len(found)} violation(s)")
            lines.extend(f"  {v.axiom}: {v.detail}" for v in found[:20])
        else:
            lines.append(f"{what}: ok")
    _emit(args, "\n".join(lines))
    return status


def _homology_cmd(args: argparse.Namespace, build) -> int:
    F = load_model(args.model, args.field)
    degrees = _window(args)
    table = homology(build(F, args.L), degrees, force=args.force)
    report = {"model": F.name, "field": repr(F.field), "L": args.L, "degrees": table.to_json()}
    _emit(args, report, sorted(table.dims().items()))
    return 0


def cmd_hh(args: argparse.Namespace) -> int:
    return _homology_cmd(args, lambda F, L: hochschild_chain_complex(F, L, reduced=args.reduced))


def cmd_cohh(args: argparse.Namespace) -> int:
    return _homology_cmd(args, hochschild_cochain_complex)


def cmd_tate(args: argparse.Namespace) -> int:
    return _homology_cmd(args, tate_complex)


def cmd_cup(args: argparse.Namespace) -> int:
    F = load_model(args.model, args.field)
    out = cup(F.algebra, _cochain(F, args.f), _cochain(F, args.g), args.L)
    _emit(args, out.to_json())
    return 0


def cmd_star(args: argparse.Namespace) -> int:
    F = load_model(args.model, args.field)
    _emit(args, gh_star(F, _chain(F, args.a), _chain(F, args.b)).to_json())
    return 0


def cmd_gamma(args: argparse.Namespace) -> int:
    F = load_model(args.model, args.field)
    label = args.element or F.algebra.unit
    if label not in F.labels:
        raise UsageError(f"unknown basis label {label!r}")
    g = gamma(F, F.elt(label))
    top = F.top_label()
    _emit(args, {
        "element": label,
        "gamma": [{"label": l, "coeff": F.field.fmt(c)} for l, c in sorted(g.items())],
        "top": top,
        "euler_characteristic": F.field.fmt(F.euler_characteristic()),
    })
    return 0


def cmd_pipeline(args: argparse.Namespace) -> int:
    F = load_model(args.model, args.field)
    a, b = _chain(F, args.a), _chain(F, args.b)
    try:
        P = geometric_coproduct_pipeline(F, a, b)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    G = gh_star(F, b, a)
    agree = "exact" if P == G else ("up_to_sign" if compare_up_to_sign(P, G) is not None else "no")
    _emit(args, {"pipeline": P.to_json(), "star": G.to_json(), "agree": agree})
    return 0 if agree != "no" else 1


def cmd_axioms(args: argparse.Namespace) -> int:
    names = args.models or ["s2", "s3", "cp2", "s3xs3"]
    fields = args.fields.split(",")
    reports = []
    print(f"seed: {args.seed}", file=sys.stderr)
    for fl in fields:
        for name in names:
            F = load_model(name, fl)
            reports.append(run_suite(F, args.L, args.K, args.samples, args.seed))
    _emit(args, {"seed": args.seed, "ok": all(r.ok for r in reports),
                 "reports": [r.to_json() for r in reports]})
    return 0 if all(r.ok for r in reports) else 1


def cmd_models(args: argparse.Namespace) -> int:
    if args.export:
        dest = Path(args.export)
        dest.mkdir(parents=True, exist_ok=True)
        for name in BUILTIN:
            (dest / f"{name}.json").write_text(shipped_model_path(name).read_text(encoding="utf-8"),
                                               encoding="utf-8")
    _emit(args, {"models": list(BUILTIN)})
    return 0


def cmd_lens_coproduct(args: argparse.Namespace) -> int:
    L = _lens(args.p, args.q)
    x = rho_coproduct(L, args.l, args.m)
    _emit(args, {"p": L.p, "q": L.q, "l": args.l, "m": args.m, "beta": x.to_json()})
    return 0


def cmd_lens_invariance(args: argparse.Namespace) -> int:
    _lens(args.p, args.q1)
    _lens(args.p, args.q2)
    r = coproduct_invariance_search(args.p, args.q1, args.q2, args.orientations)
    _emit(args, r.to_json())
    return 0


def cmd_lens_scan(args: argparse.Namespace) -> int:
    if args.pmax < 2:
        raise UsageError("--pmax must be at least 2")
    rep = thm_lens_scan(args.pmax, args.threads, args.orientations)
    _emit(args, rep.to_json())
    return 0 if not rep.counterexamples else 1


def _lens(p: int, q: int) -> LensSpace:
    try:
        return LensSpace(p, q)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _threads() -> int:
    raw = os.environ.get("ST_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"ST_THREADS must be an integer, got {raw!r}") from None
    if n < 1:
        raise UsageError("ST_THREADS must be positive")
    return n


# parser

class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stringtop", description="Exact string topology computations on Frobenius models.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(sp, model=True):
        if model:
            sp.add_argument("model", help="model JSON file or shipped name (" + ", ".join(BUILTIN) + ")")
            sp.add_argument("--field", help='override the field: "Q" or "Fp:<p>"')
        sp.add_argument("--out", help="write the report here instead of stdout")

    sp = sub.add_parser("validate", help="check dga and Frobenius axioms")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    for verb, func, doc in (("hh", cmd_hh, "Hochschild homology"),
                            ("cohh", cmd_cohh, "Hochschild cohomology"),
                            ("tate", cmd_tate, "Tate-Hochschild cohomology")):
        sp = sub.add_parser(verb, help=doc)
        common(sp)
        sp.add_argument("--L", type=int, default=6, help="word length bound")
        sp.add_argument("--kmin", type=int, default=-6)
        sp.add_argument("--kmax", type=int, default=6)
        sp.add_argument("--force", action="store_true", help="also report degrees where truncation is not exact")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        if verb == "hh":
            sp.add_argument("--reduced", action="store_true")
        sp.set_defaults(func=func)

    sp = sub.add_parser("cup", help="cup product of two cochains")
    common(sp)
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp.add_argument("--L", type=int, default=None, help="drop output words longer than this")
    sp.set_defaults(func=cmd_cup)

    sp = sub.add_parser("star", help="coproduct-dual product a * b of two chains")
    common(sp)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.set_defaults(func=cmd_star)

    sp = sub.add_parser("gamma", help="gamma of a basis element and the Euler characteristic")
    common(sp)
    sp.add_argument("--element", default=None, help="basis label (default: the unit)")
    sp.set_defaults(func=cmd_gamma)

    sp = sub.add_parser("pipeline", help="configuration-space coproduct of two chains, compared with star")
    common(sp)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.set_defaults(func=cmd_pipeline)

    sp = sub.add_parser("axioms", help="run the exact axiom suite")
    sp.add_argument("models", nargs="*", help="models (default: s2 s3 cp2 s3xs3)")
    sp.add_argument("--fields", default="Q,Fp:2,Fp:7")
    sp.add_argument("--L", type=int, default=4)
    sp.add_argument("--K", type=int, default=12, help="degree window |k| <= K")
    sp.add_argument("--samples", type=int, default=None, help="cap on sampled pairs/triples per check")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common(sp, model=False)
    sp.set_defaults(func=cmd_axioms)

    sp = sub.add_parser("models", help="list or export the shipped model files")
    sp.add_argument("--export", metavar="DIR")
    common(sp, model=False)
    sp.set_defaults(func=cmd_models)

    lens = sub.add_parser("lens", help="lens space coproduct computations")
    lsub = lens.add_subparsers(dest="lens_verb", required=True, parser_class=_Parser)
    sp = lsub.add_parser("coproduct")
    for flag in ("--p", "--q", "--l", "--m"):
        sp.add_argument(flag, type=int, required=True)
    common(sp, model=False)
    sp.set_defaults(func=cmd_lens_coproduct)
    sp = lsub.add_parser("invariance")
    for flag in ("--p", "--q1", "--q2"):
        sp.add_argument(flag, type=int, required=True)
    sp.add_argument("--orientations", choices=("preserving", "both"), default="preserving",
                    help="degree-one equivalences only, or also degree -1")
    common(sp, model=False)
    sp.set_defaults(func=cmd_lens_invariance)
    sp = lsub.add_parser("scan")
    sp.add_argument("--pmax", type=int, required=True)
    sp.add_argument("--orientations", choices=("preserving", "both"), default="preserving",
                    help="degree-one equivalences only, or also degree -1")
    sp.add_argument("--threads", type=int, default=None, help="worker processes (default: ST_THREADS or 1)")
    common(sp, model=False)
    sp.set_defaults(func=cmd_lens_scan)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "threads", 0) is None:
            args.threads = _threads()
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (WindowError, TruncationOverflow) as exc:
        print(f"error: window overflow: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
