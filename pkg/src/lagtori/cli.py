"""Command-line front end.

Exit codes: 0 success, 1 falsification or internal invariant violation,
2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, TextIO

from . import braid as braid_mod
from .certify import (
    CSV_COLUMNS,
    Certificate,
    CertificateError,
    certificate,
    divergence_witness,
    grid_params,
    sw_map,
)
from .family import (
    FamilyError,
    LinkFamilyParams,
    alexander_torus_knot,
    homology_class,
    linking_matrix,
    p_poly,
)
from .laurent import LaurentError, LaurentPoly, symmetrize, term_count

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _threads() -> int:
    raw = os.environ.get("LAGTORI_THREADS", "")
    try:
        n = int(raw) if raw else (os.cpu_count() or 1)
    except ValueError:
        raise UsageError(f"LAGTORI_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


@contextmanager
def _output(path: str | None) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _fmt(args) -> str:
    return getattr(args, "format", None) or "table"


def _write_poly(poly: LaurentPoly, args, count_only: bool = False) -> None:
    fmt = _fmt(args)
    with _output(getattr(args, "out", None)) as out:
        if count_only:
            n = term_count(poly)
            if fmt == "json":
                out.write(json.dumps({"term_count": n}) + "\n")
            elif fmt == "csv":
                out.write(f"term_count\n{n}\n")
            else:
                out.write(f"{n}\n")
            return
        if fmt == "json":
            out.write(poly.to_json() + "\n")
        elif fmt == "csv":
            w = csv.writer(out, lineterminator="\n")
            w.writerow(list(poly.variables) + ["coeff"])
            for e, c in poly.items():
                w.writerow(list(e) + [str(c)])
        else:
            out.write(poly.to_text() + "\n")


def _params(args) -> LinkFamilyParams:
    if args.p is None or args.q is None:
        raise UsageError("both --p and --q are required")
    try:
        return LinkFamilyParams(args.p, args.q)
    except FamilyError as exc:
        raise UsageError(str(exc)) from None


def _read_text_arg(value: str) -> str:
    path = Path(value)
    try:
        if path.is_file():
            return path.read_text(encoding="utf-8")
    except OSError:
        pass
    return value


# -- commands -------------------------------------------------------------


def cmd_alexander(args) -> int:
    if args.kind == "torus":
        try:
            poly = alexander_torus_knot(args.a, args.b)
        except FamilyError as exc:
            raise UsageError(f"{type(exc).__name__}: {exc}") from None
    else:
        try:
            w = braid_mod.parse_braid(_read_text_arg(args.braid))
            poly = braid_mod.alexander_of_knot_closure(w)
        except braid_mod.BraidError as exc:
            raise UsageError(f"{type(exc).__name__}: {exc}") from None
    _write_poly(poly, args)
    return EXIT_OK


def cmd_ppoly(args) -> int:
    poly = p_poly(_params(args))
    if args.symmetrize:
        poly = symmetrize(poly)
    _write_poly(poly, args, count_only=args.count)
    return EXIT_OK


def _emit_certificates(certs: Iterator[Certificate], args) -> int:
    fmt = _fmt(args)
    ok = True
    failures: list[str] = []
    with _output(getattr(args, "out", None)) as out:
        if fmt == "csv":
            w = csv.writer(out, lineterminator="\n")
            w.writerow(CSV_COLUMNS)
        elif fmt == "table":
            out.write(f"{'p':>4} {'q':>4} {'terms_P':>8} {'bound':>6}  verified\n")
        for c in certs:
            if fmt == "json":
                out.write(c.to_json() + "\n")
            elif fmt == "csv":
                w.writerow(c.csv_row())
            else:
                out.write(f"{c.p:>4} {c.q:>4} {c.exact_terms_P:>8} {c.bound:>6}  {'yes' if c.verified else 'NO'}\n")
            out.flush()
            if not c.verified:
                ok = False
                failures.append(f"p={c.p} q={c.q}: " + "; ".join(c.failures))
    if not ok:
        print("FALSIFIED:", file=sys.stderr)
        for f in failures:
            print("  " + f, file=sys.stderr)
        return EXIT_FALSIFIED
    return EXIT_OK


def cmd_certify(args) -> int:
    mode = getattr(args, "mode", None)
    if mode == "grid":
        if args.pmax < 1 or (args.qmax is not None and args.qmax < 1):
            raise UsageError("--pmax and --qmax must be positive")
        params = grid_params(args.pmax, args.qmax)
        pool = ThreadPoolExecutor(max_workers=_threads())
        try:
            # map() yields in submission order, so rows stay in (p, q) order
            certs = pool.map(lambda pr: certificate(pr, strict=False), params)
            return _emit_certificates(certs, args)
        finally:
            pool.shutdown(wait=True, cancel_futures=True)
    if mode == "witness":
        if args.q < 1 or args.min_classes < 1:
            raise UsageError("--q and --min-classes must be positive")
        params = divergence_witness(args.q, args.min_classes)
        cert = certificate(params, strict=False)
        if cert.bound < args.min_classes:
            cert = Certificate(cert.params, cert.exact_terms_P, cert.bound, cert.survivors,
                               cert.cancellation_witness, False, cert.failures + ("bound below N",))
        return _emit_certificates(iter([cert]), args)
    return _emit_certificates(iter([certificate(_params(args), strict=False)]), args)


def cmd_braid(args) -> int:
    if args.action == "verify-gamma":
        p = args.p
        if p < 2:
            raise UsageError("p >= 2 required")
        g = braid_mod.gamma_braid(p)
        ref = braid_mod.torus_braid(p, p + 1)
        cycles = braid_mod.closure_cycles(g)
        msgs = []
        if len(cycles) != 1:
            msgs.append(f"closure has {len(cycles)} components")
        elif braid_mod.alexander_of_knot_closure(g) != braid_mod.alexander_of_knot_closure(ref):
            msgs.append("Alexander polynomial differs from T(p,p+1)")
        # g lives on one extra strand, i.e. one positive stabilization
        if g.exponent_sum() != ref.exponent_sum() + 1:
            msgs.append(f"exponent sum {g.exponent_sum()} != {ref.exponent_sum() + 1}")
        with _output(getattr(args, "out", None)) as out:
            if msgs:
                out.write(f"MISMATCH: gamma_braid({p}) = {g}: " + "; ".join(msgs) + "\n")
                return EXIT_FALSIFIED
            out.write(f"OK: closure = T({p},{p + 1})\n")
        return EXIT_OK
    if args.action == "burau":
        try:
            w = braid_mod.parse_braid(_read_text_arg(args.braid))
        except braid_mod.BraidError as exc:
            raise UsageError(str(exc)) from None
        M = braid_mod.burau_reduced(w)
        with _output(getattr(args, "out", None)) as out:
            if _fmt(args) == "json":
                out.write(json.dumps([[e.to_json_obj() for e in row] for row in M], separators=(",", ":")) + "\n")
            else:
                for row in M:
                    out.write(" | ".join(e.to_text() for e in row) + "\n")
        return EXIT_OK
    if args.action == "gamma":
        if args.p < 2:
            raise UsageError("p >= 2 required")
        with _output(getattr(args, "out", None)) as out:
            out.write(braid_mod.gamma_braid(args.p).to_text() + "\n")
        return EXIT_OK
    raise UsageError(f"unknown braid action {args.action}")


def cmd_linking(args) -> int:
    lk = linking_matrix(_params(args))
    with _output(getattr(args, "out", None)) as out:
        if _fmt(args) == "json":
            out.write(json.dumps({"components": list(lk.names), "matrix": lk.matrix()}) + "\n")
        elif _fmt(args) == "csv":
            w = csv.writer(out, lineterminator="\n")
            w.writerow([""] + list(lk.names))
            for name, row in zip(lk.names, lk.matrix()):
                w.writerow([name] + ["-" if x is None else x for x in row])
        else:
            for row in lk.matrix():
                out.write(" ".join(f"{'-' if x is None else x:>3}" for x in row) + "\n")
    return EXIT_OK


def cmd_homology(args) -> int:
    h = homology_class(_params(args))
    with _output(getattr(args, "out", None)) as out:
        if _fmt(args) == "json":
            out.write(json.dumps({"mu_K": h.a, "mu_M": h.b}) + "\n")
        elif _fmt(args) == "csv":
            out.write(f"mu_K,mu_M\n{h.a},{h.b}\n")
        else:
            out.write(f"[gamma] = {h.a} [mu(K)] + {h.b} [mu(M)]\n")
    return EXIT_OK


def cmd_sw_map(args) -> int:
    if args.poly is not None:
        try:
            poly = LaurentPoly.from_json(_read_text_arg(args.poly))
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"malformed polynomial JSON: {exc}") from None
    else:
        poly = p_poly(_params(args))
    mapped = sw_map(symmetrize(poly))
    if term_count(mapped) != term_count(poly):
        print("term count changed under the squaring map", file=sys.stderr)
        return EXIT_FALSIFIED
    _write_poly(mapped, args, count_only=args.count)
    return EXIT_OK


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "table"], default=argparse.SUPPRESS)
    common.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS)

    ap = argparse.ArgumentParser(prog="lagtori", parents=[common],
                                 description="Exact Alexander-polynomial certificates for the tori R_{p,q}.")
    sub = ap.add_subparsers(dest="command", required=True)

    al = sub.add_parser("alexander", help="Alexander polynomials of torus knots and braid closures")
    al_sub = al.add_subparsers(dest="kind", required=True)
    tor = al_sub.add_parser("torus", parents=[common])
    tor.add_argument("--a", type=int, required=True)
    tor.add_argument("--b", type=int, required=True)
    clo = al_sub.add_parser("closure", parents=[common])
    clo.add_argument("--braid", required=True, help='file or literal, e.g. "strands=3; 1,2,1"')
    al.set_defaults(func=cmd_alexander)

    pp = sub.add_parser("ppoly", parents=[common], help="expanded P_{p,q}(t)")
    pp.add_argument("--p", type=int, required=True)
    pp.add_argument("--q", type=int, required=True)
    pp.add_argument("--count", action="store_true", help="print only the number of terms")
    pp.add_argument("--symmetrize", action="store_true")
    pp.set_defaults(func=cmd_ppoly)

    ce = sub.add_parser("certify", parents=[common], help="term-count certificates")
    ce.add_argument("--p", type=int)
    ce.add_argument("--q", type=int)
    ce_sub = ce.add_subparsers(dest="mode")
    gr = ce_sub.add_parser("grid", parents=[common])
    gr.add_argument("--pmax", type=int, required=True)
    gr.add_argument("--qmax", type=int)
    wi = ce_sub.add_parser("witness", parents=[common])
    wi.add_argument("--q", type=int, required=True)
    wi.add_argument("--min-classes", type=int, required=True, dest="min_classes")
    ce.set_defaults(func=cmd_certify)

    br = sub.add_parser("braid", help="braid words and the gamma_p identification")
    br_sub = br.add_subparsers(dest="action", required=True)
    vg = br_sub.add_parser("verify-gamma", parents=[common])
    vg.add_argument("--p", type=int, required=True)
    bu = br_sub.add_parser("burau", parents=[common])
    bu.add_argument("--braid", required=True)
    gm = br_sub.add_parser("gamma", parents=[common])
    gm.add_argument("--p", type=int, required=True)
    br.set_defaults(func=cmd_braid)

    for name, func in (("linking", cmd_linking), ("homology", cmd_homology)):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
        sp.set_defaults(func=func)

    sw = sub.add_parser("sw-map", parents=[common], help="square every variable of a symmetrized polynomial")
    sw.add_argument("--poly", help="polynomial JSON (file or literal)")
    sw.add_argument("--p", type=int)
    sw.add_argument("--q", type=int)
    sw.add_argument("--count", action="store_true")
    sw.set_defaults(func=cmd_sw_map)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CertificateError, LaurentError, ArithmeticError, AssertionError) as exc:
        print(f"internal invariant violation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED


if __name__ == "__main__":
    sys.exit(main())
