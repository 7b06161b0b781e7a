"""Command-line front end.

Subcommands: classify, crosscheck, validate, snf, hoang, report.
Exit codes: 0 ok, 1 input error, 2 unsupported combination, 3 cross-check
mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import classify2d, cohomology, complexes, dim3, words, xmod, zlinalg
from .classify2d import UnsupportedTargetError
from .complexes import CWComplex, ComplexError
from .dim3 import Dim3Error
from .xmod import ModuleXMod, XModError
from .zlinalg import IntMatrix

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNSUPPORTED = 2
EXIT_MISMATCH = 3


class InputError(Exception):
    pass


class UnsupportedError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        raise InputError(message)


# ---------------------------------------------------------------------------
# Source / target resolution
# ---------------------------------------------------------------------------

_CATALOG_PARAMS = {
    "circle_wedge": ("n",),
    "sphere2": (),
    "torus2": (),
    "rp2": (),
    "genus_surface": ("g",),
    "torus_knot": ("p", "q"),
    "klein_bottle": (),
    "s1_wedge_s2": (),
    "torus3": (),
    "s1_x_s2": (),
}


def _looks_like_path(spec: str) -> bool:
    return spec.endswith(".json") or os.sep in spec or os.path.isfile(spec)


def resolve_source(spec: str) -> CWComplex:
    if _looks_like_path(spec):
        try:
            return complexes.load(spec)
        except OSError as err:
            raise InputError(f"cannot read {spec}: {err}") from None
    name, _, tail = spec.partition(":")
    if name not in _CATALOG_PARAMS:
        raise InputError(f"unknown source {spec!r}")
    keys = _CATALOG_PARAMS[name]
    values = [v for v in tail.split(",") if v] if tail else []
    if len(values) != len(keys):
        raise InputError(
            f"source {name} expects parameters {','.join(keys) or '(none)'}"
        )
    try:
        params = {k: int(v) for k, v in zip(keys, values)}
    except ValueError:
        raise InputError(f"non-integer parameter in {spec!r}") from None
    return complexes.catalog(name, **params)


def resolve_target(spec: str):
    """Returns ('xmod', ModuleXMod) or ('special', (name, p, q))."""
    if _looks_like_path(spec):
        try:
            return "xmod", xmod.load_target(spec)
        except OSError as err:
            raise InputError(f"cannot read {spec}: {err}") from None
    name, _, tail = spec.partition(":")
    if name in ("rp2", "sphere2"):
        if tail:
            raise InputError(f"target {name} takes no parameters")
        return "xmod", xmod.target_catalog(name)
    if name == "trivial":
        values = tail.split(",") if tail else []
        if len(values) not in (1, 2):
            raise InputError("target trivial expects parameters r[,k]")
        try:
            r = int(values[0])
            k = int(values[1]) if len(values) == 2 else 0
        except ValueError:
            raise InputError(f"non-integer parameter in {spec!r}") from None
        return "xmod", xmod.target_catalog("trivial", r=r, k=k)
    if name == "so3":
        if tail:
            raise InputError("target so3 takes no parameters")
        return "special", ("so3", 2, 1)
    if name == "lens":
        values = tail.split(",") if tail else []
        if len(values) != 2:
            raise InputError("target lens expects parameters p,q")
        try:
            p, q = int(values[0]), int(values[1])
        except ValueError:
            raise InputError(f"non-integer parameter in {spec!r}") from None
        if p < 2 or q < 1:
            raise InputError("lens target needs p >= 2, q >= 1")
        return "special", (f"lens({p},{q})", p, q)
    raise InputError(f"unknown target {spec!r}")


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _fmt_label(label) -> str:
    return str(label[0]) if len(label) == 1 else "(" + ",".join(map(str, label)) + ")"


def _fmt_vec(vec) -> str:
    return "[" + ",".join(map(str, vec)) + "]"


def render_classification_text(res: classify2d.SectorClassification) -> str:
    lines = [
        f"{res.mode} classes of maps {res.source} -> {res.target}",
        f"coordinates: phi1 per generator {list(res.layout.generators)}"
        f" ({res.layout.k} coords each), phi2 per 2-cell {list(res.layout.two_cells)}"
        f" ({res.layout.r} coords each)",
    ]
    for sector in res.sectors:
        phi1 = " ".join(f"{g}={_fmt_label(l)}" for g, l in sector.phi1.items())
        lines.append(f"sector {phi1 or '(trivial pi_1)'}: {sector.based_group}")
        reps = sector.representatives()
        if sector.is_finite:
            lines.append("  representatives: " + " ".join(_fmt_vec(v) for v in reps))
            if sector.free_orbits is not None:
                lines.append(
                    "  free orbits: "
                    + " ".join("{" + ",".join(map(str, o)) + "}" for o in sector.free_orbits)
                )
        else:
            gens = sector.free_generators()
            lines.append(
                "  representatives: base "
                + " ".join(_fmt_vec(v) for v in reps)
                + " + integer multiples of "
                + " ".join(_fmt_vec(v) for v in gens)
            )
            if res.mode == "free":
                for label, matrix, shift in _free_action_maps(sector):
                    lines.append(
                        f"  free identification by loop {_fmt_label(label)}:"
                        f" class c -> {_fmt_affine(matrix, shift)}"
                    )
    total = res.total_free_classes()
    if res.mode == "free" and total is not None:
        lines.append(f"total free classes: {total}")
    return "\n".join(lines)


def _free_action_maps(sector: classify2d.SectorResult):
    quot = sector.quotient
    zero = tuple(0 for _ in quot.factors)
    out = []
    for label in sector.target_data.labels():
        if all(c == 0 for c in label):
            continue
        base = quot.class_coords(sector.act(label, quot.representative(zero)))
        cols = []
        for i in range(len(quot.factors)):
            e = tuple(1 if j == i else 0 for j in range(len(quot.factors)))
            img = quot.class_coords(sector.act(label, quot.representative(e)))
            cols.append(tuple(a - b for a, b in zip(img, base)))
        out.append((label, cols, base))
    return out


def _fmt_affine(cols, shift) -> str:
    n = len(shift)
    terms = []
    for i in range(n):
        row = " + ".join(
            f"{cols[j][i]}*c{j}" for j in range(n) if cols[j][i]
        )
        const = shift[i]
        expr = row or "0"
        if const:
            expr += f" + {const}"
        terms.append(expr)
    return "(" + ", ".join(terms) + ")"


def render_s2_text(res: dim3.S2Classification) -> str:
    lines = [
        f"classes of maps {res.source} -> sphere2 (based = free: simply connected target)",
        f"sectors are phi2 assignments to 2-cells {list(res.layout.two_cells)};"
        " within each sector classes differ by phi3 on "
        + str(list(res.layout.three_cells)),
    ]
    for sector in res.sectors:
        phi2 = " ".join(f"{c}={v}" for c, v in sector.phi2.items())
        lines.append(f"sector {phi2}: {sector.group}")
    lines.append("(sectors outside the sweep follow the same lattice rule)")
    return "\n".join(lines)


def render_special_text(res: cohomology.SpecialCaseResult, source: str, target: str) -> str:
    lines = [
        f"classes of maps {source} -> {target}"
        f" (target pi_1 invariant factors {list(res.pi1_factors)}, pi_3 = Z)",
        f"{len(res.sectors)} sectors (homomorphisms of fundamental groups):",
    ]
    for sector in res.sectors:
        phi1 = " ".join(f"{g}={_fmt_label(l)}" for g, l in sector.phi1.items())
        lines.append(f"  sector {phi1}: {sector.group}")
    if res.action_is_trivial:
        lines.append("action on pi_3 is trivial: free classes = based classes")
    return "\n".join(lines)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    M = resolve_source(args.source)
    kind, target = resolve_target(args.target)
    mode = "free" if args.free else "based"

    if kind == "xmod":
        if M.dim <= 2:
            res = (
                classify2d.classify_free(M, target)
                if mode == "free"
                else classify2d.classify_based(M, target)
            )
            text = (
                json.dumps(res.to_json(), indent=2)
                if args.format == "json"
                else render_classification_text(res)
            )
            _emit(text, args.out)
            return EXIT_OK
        if target.name == "sphere2":
            res = dim3.classify_s2(M, sweep=args.sweep)
            text = (
                json.dumps(res.to_json(), indent=2)
                if args.format == "json"
                else render_s2_text(res)
            )
            _emit(text, args.out)
            return EXIT_OK
        raise UnsupportedError(
            f"dimension-3 source with target {target.name or 'file'} is not supported"
        )

    name, p, _q = target
    if M.dim != 3:
        raise UnsupportedError(f"target {name} needs a 3-dimensional source")
    res = cohomology.special_case_classify(M, [p], 1)
    text = (
        json.dumps(res.to_json(), indent=2)
        if args.format == "json"
        else render_special_text(res, M.name or args.source, name)
    )
    _emit(text, args.out)
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    M = resolve_source(args.source)
    kind, target = resolve_target(args.target)
    lines = []
    mismatches = 0

    if kind == "xmod" and M.dim <= 2:
        data = classify2d.TargetData(target)
        res = classify2d.classify_based(M, target)
        for sector in res.sectors:
            coeffs = cohomology.CoefficientModule.for_target_sector(data, sector.phi1)
            oracle = cohomology.twisted_second_cohomology(M, coeffs)
            ok = oracle == sector.based_group
            mismatches += 0 if ok else 1
            phi1 = " ".join(f"{g}={_fmt_label(l)}" for g, l in sector.phi1.items())
            lines.append(
                f"sector {phi1 or '(trivial)'}: lattice {sector.based_group}"
                f" vs cohomology {oracle} -> {'match' if ok else 'MISMATCH'}"
            )
    elif kind == "xmod" and M.dim == 3 and target.name == "sphere2":
        cup = (
            dim3.CupData.from_json(_read_json(args.cup))
            if args.cup
            else dim3.cup_preset(M.name or "")
        )
        names = M.two_cell_names()
        import itertools as _it

        for combo in _it.product(range(-args.sweep, args.sweep + 1), repeat=len(names)):
            phi2 = dict(zip(names, combo))
            group, _ = dim3.sector_group_s2(M, phi2)
            oracle = dim3.pontrjagin_sector_group(cup, combo)
            ok = oracle == group
            mismatches += 0 if ok else 1
            lines.append(
                f"sector {combo}: crossed-square {group} vs cup-product {oracle}"
                f" -> {'match' if ok else 'MISMATCH'}"
            )
    else:
        raise UnsupportedError("no cross-check available for this source/target pair")

    lines.append(
        f"{'all sectors match' if not mismatches else f'{mismatches} sector(s) mismatch'}"
    )
    _emit("\n".join(lines), args.out)
    return EXIT_OK if not mismatches else EXIT_MISMATCH


def _read_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as err:
        raise InputError(f"cannot read {path}: {err}") from None
    except json.JSONDecodeError as err:
        raise InputError(f"bad JSON in {path}: {err}") from None


def cmd_validate(args) -> int:
    obj = _read_json(args.path)
    if "generators" in obj:
        M = complexes.loads(json.dumps(obj))
        print(f"ok: complex with cells {M.cell_counts()}")
        return EXIT_OK
    if "H_table" in obj:
        x = xmod.FiniteCrossedModule.from_json(obj)
        violations = xmod.validate(x)
    elif "G" in obj:
        target = ModuleXMod.from_json(obj, name=args.path)
        violations = xmod.validate(target)
    else:
        raise InputError("unrecognized file: expected a complex, target, or crossed module")
    if violations:
        for v in violations:
            print(f"violation: {v}")
        return EXIT_INPUT
    print("ok")
    return EXIT_OK


def cmd_snf(args) -> int:
    if args.matrix:
        try:
            data = json.loads(args.matrix)
        except json.JSONDecodeError as err:
            raise InputError(f"bad matrix literal: {err}") from None
    elif args.file:
        data = _read_json(args.file)
    else:
        raise InputError("snf needs --matrix or --file")
    try:
        A = IntMatrix(data)
    except (TypeError, ValueError) as err:
        raise InputError(f"bad matrix: {err}") from None
    dec = zlinalg.smith_normal_form(A)
    out = {
        "S": [list(r) for r in dec.S.data],
        "U": [list(r) for r in dec.U.data],
        "V": [list(r) for r in dec.V.data],
        "invariant_factors": list(dec.diagonal),
    }
    if args.format == "json":
        _emit(json.dumps(out, indent=2), args.out)
    else:
        lines = [f"invariant factors: {list(dec.diagonal)}"]
        for label in ("S", "U", "V"):
            lines.append(f"{label} =")
            lines.extend("  " + " ".join(f"{x:4d}" for x in row) for row in out[label])
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_hoang(args) -> int:
    x = xmod.FiniteCrossedModule.from_json(_read_json(args.path))
    data = xmod.hoang_data(x)
    nonzero = sum(1 for v in data.beta.values() if v != 0)
    lines = [
        f"pi_1: order {len(data.pi1)}",
        f"pi_2: {data.pi2_invariants}",
        f"beta: {nonzero} nonzero entries of {len(data.beta)}; cocycle condition holds",
    ]
    if args.witness:
        witness = data.coboundary_witness()
        lines.append(
            "beta is a coboundary (class is trivial)"
            if witness is not None
            else "no coboundary witness: the extension class is nontrivial"
        )
    _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_report(args) -> int:
    M = resolve_source(args.source)
    report = dim3.crossed_square_report(M)
    _emit(report.render(), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="topsectors", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--out", help="write the report to a file")

    p = sub.add_parser("classify", help="classify homotopy classes of maps")
    p.add_argument("--source", required=True, help="catalog name[:params] or JSON path")
    p.add_argument("--target", required=True, help="rp2|sphere2|trivial:r[,k]|lens:p,q|so3|path")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--based", action="store_true", default=True)
    mode.add_argument("--free", action="store_true", default=False)
    p.add_argument("--sweep", type=int, default=2, help="sector sweep radius (sphere target)")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("crosscheck", help="run both routes and compare per sector")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--sweep", type=int, default=3)
    p.add_argument("--cup", help="override the cup-product table (JSON path)")
    common(p)
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("validate", help="validate a complex/target/crossed-module file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    p.add_argument("--matrix", help='JSON literal, e.g. "[[2,4],[6,8]]"')
    p.add_argument("--file", help="JSON file holding the matrix")
    common(p)
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("hoang", help="classification data of a finite crossed module")
    p.add_argument("path")
    p.add_argument("--witness", action="store_true", help="search for a coboundary witness")
    common(p)
    p.set_defaults(func=cmd_hoang)

    p = sub.add_parser("report", help="structural crossed-square report of a complex")
    p.add_argument("--source", required=True)
    common(p)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except UnsupportedError as err:
        print(f"unsupported: {err}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except UnsupportedTargetError as err:
        print(f"unsupported: {err}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ComplexError, XModError, Dim3Error, words.AlphabetError, words.WordSyntaxError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
