"""Command line driver: point queries, contour CSV, raster exports.

Subcommands
-----------
member / classify / order / lopsided / fiber
    Point queries; each prints a single JSON object on stdout.
contour / boundary
    Sweep the contour and emit "w1,w2,theta,class" CSV rows.
betti / raster
    Rasterize Betti counts or classification tags to PPM / SVG files.
basis
    Construct and verify an amoeba basis for a full-rank linear system.

Exit codes: 0 success, 1 failed basis verification, 2 parse errors,
3 degenerate inputs, 4 numeric non-convergence.

Points are log coordinates by default; pass --abs to give coordinate
moduli |z_j| instead.  All floats are printed with 12 significant
digits, so identical jobs produce identical bytes.  The environment
variable AMOEBA_THREADS caps the raster worker count.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
import warnings

from . import __version__
from .contour import classify_contour, trace_contour
from .errors import (
    AmoebaError,
    AxiomFailure,
    DegenerateFiber,
    DegenerateSlice,
    IdenticallyZero,
    InconsistentOrder,
    NegativeExponent,
    NoConvergence,
    NotLinear,
    Overflow,
    ParseError,
    SingularMatrix,
    ZeroCoordinate,
)
from .fiber import classify, fiber_solutions, lopsided, order
from .linear import LinearSystem, amoeba_basis, verify_basis
from .parsing import format_poly, parse_poly
from .raster import amoeba_grids

_PALETTE = (
    (27, 158, 119),
    (217, 95, 2),
    (117, 112, 179),
    (231, 41, 138),
    (102, 166, 30),
    (230, 171, 2),
    (166, 118, 29),
    (102, 102, 102),
)

_TAG_RGB = {
    "Complement": (255, 255, 255),
    "Interior": (70, 130, 180),
    "ContourInterior": (255, 191, 0),
    "Boundary": (0, 0, 0),
    "Degenerate": (255, 0, 255),
}

# lets option values like "-2,-2,2,2" or "-1.5,0" pass as arguments
_NEGATIVE_VALUE = re.compile(r"^-[\d.,eEjJ+-]+$")


# --------------------------------------------------------------------------
# deterministic formatting
# --------------------------------------------------------------------------

def _g12(x):
    """12-significant-digit decimal form of a float."""
    return format(float(x), ".12g")


def _json_text(obj):
    """Serialize with fixed float formatting and preserved key order."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _g12(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_text(v) for v in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ", ".join(
            f"{json.dumps(k)}: {_json_text(v)}" for k, v in obj.items()
        ) + "}"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _emit(obj):
    sys.stdout.write(_json_text(obj) + "\n")


def _solution_obj(s):
    return {
        "phi": [s.phi[0], s.phi[1]],
        "multiplicity": s.multiplicity,
        "critical": s.critical,
        "score": s.score,
    }


# --------------------------------------------------------------------------
# argument helpers
# --------------------------------------------------------------------------

def _floats(text, count=None):
    parts = [p for p in text.split(",") if p.strip() != ""]
    vals = [float(p) for p in parts]
    if count is not None and len(vals) != count:
        raise ValueError(f"expected {count} comma-separated numbers")
    return vals

def _window_arg(text):
    x0, y0, x1, y1 = _floats(text, 4)
    if not (x1 > x0 and y1 > y0):
        raise ValueError("window must be min1,min2,max1,max2 with max > min")
    return ((x0, y0), (x1, y1))


def _res_arg(text):
    nx, ny = (int(p) for p in text.split(","))
    if nx < 2 or ny < 2:
        raise ValueError("resolution must be at least 2,2")
    return (nx, ny)


def _positive_float(text):
    v = float(text)
    if v <= 0:
        raise ValueError("must be positive")
    return v


def _resolve_point(args):
    """The queried log-point; --abs input is positive moduli to take logs of."""
    try:
        vals = _floats(args.point)
    except ValueError as exc:
        raise ParseError(f"bad point: {exc}") from None
    if len(vals) < 1:
        raise ParseError("empty point")
    if args.abs:
        if any(v <= 0 for v in vals):
            raise ParseError("--abs coordinates must be positive moduli")
        vals = [math.log(v) for v in vals]
    return tuple(vals)


def _load_poly(args, nvars):
    return parse_poly(args.poly, nvars)


def _parse_matrix(text):
    rows = []
    try:
        for chunk in text.split(";"):
            row = [complex(p.strip().replace("i", "j")) for p in chunk.split(",")]
            rows.append(row)
    except ValueError as exc:
        raise ParseError(f"bad matrix entry: {exc}") from None
    if any(len(r) != len(rows) for r in rows):
        raise ParseError("coefficient matrix must be square (rows split by ';')")
    return rows


# --------------------------------------------------------------------------
# exports
# --------------------------------------------------------------------------

def _betti_rgb(v):
    v = int(v)
    if v < 0:
        return (255, 0, 255)
    if v == 0:
        return (255, 255, 255)
    return _PALETTE[(v - 1) % len(_PALETTE)]


def _tag_rgb(tag):
    return _TAG_RGB.get(str(tag), (255, 0, 255))


def _write_ppm(path, raster, rgb_of):
    """Binary P6 image, one pixel per cell, top row at maximal w2."""
    nx, ny = raster.resolution
    body = bytearray()
    for j in range(ny - 1, -1, -1):
        for i in range(nx):
            body.extend(rgb_of(raster.cells[i, j]))
    with open(path, "wb") as fh:
        fh.write(f"P6\n{nx} {ny}\n255\n".encode("ascii"))
        fh.write(bytes(body))


def _write_svg(path, raster, rgb_of):
    """SVG 1.1 with one rect per horizontal run of equal color."""
    nx, ny = raster.resolution
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{nx}" height="{ny}" viewBox="0 0 {nx} {ny}" '
        'shape-rendering="crispEdges">'
    ]
    for j in range(ny - 1, -1, -1):
        y = ny - 1 - j
        i = 0
        while i < nx:
            rgb = rgb_of(raster.cells[i, j])
            run = 1
            while i + run < nx and rgb_of(raster.cells[i + run, j]) == rgb:
                run += 1
            color = "#{:02x}{:02x}{:02x}".format(*rgb)
            parts.append(
                f'<rect x="{i}" y="{y}" width="{run}" height="1" fill="{color}"/>'
            )
            i += run
    parts.append("</svg>")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(parts) + "\n")


def _export_raster(raster, outputs, rgb_of):
    if not outputs:
        raise ParseError("an --output path ending in .ppm or .svg is required")
    for path in outputs:
        if path.endswith(".svg"):
            _write_svg(path, raster, rgb_of)
        else:
            _write_ppm(path, raster, rgb_of)


# --------------------------------------------------------------------------
# subcommand handlers
# --------------------------------------------------------------------------

def _cmd_member(args):
    w = _resolve_point(args)
    f = _load_poly(args, len(w))
    sols = fiber_solutions(f, w, unit_tol=args.unit_tol, critical_tol=args.critical_tol)
    _emit({
        "point": list(w),
        "tag": "Member" if sols else "NonMember",
        "solutions": [_solution_obj(s) for s in sols],
    })
    return 0


def _cmd_classify(args):
    w = _resolve_point(args)
    f = _load_poly(args, len(w))
    pc = classify(f, w, critical_tol=args.critical_tol, unit_tol=args.unit_tol)
    obj = {
        "point": list(w),
        "tag": pc.tag,
        "solutions": [_solution_obj(s) for s in pc.solutions],
    }
    if pc.tag == "Complement":
        try:
            obj["order"] = list(order(f, w))
        except InconsistentOrder:
            obj["order"] = None
    if pc.tag == "Boundary":
        obj["caveat"] = pc.caveat
    _emit(obj)
    return 0


def _cmd_order(args):
    w = _resolve_point(args)
    f = _load_poly(args, len(w))
    _emit({"point": list(w), "order": list(order(f, w))})
    return 0


def _cmd_lopsided(args):
    w = _resolve_point(args)
    f = _load_poly(args, len(w))
    alpha = lopsided(f, w)
    _emit({
        "point": list(w),
        "lopsided": alpha is not None,
        "alpha": list(alpha) if alpha is not None else None,
    })
    return 0


def _cmd_fiber(args):
    w = _resolve_point(args)
    f = _load_poly(args, len(w))
    sols = fiber_solutions(f, w, unit_tol=args.unit_tol, critical_tol=args.critical_tol)
    _emit({
        "point": list(w),
        "count": len(sols),
        "solutions": [_solution_obj(s) for s in sols],
    })
    return 0


def _contour_rows(args):
    f = parse_poly(args.poly, 2)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        pts = trace_contour(f, args.slices)
    for note in caught:
        print(f"note: {note.message}", file=sys.stderr)
    parts = classify_contour(f, pts, critical_tol=args.critical_tol)
    rows = []
    for bucket in parts.values():
        for p, pc in bucket:
            rows.append((p.w[0], p.w[1], p.s_param, pc.tag))
    rows.sort()
    return rows


def _write_csv(rows, outputs):
    text = "w1,w2,theta,class\n" + "".join(
        f"{_g12(a)},{_g12(b)},{_g12(t)},{tag}\n" for a, b, t, tag in rows
    )
    if not outputs:
        sys.stdout.write(text)
        return
    for path in outputs:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)


def _cmd_contour(args):
    _write_csv(_contour_rows(args), args.output)
    return 0


def _cmd_boundary(args):
    rows = [r for r in _contour_rows(args) if r[3] == "Boundary"]
    _write_csv(rows, args.output)
    return 0


def _cmd_betti(args):
    f = parse_poly(args.poly, 2)
    betti, _ = amoeba_grids(
        f, args.window, args.res,
        critical_tol=args.critical_tol, unit_tol=args.unit_tol,
    )
    _export_raster(betti, args.output, _betti_rgb)
    return 0


def _cmd_raster(args):
    f = parse_poly(args.poly, 2)
    _, tags = amoeba_grids(
        f, args.window, args.res,
        critical_tol=args.critical_tol, unit_tol=args.unit_tol,
    )
    _export_raster(tags, args.output, _tag_rgb)
    return 0


def _cmd_basis(args):
    sys_ = LinearSystem(_parse_matrix(args.linear))
    basis = amoeba_basis(sys_)
    for j, g in enumerate(basis.polys):
        print(f"g{j} = {format_poly(g)}")
    v = basis.witness
    print("witness v = (" + ", ".join(
        f"{_g12(z.real)}{'+' if z.imag >= 0 else '-'}{_g12(abs(z.imag))}i" for z in v
    ) + ")")
    print("log point = (" + ", ".join(_g12(x) for x in basis.log_point) + ")")
    report = verify_basis(basis, samples=args.samples, box=args.box)
    print(f"axiom 1: ok ({report.samples} samples, {report.escapes} escapes)")
    for i in sorted(report.minimality_witnesses):
        w = report.minimality_witnesses[i]
        print(
            f"axiom 2: ok without g{i} at ("
            + ", ".join(_g12(x) for x in w) + ")"
        )
    print(f"axiom 3: ok (rank {report.rank})")
    return 0


# --------------------------------------------------------------------------
# parser assembly
# --------------------------------------------------------------------------

def build_parser():
    top = argparse.ArgumentParser(
        prog="amoeba",
        description="amoebas of complex Laurent polynomials: membership, "
        "contour, Betti rasters, and linear amoeba bases",
    )
    top.add_argument("--version", action="version", version=f"amoeba {__version__}")
    sub = top.add_subparsers(dest="cmd", required=True)

    def add(name, func, help_text, *, point=False, poly=True, window=False,
            slices=False, tols=True, outputs=False):
        p = sub.add_parser(name, help=help_text)
        p._negative_number_matcher = _NEGATIVE_VALUE
        if poly:
            p.add_argument("--poly", required=True, help="polynomial in z1, z2, ...")
        if point:
            p.add_argument("--point", required=True, help="comma-separated coordinates")
            p.add_argument(
                "--abs", action="store_true",
                help="point holds moduli |z_j| instead of log coordinates",
            )
        if window:
            p.add_argument(
                "--window", type=_window_arg, default=_window_arg("-2,-2,2,2"),
                help="min1,min2,max1,max2 in log coordinates (default -2,-2,2,2)",
            )
            p.add_argument(
                "--res", type=_res_arg, default=(81, 81),
                help="nx,ny cell counts (default 81,81)",
            )
        if slices:
            p.add_argument(
                "--slices", type=int, default=360,
                help="number of sweep angles in [0, pi) (default 360)",
            )
        if tols:
            p.add_argument("--critical-tol", type=_positive_float, default=1e-6)
            p.add_argument("--unit-tol", type=_positive_float, default=1e-6)
        if outputs:
            p.add_argument(
                "--output", action="append", default=[],
                help="output path; repeat for several formats",
            )
        p.set_defaults(func=func)
        return p

    add("member", _cmd_member, "is the point in the amoeba", point=True)
    add("classify", _cmd_classify, "four-way point classification", point=True)
    add("order", _cmd_order, "order vector of a complement point", point=True)
    add("lopsided", _cmd_lopsided, "dominant-term complement certificate",
        point=True, tols=False)
    add("fiber", _cmd_fiber, "all fiber torus solutions over a point", point=True)
    add("contour", _cmd_contour, "trace and classify the contour",
        slices=True, outputs=True)
    add("boundary", _cmd_boundary, "boundary-classified contour points",
        slices=True, outputs=True)
    add("betti", _cmd_betti, "raster of fiber solution counts",
        window=True, outputs=True)
    add("raster", _cmd_raster, "raster of classification tags",
        window=True, outputs=True)
    basis = sub.add_parser("basis", help="amoeba basis of a linear system")
    basis._negative_number_matcher = _NEGATIVE_VALUE
    basis.add_argument(
        "--linear", required=True,
        help="coefficient matrix, rows split by ';', entries by ','",
    )
    basis.add_argument("--samples", type=int, default=10000)
    basis.add_argument("--box", type=_positive_float, default=2.0)
    basis.set_defaults(func=_cmd_basis)
    return top


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        span = f" at {exc.span}" if getattr(exc, "span", None) else ""
        print(f"error: {exc}{span}", file=sys.stderr)
        return 2
    except (DegenerateFiber, DegenerateSlice, IdenticallyZero, SingularMatrix,
            ZeroCoordinate, NegativeExponent, Overflow, NotLinear) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NoConvergence, InconsistentOrder) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except AxiomFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except AmoebaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
