"""Command-line surface: data ingestion, region and depth computation,
verification, and exact JSON region documents.

Commands: uniquantile, region, tukey, depth, verify.  Exit codes: 0 ok,
1 input error, 2 hypothesis violation (integral N*p or an invalid cone),
3 verification failure.  Documents serialize every scalar as an exact
rational string; identical inputs produce byte-identical documents.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from functools import cmp_to_key
from pathlib import Path

from ._linalg import primitive
from .core import (
    Cone,
    DataCloud,
    QuantileLevel,
    format_rational,
    parse_rational,
    validate_cone,
)
from .errors import ConequantError, DimensionMismatch, IntegralNp
from .lp import OPTIMAL, build_lp_dual, simplex_solve
from .oracle import membership_sample, oracle_region_2d
from .polyhedra import poly_equal
from .quantile import QuantileRegion, quantile_region, tukey_depth, tukey_region
from .univariate import ScalarSample, minimize_pinball_loss, quantile_direct

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_HYPOTHESIS = 2
EXIT_VERIFY = 3


class CliInputError(Exception):
    """Bad file, bad syntax, inconsistent dimensions: exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise CliInputError(message)


def load_points(path: str) -> DataCloud:
    """CSV cloud: one point per row, rational or decimal entries, lines
    starting with '#' are comments."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliInputError(f"cannot read {path}: {exc}") from exc
    rows = []
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([parse_rational(tok) for tok in line.split(",")])
        except ValueError as exc:
            raise CliInputError(f"{path}:{ln}: {exc}") from exc
    if not rows:
        raise CliInputError(f"{path}: no data rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise CliInputError(f"{path}: rows have inconsistent column counts")
    return DataCloud.from_rows(rows)


def load_cone(path: str) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[Fraction, ...] | None]:
    """Cone file: one generator row per line, optional 'interior:' line."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliInputError(f"cannot read {path}: {exc}") from exc
    gens = []
    interior = None
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if line.startswith("interior:"):
                interior = tuple(
                    parse_rational(tok) for tok in line[len("interior:"):].split(",")
                )
            else:
                gens.append(tuple(parse_rational(tok) for tok in line.split(",")))
        except ValueError as exc:
            raise CliInputError(f"{path}:{ln}: {exc}") from exc
    if not gens:
        raise CliInputError(f"{path}: no generator rows")
    width = len(gens[0])
    if any(len(g) != width for g in gens) or (interior is not None and len(interior) != width):
        raise CliInputError(f"{path}: inconsistent row widths")
    return tuple(gens), interior


def _parse_level(p_text: str, n: int, nudge: bool) -> tuple[QuantileLevel, Fraction | None]:
    try:
        p = parse_rational(p_text)
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    if not 0 < p < 1:
        raise CliInputError(f"p must lie strictly between 0 and 1, got {p_text}")
    level = QuantileLevel(p, n)
    if level.is_valid:
        return level, None
    if not nudge:
        level.require_valid()  # raises IntegralNp
    adjusted = p - Fraction(1, 2 * n * p.denominator)
    return QuantileLevel(adjusted, n), p


def region_document(
    result: QuantileRegion,
    cloud: DataCloud,
    cone_echo,
    requested_p: Fraction | None,
) -> dict:
    level = result.level
    doc_input = {
        "points": cloud.n,
        "dim": cloud.dim,
        "p": format_rational(level.p),
        "ceil_np": level.ceil_np,
        "cone": cone_echo,
    }
    if requested_p is not None:
        doc_input["p_requested"] = format_rational(requested_p)
        doc_input["nudged"] = True
    region = result.region
    stats = result.stats
    return {
        "input": doc_input,
        "provenance": result.provenance,
        "empty": region.is_empty,
        "halfspaces": [
            {"w": [format_rational(c) for c in w], "t": format_rational(t)}
            for w, t in result.defining_entries
        ],
        "vertices": [[format_rational(c) for c in v] for v in region.vertices],
        "rays": [[format_rational(c) for c in r] for r in region.rays],
        "stats": {
            "benson_rounds": stats.rounds if stats else None,
            "cuts_added": stats.cuts_added if stats else None,
            "scalarizations": stats.scalarizations if stats else None,
        },
    }


def document_bytes(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _emit(doc: dict, out_path: str | None) -> None:
    payload = document_bytes(doc)
    if out_path:
        Path(out_path).write_text(payload)
    else:
        sys.stdout.write(payload)


def _angle_key(center):
    def cmp(a, b):
        da = primitive(tuple(x - c for x, c in zip(a, center)))
        db = primitive(tuple(x - c for x, c in zip(b, center)))
        ha = 0 if (da[1] > 0 or (da[1] == 0 and da[0] > 0)) else 1
        hb = 0 if (db[1] > 0 or (db[1] == 0 and db[0] > 0)) else 1
        if ha != hb:
            return -1 if ha < hb else 1
        cr = da[0] * db[1] - da[1] * db[0]
        if cr > 0:
            return -1
        if cr < 0:
            return 1
        return 0

    return cmp_to_key(cmp)


def write_plot(result: QuantileRegion, path: str) -> bool:
    """Ordered vertex cycle as decimal lines, for 2-D nonempty bounded
    regions only; returns whether a file was written."""
    region = result.region
    if region.dim != 2 or region.is_empty or not region.is_bounded:
        return False
    verts = list(region.vertices)
    if len(verts) > 2:
        center = tuple(
            sum((v[j] for v in verts), Fraction(0)) / len(verts) for j in range(2)
        )
        verts.sort(key=_angle_key(center))
    lines = [f"{float(v[0])!r},{float(v[1])!r}" for v in verts]
    Path(path).write_text("\n".join(lines) + "\n")
    return True


def cmd_uniquantile(args) -> int:
    cloud = load_points(args.file)
    if cloud.dim != 1:
        raise CliInputError("uniquantile needs a single-column input")
    sample = ScalarSample(tuple(p[0] for p in cloud.points))
    level, _ = _parse_level(args.p, cloud.n, nudge=False)
    q = quantile_direct(sample, level)
    t_star, loss = minimize_pinball_loss(sample, level)
    assert t_star == q
    suffix = ""
    if args.check:
        outcome = simplex_solve(build_lp_dual(cloud, level, (Fraction(1),)))
        if outcome.status != OPTIMAL or outcome.x[0] != q or outcome.value != loss:
            print("LP cross-check disagreed with the direct quantile", file=sys.stderr)
            return EXIT_VERIFY
        suffix = " (LP verified)"
    print(f"q={format_rational(q)}{suffix}")
    print(f"min_loss={format_rational(loss)}")
    return EXIT_OK


def cmd_region(args) -> int:
    cloud = load_points(args.file)
    gens, interior = load_cone(args.cone)
    if len(gens[0]) != cloud.dim:
        raise CliInputError(
            f"cone dimension {len(gens[0])} does not match data dimension {cloud.dim}"
        )
    cone = validate_cone(gens)
    level, requested = _parse_level(args.p, cloud.n, args.nudge)
    result = quantile_region(cloud, level, cone, interior)
    echo = {
        "generators": [[format_rational(x) for x in g] for g in gens],
        "interior": [format_rational(x) for x in interior] if interior else None,
    }
    _emit(region_document(result, cloud, echo, requested), args.out)
    if args.plot:
        write_plot(result, args.plot)
    return EXIT_OK


def cmd_tukey(args) -> int:
    cloud = load_points(args.file)
    level, requested = _parse_level(args.p, cloud.n, args.nudge)
    result = tukey_region(cloud, level)
    _emit(region_document(result, cloud, "tukey", requested), args.out)
    if args.plot:
        write_plot(result, args.plot)
    return EXIT_OK


def cmd_depth(args) -> int:
    cloud = load_points(args.file)
    try:
        point = tuple(parse_rational(tok) for tok in args.point.split(","))
    except ValueError as exc:
        raise CliInputError(str(exc)) from exc
    if len(point) != cloud.dim:
        raise CliInputError(
            f"point has dimension {len(point)}, data has {cloud.dim}"
        )
    print(tukey_depth(cloud, point))
    return EXIT_OK


def cmd_verify(args) -> int:
    cloud = load_points(args.file)
    cone = None
    if args.cone:
        gens, interior = load_cone(args.cone)
        if len(gens[0]) != cloud.dim:
            raise CliInputError(
                f"cone dimension {len(gens[0])} does not match data dimension {cloud.dim}"
            )
        cone = validate_cone(gens)
    level, _ = _parse_level(args.p, cloud.n, nudge=False)
    if cone is None:
        result = tukey_region(cloud, level)
    else:
        result = quantile_region(cloud, level, cone)
    if cloud.dim == 2:
        reference = oracle_region_2d(cloud, level, cone)
        if poly_equal(result.region, reference.region):
            print("2-D exact oracle: regions equal")
            return EXIT_OK
        witness = _containment_witness(result.region, reference.region)
        print(f"2-D exact oracle: regions differ at {witness}", file=sys.stderr)
        return EXIT_VERIFY
    verts = result.region.vertices
    if not verts:
        print("region is empty; membership sampling has nothing to refute")
        return EXIT_OK
    for v in verts:
        ok = membership_sample(
            cloud, level, cone, v, trials=args.trials, seed=args.seed
        )
        if not ok:
            coords = ",".join(format_rational(c) for c in v)
            print(f"membership sampling refuted vertex ({coords})", file=sys.stderr)
            return EXIT_VERIFY
    print(
        f"membership sampling: {len(verts)} vertices x {args.trials} directions: not refuted"
    )
    return EXIT_OK


def _containment_witness(p, q) -> str:
    for v in p.vertices:
        if not q.contains(v):
            return "vertex (" + ",".join(format_rational(c) for c in v) + ")"
    for v in q.vertices:
        if not p.contains(v):
            return "vertex (" + ",".join(format_rational(c) for c in v) + ")"
    return "recession directions"


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="conequant", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, cone_required=False, with_cone=True):
        p.add_argument("file", help="CSV point cloud, one point per row")
        p.add_argument("--p", required=True, help="quantile level as a rational")
        if with_cone:
            p.add_argument(
                "--cone",
                required=cone_required,
                help="cone file: one generator row per line, optional interior: line",
            )

    p_uni = sub.add_parser("uniquantile", help="univariate quantile and loss minimum")
    p_uni.add_argument("file")
    p_uni.add_argument("--p", required=True)
    p_uni.add_argument("--check", action="store_true", help="cross-check by exact simplex")
    p_uni.set_defaults(func=cmd_uniquantile)

    p_region = sub.add_parser("region", help="cone quantile region document")
    add_common(p_region, cone_required=True)
    p_region.add_argument("--out", help="write the JSON document here instead of stdout")
    p_region.add_argument("--plot", help="write a 2-D vertex cycle as decimals")
    p_region.add_argument(
        "--nudge",
        action="store_true",
        help="shift an integral N*p level down by 1/(2*N*den(p))",
    )
    p_region.set_defaults(func=cmd_region)

    p_tukey = sub.add_parser("tukey", help="Tukey depth region document")
    add_common(p_tukey, with_cone=False)
    p_tukey.add_argument("--out")
    p_tukey.add_argument("--plot")
    p_tukey.add_argument("--nudge", action="store_true")
    p_tukey.set_defaults(func=cmd_tukey)

    p_depth = sub.add_parser("depth", help="Tukey depth of a point")
    p_depth.add_argument("file")
    p_depth.add_argument("point", help="comma-separated rational coordinates")
    p_depth.set_defaults(func=cmd_depth)

    p_verify = sub.add_parser("verify", help="check a region against the oracles")
    add_common(p_verify)
    p_verify.add_argument("--trials", type=int, default=1000)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except IntegralNp as exc:
        print(f"error: {exc} (pass --nudge to adjust the level)", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except ConequantError as exc:
        if isinstance(exc, DimensionMismatch):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
