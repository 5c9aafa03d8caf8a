"""Command-line interface: ``tangency <command> ...``.

Every command writes one JSON document holding the format version, the
fully resolved configuration and the result. Output goes to ``--output``,
else to ``$TANGENCY_OUTPUT_DIR/<command>.json`` when that variable is set,
else to stdout.

Exit codes: 0 success, 2 unparsable input, 3 violated precondition,
4 field too small for the request, 5 internal error.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from . import io as tio
from .algebra import GF
from .count import SAME_TO_CUTOFF, bound_scan, count_tangencies, tangency_order_at
from .errors import FormatError, TangencyError
from .extremal import (
    RNG_NAME,
    SharpFamilySpec,
    build_sharp_family,
    random_graph_arrangement,
    sharp_truncation,
    sharpness_report,
)
from .fit import cascade, min_degree_vanishing
from .lift import build_lift_system, jet_at

OUTPUT_DIR_ENV = "TANGENCY_OUTPUT_DIR"
EXIT_INTERNAL = 5

log = logging.getLogger("tangency")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {v}")
    return v


def _int_list(text: str) -> List[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a fraction like 1/4, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tangency", description=__doc__.split("\n")[0])
    ap.add_argument("--threads", type=_positive, default=1,
                    help="worker count (accepted; computation is currently sequential)")
    ap.add_argument("--quiet", action="store_true", help="suppress progress messages")
    ap.add_argument("--output", "-o", help="output file (default: stdout or $%s)" % OUTPUT_DIR_ENV)
    ap.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lift", help="implicit-differentiation system of a curve")
    p.add_argument("curve", help="curve JSON file")
    p.add_argument("--k", type=_positive, required=True)

    p = sub.add_parser("jet", help="k-jet of a curve at a point")
    p.add_argument("curve")
    p.add_argument("--point", required=True, help="x,y (decimal or a/b)")
    p.add_argument("--k", type=_positive, required=True)

    p = sub.add_parser("tangency", help="tangency order of two curves at a point")
    p.add_argument("curve_a")
    p.add_argument("curve_b")
    p.add_argument("--point", required=True)
    p.add_argument("--kmax", type=_positive, required=True)

    p = sub.add_parser("count", help="sum of m_k over all points of an arrangement")
    p.add_argument("arrangement")
    p.add_argument("--k", type=_positive, help="tangency order (default: the file's k)")
    p.add_argument("--csv", help="also write the per-point table to this CSV file")

    p = sub.add_parser("sharp", help="sharp family over F_p and its sharpness report")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--subsample-seed", type=int, help="first subsample seed (default: --seed)")
    p.add_argument("--trials", type=int, default=0, help="number of 1/4-subsamples")
    p.add_argument("--probability", type=_fraction, default=Fraction(1, 4))
    p.add_argument("--threshold", type=_fraction, default=Fraction(1, 100))
    p.add_argument("--arrangement-out", help="stream the family as arrangement JSON here")

    p = sub.add_parser("fit", help="minimal-degree polynomial vanishing on the lifts")
    p.add_argument("arrangement")
    p.add_argument("--k", type=_positive, help="jet order (default: the file's k)")
    p.add_argument("--cascade", action="store_true", help="also run the degree cascade")

    p = sub.add_parser("bound-scan", help="totals against n^((k+2)/(k+1)) with an exponent fit")
    p.add_argument("--generator", choices=["sharp", "random"], default="sharp")
    p.add_argument("--n", type=_int_list, required=True, help="comma-separated n values")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--p", type=int, help="prime (random: required; sharp: fixed p instead of auto)")
    p.add_argument("--max-deg", type=int, default=2, help="degree cap for random graphs")
    return ap


# -- commands ----------------------------------------------------------------
def _cmd_lift(a):
    curve = tio.curve_from_json(tio.load(a.curve))
    system = build_lift_system(curve, a.k)
    return {"curve": a.curve, "k": a.k, "field": curve.field.to_json()}, tio.lift_to_json(system)


def _cmd_jet(a):
    curve = tio.curve_from_json(tio.load(a.curve))
    F = curve.field
    pt = tio.point_from_text(a.point, F)
    j = jet_at(curve, pt, a.k)
    cfg = {"curve": a.curve, "k": a.k, "point": tio.point_to_json(pt, F), "field": F.to_json()}
    return cfg, tio.jet_to_json(j, F)


def _cmd_tangency(a):
    ca = tio.curve_from_json(tio.load(a.curve_a))
    cb = tio.curve_from_json(tio.load(a.curve_b), ca.field)
    F = ca.field
    pt = tio.point_from_text(a.point, F)
    order = tangency_order_at(ca, cb, pt, a.kmax)
    same = order is SAME_TO_CUTOFF
    cfg = {"curve_a": a.curve_a, "curve_b": a.curve_b, "kmax": a.kmax,
           "point": tio.point_to_json(pt, F), "field": F.to_json()}
    return cfg, {"order": "SAME_TO_CUTOFF" if same else order, "same_to_cutoff": same}


def _cmd_count(a):
    arr = tio.arrangement_from_json(tio.load(a.arrangement), a.k)
    rep = count_tangencies(arr)
    if a.csv:
        Path(a.csv).write_text(tio.count_report_csv(rep))
    cfg = {"arrangement": a.arrangement, "k": arr.k, "field": arr.field.to_json(), "csv": a.csv}
    return cfg, tio.count_report_to_json(rep)


def _cmd_sharp(a):
    spec = SharpFamilySpec(a.p, a.k)
    first = a.seed if a.subsample_seed is None else a.subsample_seed
    seeds = list(range(first, first + max(a.trials, 0)))
    if a.arrangement_out:
        with open(a.arrangement_out, "w") as fh:
            tio.write_arrangement_stream(fh, spec.field, spec.k, build_sharp_family(spec).curves)
    rep = sharpness_report(spec, seeds, a.probability, a.threshold)
    cfg = {
        "p": a.p, "k": a.k, "trials": len(seeds), "subsample_seeds": seeds,
        "probability": str(a.probability), "threshold": str(a.threshold),
        "rng": RNG_NAME, "arrangement_out": a.arrangement_out,
    }
    return cfg, tio.sharpness_to_json(rep)


def _cmd_fit(a):
    arr = tio.arrangement_from_json(tio.load(a.arrangement), a.k)
    cfg = {"arrangement": a.arrangement, "k": arr.k, "field": arr.field.to_json(),
           "cascade": a.cascade}
    curves = list(arr.curves)
    if a.cascade:
        res = cascade(curves, arr.k)
        return cfg, {"fit": tio.fit_to_json(res.levels[0].fit), "cascade": tio.cascade_to_json(res)}
    return cfg, {"fit": tio.fit_to_json(min_degree_vanishing(curves, arr.k))}


def _cmd_bound_scan(a):
    if a.generator == "random":
        if a.p is None:
            raise TangencyError("the random generator needs --p")
        field_p = a.p
        gen = lambda n, seed: random_graph_arrangement(n, a.max_deg, field_p, seed, a.k)
    else:
        gen = lambda n, seed: sharp_truncation(n, a.k, seed, a.p)
    scan = bound_scan(gen, a.n, a.k, a.seed, a.generator)
    cfg = {"generator": a.generator, "n": a.n, "k": a.k, "p": a.p, "max_deg": a.max_deg,
           "seed": a.seed, "rng": RNG_NAME}
    return cfg, tio.bound_scan_to_json(scan)


COMMANDS = {
    "lift": _cmd_lift,
    "jet": _cmd_jet,
    "tangency": _cmd_tangency,
    "count": _cmd_count,
    "sharp": _cmd_sharp,
    "fit": _cmd_fit,
    "bound-scan": _cmd_bound_scan,
}


def _destination(a) -> Optional[Path]:
    if a.output:
        return Path(a.output)
    env = os.environ.get(OUTPUT_DIR_ENV)
    if env:
        return Path(env) / f"{a.command}.json"
    return None


def run(argv: Optional[List[str]] = None) -> int:
    a = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if a.quiet else logging.INFO,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg, result = COMMANDS[a.command](a)
        cfg = {"command": a.command, "seed": a.seed, "threads": a.threads, **cfg}
        text = tio.dumps(tio.envelope(a.command, cfg, result))
        dest = _destination(a)
        if dest is None:
            sys.stdout.write(text)
        else:
            dest.parent.mkdir(parents=True, exist_ok=True)
            dest.write_text(text)
            log.info("wrote %s", dest)
        return 0
    except TangencyError as exc:
        kind = "input error" if isinstance(exc, FormatError) else type(exc).__name__
        print(f"tangency: {kind}: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # pragma: no cover - reported, not expected
        print(f"tangency: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
