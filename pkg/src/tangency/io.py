"""JSON interchange for fields, polynomials, curves, arrangements and reports.

Every document written here carries ``format_version``; readers accept any
1.x version and reject other majors. Scalars are always strings: decimal
residues over F_p, ``a/b`` or integers over Q. The only floats in any
artifact are the reference values n^((k+2)/(k+1)), which are marked
approximate.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterable, List, Optional, Union

from .algebra import Field, MultiPoly, UniPoly
from .count import Arrangement, BoundScan, CountReport
from .curves import PlaneCurve, PlanePoint, graph_of, new_curve
from .errors import FormatError
from .lift import Jet, LiftSystem

FORMAT_VERSION = "1.0"
RATIONAL_NOTE = "over Q only rational points are searched"


# -- reading ---------------------------------------------------------------
def loads(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def load(path: Union[str, Path]):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text, str(path))


def check_version(obj) -> None:
    if not isinstance(obj, dict) or "format_version" not in obj:
        return
    v = str(obj["format_version"])
    major = v.split(".", 1)[0]
    if major != FORMAT_VERSION.split(".", 1)[0]:
        raise FormatError(f"unsupported format_version {v!r}; this reader handles {FORMAT_VERSION}")


def _require(obj, key, what):
    if not isinstance(obj, dict):
        raise FormatError(f"{what} must be a JSON object")
    if key not in obj:
        raise FormatError(f"{what} is missing {key!r}")
    return obj[key]


def field_from_json(obj) -> Field:
    try:
        return Field.from_json(obj)
    except FormatError:
        raise
    except Exception as exc:
        raise FormatError(f"bad field {obj!r}: {exc}") from None


def poly_from_json(obj, field: Optional[Field] = None, nvars: int = 2) -> MultiPoly:
    """Either a full MultiPoly object or a bare terms list (needs ``field``)."""
    if isinstance(obj, dict):
        P = MultiPoly.from_json(obj)
        if field is not None and P.field != field:
            raise FormatError(f"polynomial is over {P.field}, expected {field}")
        return P
    if field is None:
        raise FormatError("a bare terms list needs an enclosing 'field'")
    return MultiPoly.from_terms_json(field, nvars, obj)


def curve_from_json(obj, field: Optional[Field] = None) -> PlaneCurve:
    """Curve object: {"label", "field", "poly" | "graph", "irreducible_asserted"}."""
    if not isinstance(obj, dict):
        raise FormatError("a curve must be a JSON object")
    check_version(obj)
    if "field" in obj:
        own = field_from_json(obj["field"])
        if field is not None and own != field:
            raise FormatError(f"curve {obj.get('label')!r} is over {own}, expected {field}")
        field = own
    label = obj.get("label", "")
    if not isinstance(label, str):
        raise FormatError(f"curve label must be a string, got {label!r}")
    if "graph" in obj:
        coeffs = obj["graph"]
        if field is None:
            raise FormatError(f"curve {label!r}: graph form needs a 'field'")
        if not isinstance(coeffs, list):
            raise FormatError(f"curve {label!r}: 'graph' must be a coefficient list")
        return graph_of(UniPoly(field, [field.parse(c) for c in coeffs]), label)
    if "poly" not in obj:
        raise FormatError(f"curve {label!r} needs 'poly' or 'graph'")
    f = poly_from_json(obj["poly"], field, 2)
    if f.nvars != 2:
        f = f.with_nvars(2)
    flag = obj.get("irreducible_asserted", False)
    if not isinstance(flag, bool):
        raise FormatError(f"curve {label!r}: 'irreducible_asserted' must be true or false")
    return new_curve(f, label, flag)


def arrangement_from_json(obj, k: Optional[int] = None) -> Arrangement:
    check_version(obj)
    field = field_from_json(_require(obj, "field", "arrangement"))
    curves = _require(obj, "curves", "arrangement")
    if not isinstance(curves, list):
        raise FormatError("'curves' must be a list")
    kk = k if k is not None else obj.get("k", 1)
    if not isinstance(kk, int):
        raise FormatError(f"'k' must be an integer, got {kk!r}")
    return Arrangement(field, kk, tuple(curve_from_json(c, field) for c in curves))


def point_from_text(text: str, field: Field) -> PlanePoint:
    parts = [s for s in text.split(",")]
    if len(parts) != 2:
        raise FormatError(f"a point is written 'x,y', got {text!r}")
    return PlanePoint(field.parse(parts[0]), field.parse(parts[1]))


def point_from_json(obj, field: Field) -> PlanePoint:
    if isinstance(obj, list) and len(obj) == 2:
        return PlanePoint(field.parse(obj[0]), field.parse(obj[1]))
    return PlanePoint(field.parse(_require(obj, "x", "point")), field.parse(_require(obj, "y", "point")))


def jet_from_json(obj, field: Field) -> Jet:
    base = point_from_json(obj, field)
    z = _require(obj, "z", "jet")
    if not isinstance(z, list):
        raise FormatError("jet 'z' must be a list")
    return Jet(base, tuple(field.parse(v) for v in z))


# -- writing ---------------------------------------------------------------
def scalar(field: Field, v) -> str:
    return field.format(v)


def point_to_json(p: PlanePoint, field: Field) -> dict:
    return {"x": field.format(p.x), "y": field.format(p.y)}


def jet_to_json(j: Jet, field: Field) -> dict:
    return {**point_to_json(j.base, field), "z": [field.format(v) for v in j.derivatives]}


def curve_to_json(c: PlaneCurve, with_field: bool = True) -> dict:
    F = c.field
    out = {"label": c.label}
    if with_field:
        out["field"] = F.to_json()
    g = c.graph
    if g is not None:
        out["graph"] = [F.format(g[i]) for i in range(max(g.degree + 1, 1))]
    out["poly"] = c.poly.terms_json()
    out["irreducible_asserted"] = c.irreducible
    return out


def arrangement_to_json(arr: Arrangement) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "field": arr.field.to_json(),
        "k": arr.k,
        "curves": [curve_to_json(c, with_field=False) for c in arr.curves],
    }


def write_arrangement_stream(fh: IO[str], field: Field, k: int, curves: Iterable[PlaneCurve]) -> int:
    """Write an arrangement one curve per line without holding the JSON in memory."""
    fh.write('{"format_version": "%s", "field": %s, "k": %d, "curves": [\n'
             % (FORMAT_VERSION, json.dumps(field.to_json()), k))
    n = 0
    for c in curves:
        if n:
            fh.write(",\n")
        fh.write(json.dumps(curve_to_json(c, with_field=False)))
        n += 1
    fh.write("\n]}\n")
    return n


def lift_to_json(system: LiftSystem) -> dict:
    return {
        "curve": system.curve.label,
        "k": system.k,
        "generators": [g.to_json() for g in system.generators],
        "generators_text": [str(g) for g in system.generators],
    }


def count_report_to_json(rep: CountReport) -> dict:
    F = rep.field
    out = {
        "total": rep.total,
        "n": rep.n,
        "k": rep.k,
        "field": F.to_json(),
        "bound_value_approx": rep.bound_value,
        "exclusions_summary": dict(rep.exclusions_summary),
        "records": [
            {
                **point_to_json(r.point, F),
                "m": len(r.participants),
                "participants": list(r.participants),
                "excluded": [list(e) for e in r.excluded],
            }
            for r in rep.records
        ],
        "exclusion_records": [
            {**point_to_json(r.point, F), "excluded": [list(e) for e in r.excluded]}
            for r in rep.exclusion_records
        ],
    }
    if not F.is_prime_field:
        out["restriction"] = RATIONAL_NOTE
    return out


def count_report_csv(rep: CountReport) -> str:
    """One row per point: x, y, participants, excluded (';'-separated)."""
    import csv
    import io

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "participants", "excluded"])
    F = rep.field
    rows = [(r.point, r.participants, r.excluded) for r in rep.records]
    rows += [(r.point, (), r.excluded) for r in rep.exclusion_records]
    rows.sort(key=lambda t: t[0].sort_key())
    for pt, parts, excl in rows:
        w.writerow([F.format(pt.x), F.format(pt.y), ";".join(parts),
                    ";".join(f"{a}:{b}" for a, b in excl)])
    return buf.getvalue()


def fit_to_json(fit) -> dict:
    return {
        "polynomial": fit.polynomial.to_json(),
        "polynomial_text": str(fit.polynomial),
        "degree": fit.degree,
        "k": fit.k,
        "constraints_used": fit.constraints_used,
        "kernel_dimension": fit.kernel_dimension,
        "top_free": fit.top_free,
        "minimality_certified": fit.minimality_certified,
        "per_curve_certificates": [
            {"label": c.label, "contained": c.contained, "samples": c.samples}
            for c in fit.per_curve_certificates
        ],
    }


def cascade_to_json(res) -> dict:
    out = {
        "k": res.k,
        "degree": res.degree,
        "status": res.status,
        "stopped_at": res.stopped_at,
        "levels": [
            {
                "level": lv.level,
                "top_free": lv.top_free,
                "fit": fit_to_json(lv.fit),
                "dz_containment": [
                    {"label": c.label, "contained": c.contained, "samples": c.samples}
                    for c in lv.dz_containment
                ],
            }
            for lv in res.levels
        ],
        "degree_sum": res.degree_sum,
        "p0": None if res.p0 is None else res.p0.to_json(),
        "p0_text": None if res.p0 is None else str(res.p0),
        "p0_vanishes": dict(res.p0_vanishes),
        "degree_check": res.degree_check,
    }
    return out


def sharpness_to_json(rep) -> dict:
    return {
        "p": rep.p,
        "k": rep.k,
        "size": rep.size,
        "sum_m": rep.sum_m,
        "sum_m_by_jets": rep.sum_m_by_jets,
        "ratio_approx": rep.ratio,
        "closed_forms": dict(rep.closed_forms),
        "matches": list(rep.matches),
        "predicted_closed_form": rep.predicted_closed_form,
        "match": rep.match,
        "displayed_formula_match": rep.displayed_formula_match,
        "subsample": {
            "probability": f"{rep.probability.numerator}/{rep.probability.denominator}",
            "threshold": f"{rep.threshold.numerator}/{rep.threshold.denominator}",
            "rng": rep.rng,
            "pass_fraction_approx": rep.pass_fraction,
            "trials": [
                {"seed": s.seed, "size": s.size, "sum_m": s.sum_m, "ratio_approx": s.ratio,
                 "passed": s.passed}
                for s in rep.subsamples
            ],
        },
    }


def bound_scan_to_json(scan: BoundScan) -> dict:
    return {
        "k": scan.k,
        "generator": scan.generator,
        "seed": scan.seed,
        "target_exponent_approx": scan.target_exponent,
        "fitted_exponent_approx": scan.exponent,
        "fitted_intercept_approx": scan.intercept,
        "rows": [
            {"n": r.n, "p": r.p, "total": r.total, "reference_approx": r.reference,
             "ratio_approx": r.ratio}
            for r in scan.rows
        ],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def envelope(command: str, config: dict, result) -> dict:
    return {"format_version": FORMAT_VERSION, "command": command, "config": config, "result": result}
