"""JSON, CSV and plain-text renderings of command results.

Machine formats carry ``"schema": "polystab/1"`` (JSON) or a
``# schema: polystab/1`` comment (CSV). Reals are written with 17
significant digits in CSV and as shortest round-trip reprs in JSON, so both
re-parse to the same doubles. Non-finite values become ``null`` in JSON.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any

from ..domain import PolytropeConfig, StabilityReport, regime_label
from ..integrate import Profile, ProfilePoint
from ..kcc import nonlinear_connection
from .commands import REFERENCE_TABLE, TABLE_NOTES, PhasePortrait, TableRow

SCHEMA = "polystab/1"
PROFILE_COLUMNS = ("xi", "theta", "dtheta", "u", "v", "p11")


def _num(x: float):
    x = float(x)
    return x if math.isfinite(x) else None


def _g17(x: float) -> str:
    return format(x, ".17g")


def _g6(x: float) -> str:
    return format(x, ".6g")


def _complex_str(z: complex) -> str:
    if z.imag == 0:
        return _g6(z.real)
    return f"{_g6(z.real)}{'+' if z.imag > 0 else '-'}{_g6(abs(z.imag))}i"


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


class _CsvBuffer:
    def __init__(self):
        self.buf = io.StringIO()
        self.writer = csv.writer(self.buf, lineterminator="\n")
        self.comment(f"schema: {SCHEMA}")

    def comment(self, text: str):
        self.buf.write(f"# {text}\n")

    def row(self, values):
        self.writer.writerow([_g17(v) if isinstance(v, float) else v for v in values])

    def getvalue(self) -> str:
        return self.buf.getvalue()


# -- analyze ---------------------------------------------------------------


def report_to_dict(config: PolytropeConfig, r: StabilityReport) -> dict[str, Any]:
    p = r.point
    return {
        "kind": p.kind.value,
        "w0": None if p.w0 is None else _num(p.w0),
        "q0": 0.0,
        "power_term": _num(p.power_term),
        "formal": p.formal,
        "coincident": p.coincident,
        "linear": {
            "classification": r.linear.classification.value,
            "verdict": r.linear.verdict.value,
            "eigenvalues": [[_num(z.real), _num(z.imag)] for z in r.linear.eigenvalues],
        },
        "jacobi": {
            "nonlinear_connection": _num(nonlinear_connection(config)),
            "berwald": 0.0,
            "deviation_curvature": _num(r.jacobi.deviation_curvature),
            "verdict": r.jacobi.verdict.value,
        },
        "lyapunov": {
            "hessian_eigenvalues": [_num(x) for x in r.lyapunov.hessian_eigenvalues],
            "is_local_minimum": r.lyapunov.is_local_minimum,
            "vdot_coefficient": _num(r.lyapunov.vdot_coefficient),
            "verdict": r.lyapunov.verdict.value,
        },
    }


def analyze_json(config: PolytropeConfig, reports: list[StabilityReport]) -> str:
    return dumps({
        "schema": SCHEMA,
        "command": "analyze",
        "n": config.n,
        "B": config.B,
        "regime": regime_label(config.n),
        "points": [report_to_dict(config, r) for r in reports],
    })


ANALYZE_COLUMNS = (
    "kind", "w0", "power_term", "formal", "linear_classification", "linear_verdict",
    "lambda_plus_re", "lambda_plus_im", "lambda_minus_re", "lambda_minus_im",
    "p11", "jacobi_verdict", "hessian_1", "hessian_2", "vdot_coefficient", "lyapunov_verdict",
)


def analyze_csv(config: PolytropeConfig, reports: list[StabilityReport]) -> str:
    out = _CsvBuffer()
    out.comment(f"n: {_g17(config.n)}")
    out.comment(f"B: {_g17(config.B)}")
    out.comment(f"regime: {regime_label(config.n)}")
    out.row(ANALYZE_COLUMNS)
    for r in reports:
        lp, lm = r.linear.eigenvalues
        out.row([
            r.point.kind.value, "" if r.point.w0 is None else r.point.w0, r.point.power_term,
            str(r.point.formal).lower(), r.linear.classification.value, r.linear.verdict.value,
            lp.real, lp.imag, lm.real, lm.imag,
            r.jacobi.deviation_curvature, r.jacobi.verdict.value,
            *r.lyapunov.hessian_eigenvalues, r.lyapunov.vdot_coefficient, r.lyapunov.verdict.value,
        ])
    return out.getvalue()


def analyze_text(config: PolytropeConfig, reports: list[StabilityReport]) -> str:
    lines = [f"n = {_g6(config.n)}, B = {_g6(config.B)}   regime: {regime_label(config.n)}"]
    for r in reports:
        p = r.point
        where = "formal (no real coordinate)" if p.formal else f"w0 = {_g6(p.w0)}"
        if p.coincident:
            where += ", Xn coincides with X0"
        lines.append(f"{p.kind.value}: {where}, B^(n-1) w0^(n-1) = {_g6(p.power_term)}")
        eig = ", ".join(_complex_str(z) for z in r.linear.eigenvalues)
        lines.append(f"  linear    {r.linear.verdict.value:<22} {r.linear.classification.value}; eigenvalues {eig}")
        lines.append(f"  Jacobi    {r.jacobi.verdict.value:<22} P11 = {_g6(r.jacobi.deviation_curvature)}")
        h1, h2 = r.lyapunov.hessian_eigenvalues
        lines.append(
            f"  Lyapunov  {r.lyapunov.verdict.value:<22} Hessian ({_g6(h1)}, {_g6(h2)}), "
            f"dV/dt = {_g6(r.lyapunov.vdot_coefficient)} q^2"
        )
    return "\n".join(lines) + "\n"


# -- table -----------------------------------------------------------------


def table_json(rows: list[TableRow], samples_per_regime: int) -> str:
    return dumps({
        "schema": SCHEMA,
        "command": "table",
        "samples_per_regime": samples_per_regime,
        "matches_reference": [r.words for r in rows] == list(REFERENCE_TABLE),
        "notes": list(TABLE_NOTES),
        "rows": [
            {
                "regime": r.regime_label,
                "samples": list(r.samples),
                "linear": r.linear.table_word,
                "jacobi": r.jacobi.table_word,
                "lyapunov": r.lyapunov.table_word,
                "x0": {
                    "linear": r.x0_linear.table_word,
                    "jacobi": r.x0_jacobi.table_word,
                    "lyapunov": r.x0_lyapunov.table_word,
                },
            }
            for r in rows
        ],
    })


def table_csv(rows: list[TableRow], samples_per_regime: int) -> str:
    out = _CsvBuffer()
    out.comment(f"samples_per_regime: {samples_per_regime}")
    for note in TABLE_NOTES:
        out.comment(f"note: {note}")
    out.row(("regime", "linear", "jacobi", "lyapunov", "x0_linear", "x0_jacobi", "x0_lyapunov"))
    for r in rows:
        out.row((r.regime_label, *r.words, r.x0_linear.table_word, r.x0_jacobi.table_word, r.x0_lyapunov.table_word))
    return out.getvalue()


def table_text(rows: list[TableRow], samples_per_regime: int) -> str:
    head = ("index n", "Linear", "Jacobi", "Lyapunov", "X0 (lin/Jac/Lyap)")
    body = [
        (r.regime_label, *r.words, "/".join((r.x0_linear.table_word, r.x0_jacobi.table_word, r.x0_lyapunov.table_word)))
        for r in rows
    ]
    widths = [max(len(str(row[i])) for row in [head, *body]) for i in range(len(head))]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*head).rstrip(), fmt.format(*("-" * w for w in widths))]
    lines += [fmt.format(*row).rstrip() for row in body]
    lines.append("")
    lines += [f"note: {note}" for note in TABLE_NOTES]
    return "\n".join(lines) + "\n"


# -- profile ---------------------------------------------------------------


def profile_json(profile: Profile, tol: float, xi_max: float) -> str:
    return dumps({
        "schema": SCHEMA,
        "command": "profile",
        "n": profile.config.n,
        "B": profile.config.B,
        "tol": tol,
        "xi_max": xi_max,
        "surface": profile.surface,
        "truncated": profile.truncated,
        "columns": list(PROFILE_COLUMNS),
        "rows": [[_num(getattr(p, c)) for c in PROFILE_COLUMNS] for p in profile.points],
    })


def profile_from_json(text: str) -> Profile:
    """Rebuild a :class:`Profile` from :func:`profile_json` output."""
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    idx = [doc["columns"].index(c) for c in PROFILE_COLUMNS]
    points = tuple(
        ProfilePoint(*(math.nan if row[i] is None else float(row[i]) for i in idx)) for row in doc["rows"]
    )
    return Profile(PolytropeConfig(doc["n"], doc["B"]), points, doc["surface"], doc["truncated"])


def profile_csv(profile: Profile, tol: float, xi_max: float) -> str:
    out = _CsvBuffer()
    out.comment(f"n: {_g17(profile.config.n)}")
    out.comment(f"B: {_g17(profile.config.B)}")
    out.comment(f"tol: {_g17(tol)}")
    out.comment(f"xi_max: {_g17(xi_max)}")
    out.row(PROFILE_COLUMNS)
    for p in profile.points:
        out.row([getattr(p, c) for c in PROFILE_COLUMNS])
    out.comment(f"surface: {'none' if profile.surface is None else _g17(profile.surface)}")
    out.comment(f"truncated: {str(profile.truncated).lower()}")
    return out.getvalue()


# -- phase -----------------------------------------------------------------


def _point_dict(p) -> dict:
    return {"kind": p.kind.value, "w0": p.w0, "q0": 0.0, "power_term": p.power_term,
            "formal": p.formal, "coincident": p.coincident}


def phase_json(portrait: PhasePortrait, t_end: float, tol: float) -> str:
    cfg = portrait.config
    return dumps({
        "schema": SCHEMA,
        "command": "phase",
        "n": cfg.n,
        "B": cfg.B,
        "t_end": t_end,
        "tol": tol,
        "centre": _point_dict(portrait.centre),
        "critical_points": [_point_dict(p) for p in portrait.points],
        "trajectories": [
            {
                "initial": [tr[0].w, tr[0].q],
                "partial": tr.partial,
                "warning": tr.reason or None,
                "points": [[s.t, s.w, s.q] for s in tr],
            }
            for tr in portrait.trajectories
        ],
    })


def phase_csv(portrait: PhasePortrait, t_end: float, tol: float) -> str:
    cfg = portrait.config
    out = _CsvBuffer()
    out.comment(f"n: {_g17(cfg.n)}")
    out.comment(f"B: {_g17(cfg.B)}")
    out.comment(f"t_end: {_g17(t_end)}")
    out.comment(f"tol: {_g17(tol)}")
    for p in portrait.points:
        w0 = "none" if p.w0 is None else _g17(p.w0)
        centre = " (centre)" if p is portrait.centre else ""
        out.comment(f"critical point {p.kind.value}: w0 = {w0}, q0 = 0, power_term = {_g17(p.power_term)}{centre}")
    for i, tr in enumerate(portrait.trajectories):
        if tr.partial:
            out.comment(f"trajectory {i} partial: {tr.reason}")
    out.row(("trajectory", "t", "w", "q"))
    for i, tr in enumerate(portrait.trajectories):
        for s in tr:
            out.row((i, s.t, s.w, s.q))
    return out.getvalue()
