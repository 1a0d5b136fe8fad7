"""Command-line front end: ``hs-entangle {compute,certify,sweep,figure}``.

State specifications are JSON objects with a ``kind`` discriminator::

    {"kind": "bell", "i": 1}
    {"kind": "phi_mix", "i": 1, "j": 2}
    {"kind": "werner", "i": 1, "epsilon": 0.5}
    {"kind": "bell_mixture", "i": 1, "lambdas": [0.4, 0.2, 0.2, 0.2]}
    {"kind": "pure_schmidt", "a2": 0.3}
    {"kind": "pure_vector", "re": [...4], "im": [...4]}
    {"kind": "raw_matrix", "re": [[...4] x4], "im": [[...4] x4]}

Machine-readable output starts with the header line ``hs-entangle/1``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Optional

import jsonschema
import numpy as np
from scipy.optimize import brentq

from .closed_form import (
    CENTRAL_HI,
    CENTRAL_LO,
    P_PLUS_T2,
    BasepointResult,
    BellMixture,
    Regime,
    ehs_bell_mixture,
    ehs_pure,
    ehs_pure_vector,
    parabola_point,
    projected_basepoint,
)
from .entropy import evn_pure, prop3_check, relative_entropy
from .hs_opt import (
    CertificateReport,
    EntanglementResult,
    SolverConfig,
    certify_basepoint,
    nearest_separable,
)
from .linalg import eig_hermitian, hs_inner
from .states import (
    P00,
    P11,
    InvalidStateError,
    bell_projector,
    is_ppt,
    phi_mix,
    pure_state,
    schmidt_decompose,
    validate_density,
    werner,
)

HEADER = "hs-entangle/1"

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_CONVERGED = 3
EXIT_REFUSED = 4

KINDS = ("bell", "phi_mix", "werner", "bell_mixture", "pure_schmidt", "pure_vector", "raw_matrix")
_FIELDS = {
    "bell": {"i"},
    "phi_mix": {"i", "j"},
    "werner": {"i", "epsilon"},
    "bell_mixture": {"i", "lambdas"},
    "pure_schmidt": {"a2"},
    "pure_vector": {"re", "im"},
    "raw_matrix": {"re", "im"},
}


class SpecError(ValueError):
    """Malformed or invalid state specification."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class CertificateRefused(ValueError):
    """The candidate basepoint is not a separable state."""


def sig(x: float) -> float:
    """Round to 12 significant digits."""
    return float(f"{x:.12g}")


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    return "" if x is None else str(x)


# --- state specifications ------------------------------------------------------

@dataclass(frozen=True)
class StateSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"kind": self.kind, **self.params}

    def matrix(self) -> np.ndarray:
        p = self.params
        if self.kind == "bell":
            return bell_projector(p["i"])
        if self.kind == "phi_mix":
            return phi_mix(p["i"], p["j"])
        if self.kind == "werner":
            return werner(p["i"], p["epsilon"])
        if self.kind == "bell_mixture":
            return BellMixture(p["i"], p["lambdas"]).state()
        if self.kind == "pure_schmidt":
            return pure_state(p["a2"])
        if self.kind == "pure_vector":
            v = self.vector()
            return np.outer(v, v.conj())
        return np.asarray(p["re"], dtype=float) + 1j * np.asarray(p["im"], dtype=float)

    def vector(self) -> np.ndarray:
        return np.asarray(self.params["re"], dtype=float) + 1j * np.asarray(self.params["im"], dtype=float)


def _number(doc, key) -> float:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise SpecError(key, "expected a finite number")
    return float(v)


def _index(doc, key) -> int:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise SpecError(key, "expected an integer Bell index")
    if not 1 <= v <= 4:
        raise SpecError(key, f"Bell index must be in 1..4, got {v}")
    return v


def _array(doc, key, shape) -> list:
    try:
        arr = np.asarray(doc[key], dtype=float)
    except (TypeError, ValueError):
        raise SpecError(key, "expected a numeric array") from None
    if arr.shape != shape:
        raise SpecError(key, f"expected shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise SpecError(key, "array has non-finite entries")
    return arr.tolist()


def spec_from_dict(doc: Any) -> StateSpec:
    if not isinstance(doc, dict):
        raise SpecError("<root>", "expected a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise SpecError("kind", f"unknown kind {kind!r}")
    keys = set(doc) - {"kind"}
    for missing in sorted(_FIELDS[kind] - keys):
        raise SpecError(missing, "missing field")
    for extra in sorted(keys - _FIELDS[kind]):
        raise SpecError(extra, f"unexpected field for kind {kind!r}")

    if kind == "bell":
        params = {"i": _index(doc, "i")}
    elif kind == "phi_mix":
        params = {"i": _index(doc, "i"), "j": _index(doc, "j")}
        if params["i"] == params["j"]:
            raise SpecError("j", "must differ from i")
    elif kind == "werner":
        eps = _number(doc, "epsilon")
        if not 0.0 <= eps <= 1.0:
            raise SpecError("epsilon", f"must lie in [0, 1], got {eps}")
        params = {"i": _index(doc, "i"), "epsilon": eps}
    elif kind == "bell_mixture":
        lam = _array(doc, "lambdas", (4,))
        if min(lam) < 0 or abs(sum(lam) - 1.0) > 1e-10:
            raise SpecError("lambdas", "weights must be non-negative and sum to 1")
        params = {"i": _index(doc, "i"), "lambdas": lam}
    elif kind == "pure_schmidt":
        a2 = _number(doc, "a2")
        if not 0.0 <= a2 <= 1.0:
            raise SpecError("a2", f"must lie in [0, 1], got {a2}")
        params = {"a2": a2}
    elif kind == "pure_vector":
        re, im = _array(doc, "re", (4,)), _array(doc, "im", (4,))
        norm = math.sqrt(sum(x * x for x in re) + sum(x * x for x in im))
        if abs(norm - 1.0) > 1e-10:
            raise SpecError("re", f"vector must be normalized, norm is {norm}")
        params = {"re": re, "im": im}
    else:
        params = {"re": _array(doc, "re", (4, 4)), "im": _array(doc, "im", (4, 4))}
        try:
            validate_density(np.asarray(params["re"]) + 1j * np.asarray(params["im"]))
        except InvalidStateError as exc:
            raise SpecError("re", str(exc)) from None
    return StateSpec(kind, params)


def parse_state_spec(text) -> StateSpec:
    """Parse and validate a JSON state specification (str or bytes)."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError:
            raise SpecError("<root>", "input is not valid UTF-8") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError("<root>", f"malformed JSON: {exc.msg} at line {exc.lineno}") from None
    return spec_from_dict(doc)


def closed_form_for(spec: StateSpec) -> Optional[BasepointResult]:
    """Closed-form result when the spec lies in a family with a known formula."""
    p = spec.params
    if spec.kind == "bell":
        lam = [0.0] * 4
        lam[p["i"] - 1] = 1.0
        return ehs_bell_mixture(BellMixture(p["i"], lam))
    if spec.kind == "phi_mix":
        lam = [0.0] * 4
        lam[p["j"] - 1] = 1.0
        return ehs_bell_mixture(BellMixture(p["i"], lam))
    if spec.kind == "werner":
        if p["epsilon"] >= 1 / 3:
            return ehs_bell_mixture(BellMixture.from_werner(p["i"], p["epsilon"]))
        sigma = werner(p["i"], p["epsilon"])
        return BasepointResult(0.0, sigma, Regime.SEPARABLE, sigma)
    if spec.kind == "bell_mixture":
        return ehs_bell_mixture(BellMixture(p["i"], p["lambdas"]))
    if spec.kind == "pure_schmidt":
        return ehs_pure(p["a2"])
    if spec.kind == "pure_vector":
        return ehs_pure_vector(spec.vector())
    return None


# --- reports --------------------------------------------------------------------

def _matrix_doc(M) -> dict:
    M = np.asarray(M)
    return {"re": [[sig(x) for x in row] for row in M.real], "im": [[sig(x) for x in row] for row in M.imag]}


def _vector_doc(v) -> dict:
    return {"re": [sig(x) for x in np.real(v)], "im": [sig(x) for x in np.imag(v)]}


def _rel_doc(val) -> dict:
    return {"value": None if val.infinite else sig(val.value), "infinite": val.infinite}


def certificate_doc(rep: CertificateReport, target: str) -> dict:
    return {
        "target": target,
        "min_derivative": sig(rep.min_derivative),
        "passed": bool(rep.passed),
        "witness": {"chi": _vector_doc(rep.witness.chi), "xi": _vector_doc(rep.witness.xi)},
    }


@dataclass
class RunReport:
    spec: StateSpec
    closed_form: Optional[BasepointResult]
    numerical: EntanglementResult
    certificate: CertificateReport
    certificate_target: str
    rel_entropy_closed_form: Any = None
    rel_entropy_numerical: Any = None
    evn: Optional[float] = None
    timing: float = 0.0

    @property
    def abs_difference(self) -> Optional[float]:
        if self.closed_form is None:
            return None
        return abs(self.closed_form.entanglement - self.numerical.value)

    @property
    def entropy_bound_slack(self) -> Optional[float]:
        if self.evn is None:
            return None
        e_hs = self.closed_form.entanglement if self.closed_form else self.numerical.value
        return prop3_check(self.evn, max(e_hs, 0.0))

    def to_dict(self) -> dict:
        cf = None
        if self.closed_form is not None:
            cf = {
                "entanglement": sig(self.closed_form.entanglement),
                "regime": self.closed_form.regime.value,
                "parameter": None if self.closed_form.parameter is None else sig(self.closed_form.parameter),
                "basepoint": _matrix_doc(self.closed_form.basepoint),
            }
        num = self.numerical
        return {
            "spec": self.spec.to_dict(),
            "closed_form": cf,
            "numerical": {
                "value": sig(num.value),
                "gap": sig(num.gap),
                "iterations": num.iterations,
                "converged": bool(num.converged),
                "atoms": len(num.basepoint.atoms),
                "basepoint": _matrix_doc(num.basepoint_matrix),
            },
            "abs_difference": None if self.abs_difference is None else sig(self.abs_difference),
            "certificate": certificate_doc(self.certificate, self.certificate_target),
            "entropy": {
                "rel_entropy_closed_form": None
                if self.rel_entropy_closed_form is None
                else _rel_doc(self.rel_entropy_closed_form),
                "rel_entropy_numerical": _rel_doc(self.rel_entropy_numerical),
                "evn_pure": None if self.evn is None else sig(self.evn),
                "entropy_bound_slack": None if self.entropy_bound_slack is None else sig(self.entropy_bound_slack),
            },
            "timing_seconds": sig(self.timing),
        }


_NUM = {"type": "number"}
_NUM_OR_NULL = {"type": ["number", "null"]}
_MATRIX = {
    "type": "object",
    "required": ["re", "im"],
    "properties": {
        "re": {"type": "array", "items": {"type": "array", "items": _NUM}},
        "im": {"type": "array", "items": {"type": "array", "items": _NUM}},
    },
}
_REL = {
    "type": ["object", "null"],
    "required": ["value", "infinite"],
    "properties": {"value": _NUM_OR_NULL, "infinite": {"type": "boolean"}},
}
_VEC = {
    "type": "object",
    "required": ["re", "im"],
    "properties": {"re": {"type": "array", "items": _NUM}, "im": {"type": "array", "items": _NUM}},
}
CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["target", "min_derivative", "passed", "witness"],
    "properties": {
        "target": {"type": "string"},
        "min_derivative": _NUM,
        "passed": {"type": "boolean"},
        "witness": {"type": "object", "required": ["chi", "xi"], "properties": {"chi": _VEC, "xi": _VEC}},
    },
}
RUN_REPORT_SCHEMA = {
    "type": "object",
    "required": ["spec", "closed_form", "numerical", "abs_difference", "certificate", "entropy", "timing_seconds"],
    "properties": {
        "spec": {"type": "object", "required": ["kind"]},
        "closed_form": {
            "type": ["object", "null"],
            "required": ["entanglement", "regime", "parameter", "basepoint"],
            "properties": {
                "entanglement": _NUM,
                "regime": {"enum": [r.value for r in Regime]},
                "parameter": _NUM_OR_NULL,
                "basepoint": _MATRIX,
            },
        },
        "numerical": {
            "type": "object",
            "required": ["value", "gap", "iterations", "converged", "atoms", "basepoint"],
            "properties": {
                "value": _NUM,
                "gap": _NUM,
                "iterations": {"type": "integer"},
                "converged": {"type": "boolean"},
                "atoms": {"type": "integer"},
                "basepoint": _MATRIX,
            },
        },
        "abs_difference": _NUM_OR_NULL,
        "certificate": CERTIFICATE_SCHEMA,
        "entropy": {
            "type": "object",
            "required": ["rel_entropy_closed_form", "rel_entropy_numerical", "evn_pure", "entropy_bound_slack"],
            "properties": {
                "rel_entropy_closed_form": _REL,
                "rel_entropy_numerical": _REL,
                "evn_pure": _NUM_OR_NULL,
                "entropy_bound_slack": _NUM_OR_NULL,
            },
        },
        "timing_seconds": _NUM,
    },
}


def parse_run_report(text: str) -> dict:
    """Parse emitted JSON output (header line plus document) and validate it."""
    head, _, body = text.partition("\n")
    if head.strip() != HEADER:
        raise ValueError(f"missing {HEADER!r} header")
    doc = json.loads(body)
    jsonschema.validate(doc, RUN_REPORT_SCHEMA)
    spec_from_dict(doc["spec"])
    return doc


# --- commands -------------------------------------------------------------------

def _pure_a2(spec: StateSpec) -> Optional[float]:
    if spec.kind == "pure_schmidt":
        return spec.params["a2"]
    if spec.kind == "pure_vector":
        return schmidt_decompose(spec.vector()).a ** 2
    if spec.kind == "bell":
        return 0.5
    return None


def cmd_compute(spec: StateSpec, cfg: SolverConfig = SolverConfig()) -> RunReport:
    start = time.perf_counter()
    sigma = validate_density(spec.matrix())
    cf = closed_form_for(spec)
    num = nearest_separable(sigma, cfg)
    if cf is not None:
        target, candidate = "closed_form", cf.basepoint
    else:
        target, candidate = "numerical", num.basepoint_matrix
    cert = certify_basepoint(sigma, validate_density(candidate, tol=1e-8), cfg)
    a2 = _pure_a2(spec)
    return RunReport(
        spec=spec,
        closed_form=cf,
        numerical=num,
        certificate=cert,
        certificate_target=target,
        rel_entropy_closed_form=None if cf is None else relative_entropy(sigma, cf.basepoint),
        rel_entropy_numerical=relative_entropy(sigma, validate_density(num.basepoint_matrix, tol=1e-8)),
        evn=None if a2 is None else evn_pure(a2),
        timing=time.perf_counter() - start,
    )


def cmd_certify(spec: StateSpec, candidate: StateSpec, cfg: SolverConfig = SolverConfig()) -> CertificateReport:
    sigma = validate_density(spec.matrix())
    cand = validate_density(candidate.matrix())
    if not is_ppt(cand):
        raise CertificateRefused("candidate basepoint has a non-positive partial transpose")
    return certify_basepoint(sigma, cand, cfg)


SWEEP_COLUMNS = ("parameter", "closed_form", "numerical", "gap", "converged", "abs_difference", "regime")


def cmd_sweep(family: str, n_points: int, cfg: SolverConfig = SolverConfig()) -> list[dict]:
    """Closed form vs numerical values on a uniform grid of a^2 or epsilon."""
    if n_points < 2:
        raise ValueError("a sweep needs at least two points")
    if family not in ("pure", "werner"):
        raise ValueError(f"unknown sweep family {family!r}")
    rows = []
    for x in np.linspace(0.0, 1.0, n_points):
        x = float(x)
        if family == "pure":
            cf = ehs_pure(x)
        else:
            cf = closed_form_for(StateSpec("werner", {"i": 1, "epsilon": x}))
        num = nearest_separable(cf.state, cfg)
        rows.append(
            {
                "parameter": x,
                "closed_form": cf.entanglement,
                "numerical": num.value,
                "gap": num.gap,
                "converged": num.converged,
                "abs_difference": abs(cf.entanglement - num.value),
                "regime": cf.regime.value,
            }
        )
    return rows


_VERTICES = (P00, P11, P_PLUS_T2)
_GRAM = np.array([[hs_inner(A, B).real for B in _VERTICES] for A in _VERTICES])


def triangle_coordinates(rho) -> np.ndarray:
    """Barycentric coordinates of rho in the plane of conv{P_00, P_11, P_+^T2}."""
    rhs = np.array([hs_inner(V, rho).real for V in _VERTICES])
    return np.linalg.solve(_GRAM, rhs)


def _parabola_residual(c) -> float:
    # points of the parabola satisfy z^2 = 4 x y in barycentric coordinates
    return c[2] ** 2 - 4 * c[0] * c[1]


def cmd_figure(n_points: int) -> dict[str, list[dict]]:
    """Parabola, projected pure-state curve, and their intersections."""
    if n_points < 2:
        raise ValueError("figure data needs at least two points")
    grid = np.linspace(0.0, 1.0, n_points)
    parabola = []
    for s in grid:
        P = parabola_point(float(s))
        x00, x11, xp = triangle_coordinates(P)
        parabola.append(
            {"s": float(s), "x00": x00, "x11": x11, "xplus": xp, "min_eigenvalue": eig_hermitian(P).eigenvalues[0]}
        )
    projected = []
    for a2 in grid:
        Q = projected_basepoint(float(a2))
        c = triangle_coordinates(Q)
        projected.append(
            {
                "a2": float(a2),
                "x00": c[0],
                "x11": c[1],
                "xplus": c[2],
                "parabola_residual": _parabola_residual(c),
                "min_eigenvalue": eig_hermitian(Q).eigenvalues[0],
            }
        )

    def residual(a2):
        return _parabola_residual(triangle_coordinates(projected_basepoint(a2)))

    intersections = []
    for lo, hi, expected in ((1e-3, 0.5, CENTRAL_LO), (0.5, 1 - 1e-3, CENTRAL_HI)):
        root = brentq(residual, lo, hi, xtol=1e-15, rtol=1e-15)
        intersections.append({"a2": root, "expected": expected, "error": abs(root - expected)})
    return {"parabola": parabola, "projected": projected, "intersections": intersections}


# --- output ---------------------------------------------------------------------

def _csv_table(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(row[c]) for c in columns])
    return buf.getvalue()


def _json_rows(rows):
    return [{k: (sig(v) if isinstance(v, (float, np.floating)) else v) for k, v in r.items()} for r in rows]


def render_report(rep: RunReport, form: str) -> str:
    if form == "json":
        return HEADER + "\n" + json.dumps(rep.to_dict(), indent=2) + "\n"
    doc = rep.to_dict()
    flat = {
        "kind": rep.spec.kind,
        "closed_form": None if rep.closed_form is None else rep.closed_form.entanglement,
        "regime": None if rep.closed_form is None else rep.closed_form.regime.value,
        "numerical": rep.numerical.value,
        "gap": rep.numerical.gap,
        "iterations": rep.numerical.iterations,
        "converged": rep.numerical.converged,
        "abs_difference": rep.abs_difference,
        "certificate_target": rep.certificate_target,
        "min_derivative": rep.certificate.min_derivative,
        "certificate_passed": rep.certificate.passed,
        "evn_pure": rep.evn,
        "entropy_bound_slack": rep.entropy_bound_slack,
    }
    if form == "csv":
        return HEADER + "\n" + _csv_table([{"field": k, "value": v} for k, v in flat.items()], ("field", "value"))
    lines = [f"state: {json.dumps(doc['spec'])}"]
    if rep.closed_form is not None:
        cf = rep.closed_form
        tag = " (conjectured)" if not cf.proven else ""
        lines.append(f"closed form E_HS: {fmt(cf.entanglement)}  [{cf.regime.value}]{tag}")
    num = rep.numerical
    status = "converged" if num.converged else "NOT converged"
    lines.append(f"numerical E_HS:   {fmt(num.value)}  gap {fmt(num.gap)}, {num.iterations} iterations, {status}")
    if rep.abs_difference is not None:
        lines.append(f"difference:       {fmt(rep.abs_difference)}")
    verdict = "passed" if rep.certificate.passed else "FAILED"
    lines.append(
        f"certificate ({rep.certificate_target} basepoint): {verdict}, "
        f"min derivative {fmt(rep.certificate.min_derivative)}"
    )
    if rep.evn is not None:
        lines.append(f"E_vN (pure):      {fmt(rep.evn)}  slack {fmt(rep.entropy_bound_slack)}")
    lines.append(f"time: {rep.timing:.3f} s")
    return "\n".join(lines) + "\n"


def render_certificate(rep: CertificateReport, form: str) -> str:
    if form == "json":
        return HEADER + "\n" + json.dumps(certificate_doc(rep, "candidate"), indent=2) + "\n"
    chi, xi = rep.witness.chi, rep.witness.xi
    if form == "csv":
        rows = [
            {"field": "min_derivative", "value": rep.min_derivative},
            {"field": "passed", "value": rep.passed},
            {"field": "witness_chi", "value": " ".join(fmt(complex(z)) for z in chi)},
            {"field": "witness_xi", "value": " ".join(fmt(complex(z)) for z in xi)},
        ]
        return HEADER + "\n" + _csv_table(rows, ("field", "value"))
    return (
        f"min directional derivative: {fmt(rep.min_derivative)}\n"
        f"witness chi: {np.array2string(chi, precision=6)}\n"
        f"witness xi:  {np.array2string(xi, precision=6)}\n"
        f"certificate: {'passed' if rep.passed else 'FAILED'}\n"
    )


def render_sweep(rows, form: str) -> str:
    if form == "json":
        return HEADER + "\n" + json.dumps(_json_rows(rows), indent=2) + "\n"
    body = _csv_table(rows, SWEEP_COLUMNS)
    return (HEADER + "\n" + body) if form == "csv" else body


FIGURE_COLUMNS = {
    "parabola": ("s", "x00", "x11", "xplus", "min_eigenvalue"),
    "projected": ("a2", "x00", "x11", "xplus", "parabola_residual", "min_eigenvalue"),
    "intersections": ("a2", "expected", "error"),
}


def render_figure(blocks, form: str) -> str:
    if form == "json":
        return HEADER + "\n" + json.dumps({k: _json_rows(v) for k, v in blocks.items()}, indent=2) + "\n"
    parts = [HEADER] if form == "csv" else []
    for name, cols in FIGURE_COLUMNS.items():
        parts.append(f"# {name}")
        parts.append(_csv_table(blocks[name], cols).rstrip("\n"))
    return "\n".join(parts) + "\n"


# --- entry point ----------------------------------------------------------------

def _read_spec(arg: str) -> StateSpec:
    if arg == "-":
        return parse_state_spec(sys.stdin.buffer.read())
    if arg.lstrip().startswith("{"):
        return parse_state_spec(arg)
    try:
        with open(arg, "rb") as fh:
            return parse_state_spec(fh.read())
    except OSError as exc:
        raise SpecError("<input>", f"cannot read {arg!r}: {exc.strerror}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=SolverConfig.tol, help="duality-gap threshold")
    common.add_argument("--max-iters", type=int, default=SolverConfig.max_iters)
    common.add_argument("--restarts", type=int, default=SolverConfig.lmo_restarts, help="random starts per oracle call")
    common.add_argument("--seed", type=int, default=SolverConfig.seed)
    common.add_argument("--output", "-o", help="write to this file instead of stdout")
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")

    parser = argparse.ArgumentParser(prog="hs-entangle", description="Hilbert-Schmidt entanglement of two-qubit states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="closed form, numerical value and certificate for one state")
    p.add_argument("spec", nargs="?", default="-", help="JSON file, inline JSON, or '-' for stdin")

    p = sub.add_parser("certify", parents=[common], help="check optimality of a candidate basepoint")
    p.add_argument("spec", help="state: JSON file, inline JSON, or '-'")
    p.add_argument("candidate", help="candidate basepoint: JSON file, inline JSON, or '-'")

    p = sub.add_parser("sweep", parents=[common], help="tabulate a one-parameter family")
    p.add_argument("family", choices=("pure", "werner"))
    p.add_argument("-n", "--points", type=int, default=21)

    p = sub.add_parser("figure", parents=[common], help="triangle, parabola and projected pure-state curve")
    p.add_argument("-n", "--points", type=int, default=101)
    return parser


def _emit(text: str, output: Optional[str]):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = SolverConfig(max_iters=args.max_iters, tol=args.tol, lmo_restarts=args.restarts, seed=args.seed)
        if args.command == "compute":
            rep = cmd_compute(_read_spec(args.spec), cfg)
            _emit(render_report(rep, args.format), args.output)
            return EXIT_OK if rep.numerical.converged else EXIT_NOT_CONVERGED
        if args.command == "certify":
            if args.spec == "-" and args.candidate == "-":
                raise SpecError("<input>", "only one argument may read from stdin")
            rep = cmd_certify(_read_spec(args.spec), _read_spec(args.candidate), cfg)
            _emit(render_certificate(rep, args.format), args.output)
            return EXIT_OK
        if args.command == "sweep":
            rows = cmd_sweep(args.family, args.points, cfg)
            _emit(render_sweep(rows, args.format), args.output)
            return EXIT_OK if all(r["converged"] for r in rows) else EXIT_NOT_CONVERGED
        blocks = cmd_figure(args.points)
        _emit(render_figure(blocks, args.format), args.output)
        return EXIT_OK
    except CertificateRefused as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (SpecError, InvalidStateError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
