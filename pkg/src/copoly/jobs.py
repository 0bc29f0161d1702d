"""JSON job files: object literals, dispatch and deterministic output.

A job is a single JSON object::

    {
      "ring": "rat",                       # or "int", or {"ring": "mod", "m": 3}
      "command": "fundamental",
      "objects": {"F": {"op_family": "helmholtz", "params": {"c": "1"}}},
      "operator": "F",                     # a name from "objects" or an inline literal
      "degree": 4,
      "output": "json"
    }

Exact values are always written as strings (``"-3"``, ``"1/2"``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from . import diffop
from . import multiindex as mi
from .cauchy import (
    cauchy_fundamental,
    cauchy_solve,
    cross_check_connections,
    solve_inhomogeneous_heat,
)
from .copolynomial import (
    Copolynomial,
    delta,
    delta_derivative,
    exp_family,
    from_moments,
    linear_combination,
)
from .diffop import DiffOperator, fundamental_solution, neumann_inverse_apply
from .errors import (
    CopolyError,
    DivisibilityFailure,
    HypothesisViolation,
    NotInvertible,
    ParseError,
    RingCapability,
    TruncationTooLow,
)
from .laplace import laplace, laplace_poly, residue_pairing
from .polynomial import Polynomial
from .rings import Ring, ring_from_json

COMMANDS = (
    "moments", "convolve", "apply_op", "fundamental", "solve", "laplace", "parseval",
    "cauchy", "cauchy_fundamental", "inhomogeneous_heat", "connections",
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_DIVISIBILITY = 2
EXIT_HYPOTHESIS = 3
EXIT_TRUNCATION = 4


# literals

class Resolver:
    """Turns literals (or names of entries in ``objects``) into library objects."""

    def __init__(self, ring: Ring, objects: dict | None = None):
        self.ring = ring
        self.objects = objects or {}
        self._done: dict[str, Any] = {}
        self._active: set[str] = set()

    def _lookup(self, name: str):
        if name in self._done:
            return self._done[name]
        if name not in self.objects:
            raise ParseError(f"unknown object {name!r}")
        if name in self._active:
            raise ParseError(f"object {name!r} refers to itself")
        self._active.add(name)
        try:
            obj = self.build(self.objects[name])
        finally:
            self._active.discard(name)
        self._done[name] = obj
        return obj

    def build(self, lit):
        """Build whatever ``lit`` describes: copolynomial, operator or polynomial."""
        if isinstance(lit, str):
            return self._lookup(lit)
        if isinstance(lit, list):
            return self.polynomial(lit)
        if isinstance(lit, dict):
            if "kind" in lit:
                return self.copolynomial(lit)
            if "op" in lit or "op_family" in lit:
                return self.operator(lit)
        raise ParseError(f"unrecognised literal: {lit!r}")

    def _expect(self, lit, cls, what):
        obj = self.build(lit)
        if not isinstance(obj, cls):
            raise ParseError(f"expected a {what}, got {type(obj).__name__}")
        return obj

    def copolynomial(self, lit) -> Copolynomial:
        if not isinstance(lit, dict):
            return self._expect(lit, Copolynomial, "copolynomial")
        r = self.ring
        kind = lit.get("kind")
        try:
            if kind == "delta":
                return delta(r, lit.get("n", 1))
            if kind == "delta_derivative":
                return delta_derivative(r, lit["alpha"], bool(lit.get("scaled", False)))
            if kind == "exp_family":
                return exp_family(r, r(str(lit["a"])))
            if kind == "moments":
                table = lit.get("table", [])
                n = lit.get("n") or (len(table[0]["alpha"]) if table else None)
                if n is None:
                    raise ParseError("an empty moment table needs an explicit n")
                return from_moments(r, n, [(row["alpha"], r(str(row["value"]))) for row in table])
            if kind in ("convolve", "tensor"):
                left = self.copolynomial(lit["left"])
                right = self.copolynomial(lit["right"])
                return left.convolve(right) if kind == "convolve" else left.tensor(right)
            if kind == "shift":
                return self.copolynomial(lit["of"]).shift([r(str(v)) for v in lit["h"]])
            if kind == "derivative":
                T = self.copolynomial(lit["of"])
                if lit.get("scaled"):
                    return T.scaled_derivative(lit["alpha"])
                return T.derivative(lit["alpha"])
            if kind == "linear":
                return linear_combination(
                    [(r(str(t["c"])), self.copolynomial(t["of"])) for t in lit["terms"]])
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad {kind!r} literal: {exc}") from exc
        raise ParseError(f"unknown copolynomial kind {kind!r}")

    def operator(self, lit) -> DiffOperator:
        if not isinstance(lit, dict):
            return self._expect(lit, DiffOperator, "operator")
        r = self.ring
        try:
            if "op_family" in lit:
                name = lit["op_family"]
                if name not in diffop.FAMILIES:
                    raise ParseError(f"unknown operator family {name!r}")
                return diffop.FAMILIES[name](r, lit.get("params", {}))
            terms = lit["op"]
            n = lit.get("n") or (len(terms[0]["alpha"]) if terms else None)
            if n is None:
                raise ParseError("an empty operator needs an explicit n")
            coeffs: dict = {}
            for t in terms:
                alpha = mi.as_index(t["alpha"])
                coeffs[alpha] = coeffs.get(alpha, 0) + r(str(t["a"]))
            return diffop.from_terms(r, n, coeffs)
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad operator literal: {exc}") from exc

    def polynomial(self, lit) -> Polynomial:
        if not isinstance(lit, list):
            return self._expect(lit, Polynomial, "polynomial")
        try:
            return Polynomial.from_json(self.ring, [{"alpha": t["alpha"], "c": str(t["c"])} for t in lit])
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad polynomial literal: {exc}") from exc


def dump(obj) -> Any:
    """Literal that rebuilds ``obj``."""
    if isinstance(obj, Polynomial):
        return obj.to_json()
    literal = getattr(obj, "literal", None)
    if literal is None:
        raise ValueError(f"{obj!r} has no literal form")
    return literal


# jobs

@dataclass
class JobSpec:
    ring: Ring
    command: str
    raw: dict
    degree: int | None = None
    kmax: int | None = None
    output: str = "json"
    objects: dict = field(default_factory=dict)

    @classmethod
    def from_json(cls, data: dict, unsafe_rings: bool = False) -> JobSpec:
        if not isinstance(data, dict):
            raise ParseError("a job file must hold a JSON object")
        ring_lit = data.get("ring")
        if isinstance(ring_lit, str) and "m" in data:
            ring_lit = {"ring": ring_lit, "m": data["m"]}
        ring = ring_from_json(ring_lit, unsafe=unsafe_rings)
        command = data.get("command")
        if command not in COMMANDS:
            raise ParseError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
        job = cls(ring, command, data, data.get("degree"), data.get("kmax"),
                  data.get("output", "json"), data.get("objects", {}))
        job.validate()
        return job

    def validate(self):
        for name in ("degree", "kmax"):
            v = getattr(self, name)
            if v is not None and (not isinstance(v, int) or isinstance(v, bool) or v < 0):
                raise ParseError(f"{name} must be a nonnegative integer, got {v!r}")
        if self.output not in ("json", "tsv"):
            raise ParseError(f"output must be 'json' or 'tsv', got {self.output!r}")
        if not isinstance(self.objects, dict):
            raise ParseError("objects must be a JSON object")

    def arg(self, name: str):
        if name not in self.raw:
            raise ParseError(f"command {self.command!r} needs {name!r}")
        return self.raw[name]

    def need(self, name: str) -> int:
        v = getattr(self, name)
        if v is None:
            raise ParseError(f"command {self.command!r} needs {name!r}")
        return v


@dataclass
class JobResult:
    exit_code: int
    text: str

    @property
    def ok(self) -> bool:
        return self.exit_code == EXIT_OK


def _moment_rows(T: Copolynomial, N: int) -> list[dict]:
    return [{"alpha": list(a), "value": T.ring.format(v)} for a, v in T.moments(N)]


def _series_rows(u, kmax: int, N: int) -> list[dict]:
    return [{"alpha": list(a), "k": k, "value": u.ring.format(v)} for k, a, v in u.table(kmax, N)]


def _compute(job: JobSpec):
    res = Resolver(job.ring, job.objects)
    cmd = job.command
    if cmd == "moments":
        return _moment_rows(res.copolynomial(job.arg("copolynomial")), job.need("degree"))
    if cmd == "convolve":
        T = res.copolynomial(job.arg("left")).convolve(res.copolynomial(job.arg("right")))
        return _moment_rows(T, job.need("degree"))
    if cmd == "apply_op":
        F = res.operator(job.arg("operator"))
        return _moment_rows(F.apply(res.copolynomial(job.arg("copolynomial"))), job.need("degree"))
    if cmd == "fundamental":
        return _moment_rows(fundamental_solution(res.operator(job.arg("operator"))), job.need("degree"))
    if cmd == "solve":
        F = res.operator(job.arg("operator"))
        return _moment_rows(neumann_inverse_apply(F, res.copolynomial(job.arg("rhs"))),
                            job.need("degree"))
    if cmd == "laplace":
        L = laplace(res.copolynomial(job.arg("copolynomial")), job.need("degree"))
        return [{"alpha": list(a), "value": job.ring.format(v)} for a, v in L.table()]
    if cmd == "parseval":
        T = res.copolynomial(job.arg("copolynomial"))
        p = res.polynomial(job.arg("polynomial"))
        N = job.degree if job.degree is not None else max(p.degree, 0)
        direct = T.apply(p)
        via = residue_pairing(laplace(T, N), laplace_poly(p))
        return {"pairing": job.ring.format(direct), "residue": job.ring.format(via),
                "equal": direct == via}
    if cmd in ("cauchy", "cauchy_fundamental"):
        F = res.operator(job.arg("operator"))
        unsafe = bool(job.raw.get("unsafe", False))
        if cmd == "cauchy":
            u = cauchy_solve(F, res.copolynomial(job.arg("initial")), unsafe=unsafe)
        else:
            u = cauchy_fundamental(F, unsafe=unsafe)
        return _series_rows(u, job.need("kmax"), job.need("degree"))
    if cmd == "inhomogeneous_heat":
        v = solve_inhomogeneous_heat(job.ring(str(job.arg("a"))), res.copolynomial(job.arg("source")))
        return _series_rows(v, job.need("kmax"), job.need("degree"))
    if cmd == "connections":
        report = cross_check_connections(res.operator(job.arg("operator")),
                                         job.need("kmax"), job.need("degree"))
        return report.to_json()
    raise ParseError(f"unknown command {cmd!r}")  # pragma: no cover


def format_result(result, output: str) -> str:
    if isinstance(result, list):
        if output == "tsv":
            lines = ["alpha\tk\tvalue"]
            for row in result:
                alpha = " ".join(str(a) for a in row["alpha"])
                lines.append(f"{alpha}\t{row.get('k', '-')}\t{row['value']}")
            return "\n".join(lines) + "\n"
        if not result:
            return "[]\n"
        return "[\n" + ",\n".join(json.dumps(row) for row in result) + "\n]\n"
    if output == "tsv":
        return "".join(f"{k}\t{json.dumps(v)}\n" for k, v in result.items())
    return json.dumps(result, indent=2) + "\n"


def _error(code: int, exc: Exception, **extra) -> JobResult:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    payload.update(extra)
    return JobResult(code, json.dumps(payload) + "\n")


def run_job(data: dict, unsafe_rings: bool = False, degree: int | None = None,
            kmax: int | None = None, output: str | None = None) -> JobResult:
    """Run one job; keyword overrides replace the values from the file."""
    try:
        data = dict(data) if isinstance(data, dict) else data
        if isinstance(data, dict):
            for key, value in (("degree", degree), ("kmax", kmax), ("output", output)):
                if value is not None:
                    data[key] = value
        job = JobSpec.from_json(data, unsafe_rings=unsafe_rings)
        return JobResult(EXIT_OK, format_result(_compute(job), job.output))
    except DivisibilityFailure as exc:
        return _error(EXIT_DIVISIBILITY, exc, k=exc.k, alpha=list(exc.alpha))
    except (HypothesisViolation, NotInvertible, RingCapability) as exc:
        return _error(EXIT_HYPOTHESIS, exc)
    except TruncationTooLow as exc:
        return _error(EXIT_TRUNCATION, exc)
    except (CopolyError, ValueError, TypeError) as exc:
        return _error(EXIT_PARSE, exc)
