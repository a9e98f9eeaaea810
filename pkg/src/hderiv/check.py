"""Cross-check automatic H-derivatives against the finite-difference partial."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .autodiff import Diagnostics
from .diffops import FIRST_ORDER, DiffConfig, fd_partial_x0
from .expr import EvaluationError, Expr, evaluate, parse, parse_quaternion, propagate
from .logarithm import DEFAULT_LOG_CONFIG, LogSolveConfig
from .quaternion import Quaternion
from .series import DEFAULT_TRUNCATION, SeriesTruncation

SCHEMA_ID = "hderiv-report/1"

_QUAT = {"type": "array", "items": {"type": "number"}, "minItems": 4, "maxItems": 4}
_MAYBE_QUAT = {"oneOf": [_QUAT, {"type": "null"}]}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "expression", "results"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "expression": {"type": "string"},
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["expression", "point", "ad_derivative", "fd_derivative",
                             "abs_error", "tolerance", "pass", "error", "diagnostics"],
                "additionalProperties": False,
                "properties": {
                    "expression": {"type": "string"},
                    "point": _QUAT,
                    "ad_derivative": _MAYBE_QUAT,
                    "fd_derivative": _MAYBE_QUAT,
                    "abs_error": {"type": ["number", "null"], "minimum": 0},
                    "tolerance": {"type": "number", "exclusiveMinimum": 0},
                    "pass": {"type": "boolean"},
                    "error": {"type": ["string", "null"]},
                    "diagnostics": {
                        "type": "object",
                        "required": ["series_terms", "tail_bound", "condition_numbers"],
                        "additionalProperties": False,
                        "properties": {
                            "series_terms": {"type": ["integer", "null"]},
                            "tail_bound": {"type": ["number", "null"]},
                            "condition_numbers": {"type": "array", "items": {"type": "number"}},
                        },
                    },
                },
            },
        },
    },
}


@dataclass
class CheckReport:
    expression: str
    point: Quaternion
    tolerance: float
    ad_derivative: Quaternion | None = None
    fd_derivative: Quaternion | None = None
    abs_error: float | None = None
    error: str | None = None
    diagnostics: Diagnostics = field(default_factory=Diagnostics)

    @property
    def passed(self) -> bool:
        return self.error is None and self.abs_error is not None and self.abs_error <= self.tolerance

    def to_json(self) -> dict:
        def q(v):
            return None if v is None else list(v.as_tuple())

        return {
            "expression": self.expression,
            "point": q(self.point),
            "ad_derivative": q(self.ad_derivative),
            "fd_derivative": q(self.fd_derivative),
            "abs_error": self.abs_error,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "error": self.error,
            "diagnostics": {
                "series_terms": self.diagnostics.series_terms,
                "tail_bound": self.diagnostics.tail_bound,
                "condition_numbers": list(self.diagnostics.condition_numbers),
            },
        }


def check_point(expr: Expr, text: str, z0: Quaternion, cfg: DiffConfig = FIRST_ORDER,
                trunc: SeriesTruncation = DEFAULT_TRUNCATION,
                log_cfg: LogSolveConfig = DEFAULT_LOG_CONFIG) -> CheckReport:
    report = CheckReport(text, z0, cfg.tol)
    try:
        dual = propagate(expr, z0, trunc, log_cfg, text, report.diagnostics)
        report.ad_derivative = dual.derivative
        report.fd_derivative = fd_partial_x0(lambda q: evaluate(expr, q, trunc, log_cfg, text), z0, cfg)
    except (ArithmeticError, ValueError) as exc:
        root = exc.__cause__ if isinstance(exc, EvaluationError) and exc.__cause__ else exc
        report.error = f"{type(root).__name__}: {exc}"
        return report
    err = (report.ad_derivative - report.fd_derivative).norm()
    if not math.isfinite(err):
        report.error = "OverflowError: non-finite derivative"
        return report
    report.abs_error = err
    return report


def cmd_check(expr_text: str, points: Sequence[Quaternion], cfg: DiffConfig = FIRST_ORDER,
              trunc: SeriesTruncation = DEFAULT_TRUNCATION,
              log_cfg: LogSolveConfig = DEFAULT_LOG_CONFIG) -> list[CheckReport]:
    """One report per point, in input order. Parse errors propagate."""
    expr = parse(expr_text)
    return [check_point(expr, expr_text, p, cfg, trunc, log_cfg) for p in points]


def report_document(expression: str, reports: Iterable[CheckReport]) -> dict:
    return {"schema": SCHEMA_ID, "expression": expression,
            "results": [r.to_json() for r in reports]}


def read_corpus(lines: Iterable[str]) -> list[tuple[str, Quaternion]]:
    """Parse ``EXPR ; POINT`` lines; blank lines and ``#`` comments are skipped."""
    entries = []
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        expr_text, sep, point_text = line.rpartition(";")
        if not sep:
            raise ValueError(f"corpus line {lineno}: expected 'EXPR ; POINT'")
        entries.append((expr_text.strip(), parse_quaternion(point_text)))
    return entries


def load_corpus(path: str | Path) -> list[tuple[str, Quaternion]]:
    with open(path, encoding="utf-8") as fh:
        return read_corpus(fh)


def standing_corpus() -> list[tuple[str, Quaternion]]:
    text = resources.files("hderiv").joinpath("data/standing_corpus.txt").read_text(encoding="utf-8")
    return read_corpus(text.splitlines())


def run_corpus(entries: Sequence[tuple[str, Quaternion]], cfg: DiffConfig = FIRST_ORDER,
               trunc: SeriesTruncation = DEFAULT_TRUNCATION,
               log_cfg: LogSolveConfig = DEFAULT_LOG_CONFIG) -> list[CheckReport]:
    cache: dict[str, Expr] = {}
    reports = []
    for text, point in entries:
        if text not in cache:
            cache[text] = parse(text)
        reports.append(check_point(cache[text], text, point, cfg, trunc, log_cfg))
    return reports
