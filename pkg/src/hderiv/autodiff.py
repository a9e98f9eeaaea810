"""Forward propagation of (value, differential) pairs.

The differential of f at z0 is the real-linear map h -> sum A_k h B_k in the
first-order part of f(z0 + h) - f(z0); its trace sum A_k B_k is the
H-derivative. Differentials are kept canonical after every operation, so none
ever has more than four terms. No step commutes two quaternion factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .logarithm import DEFAULT_LOG_CONFIG, LogSolveConfig, solve_log_derivative
from .quaternion import BASIS, ONE, DomainError, Quaternion, inverse
from .sandwich import (
    IDENTITY,
    ZERO_MAP,
    CanonicalSandwich,
    SandwichForm,
    canonicalize,
    compose,
    trace,
)
from .series import (
    DEFAULT_TRUNCATION,
    EVALUATORS,
    SeriesTruncation,
    differential_order,
    increment_form,
)


@dataclass
class Diagnostics:
    """Collects truncation and conditioning data while differentiating."""

    series_terms: int | None = None
    tail_bound: float | None = None
    condition_numbers: list[float] = field(default_factory=list)

    def record_series(self, n_terms: int, bound: float) -> None:
        self.series_terms = n_terms if self.series_terms is None else max(self.series_terms, n_terms)
        self.tail_bound = bound if self.tail_bound is None else max(self.tail_bound, bound)


@dataclass(frozen=True)
class HDual:
    value: Quaternion
    differential: CanonicalSandwich

    @property
    def derivative(self) -> Quaternion:
        return trace(self.differential)


def lift_var(z0: Quaternion) -> HDual:
    return HDual(z0, IDENTITY)


def lift_const(c: Quaternion) -> HDual:
    return HDual(c, ZERO_MAP)


def _left_times(c: Quaternion, d: CanonicalSandwich) -> SandwichForm:
    # h -> c * d(h)
    return SandwichForm(tuple((c * e, b) for e, b in zip(BASIS, d.bs)))


def _right_times(d: CanonicalSandwich, c: Quaternion) -> SandwichForm:
    # h -> d(h) * c
    return SandwichForm(tuple((e, b * c) for e, b in zip(BASIS, d.bs)))


def d_add(f: HDual, g: HDual) -> HDual:
    diff = CanonicalSandwich(*(a + b for a, b in zip(f.differential.bs, g.differential.bs)))
    return HDual(f.value + g.value, diff)


def d_neg(f: HDual) -> HDual:
    return HDual(-f.value, CanonicalSandwich(*(-b for b in f.differential.bs)))


def d_sub(f: HDual, g: HDual) -> HDual:
    return d_add(f, d_neg(g))


def d_scale(c: Quaternion, f: HDual, side: str = "left") -> HDual:
    if side == "left":
        return HDual(c * f.value, canonicalize(_left_times(c, f.differential)))
    if side == "right":
        return HDual(f.value * c, canonicalize(_right_times(f.differential, c)))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def d_mul(f: HDual, g: HDual) -> HDual:
    """Product rule: D(fg)(h) = Df(h) g(z0) + f(z0) Dg(h)."""
    form = _right_times(f.differential, g.value) + _left_times(f.value, g.differential)
    return HDual(f.value * g.value, canonicalize(form))


def d_inv(f: HDual) -> HDual:
    """D(1/f)(h) = -f^-1 Df(h) f^-1."""
    if f.value.norm2() == 0.0:
        raise DomainError("inverse of vanishing function")
    fi = inverse(f.value)
    form = SandwichForm(tuple((-(fi * e), b * fi) for e, b in zip(BASIS, f.differential.bs)))
    return HDual(fi, canonicalize(form))


def d_pow(f: HDual, n: int) -> HDual:
    if n < 0:
        if f.value.norm2() == 0.0:
            raise DomainError("negative power of vanishing function")
        return d_inv(d_pow(f, -n))
    if n == 0:
        return lift_const(ONE)
    result = f
    for _ in range(n - 1):
        result = d_mul(result, f)
    return result


def d_compose(outer_diff_at_w: CanonicalSandwich | SandwichForm, outer_value: Quaternion,
              f: HDual) -> HDual:
    """Chain rule: the outer differential, built at w = f(z0), after Df."""
    return HDual(outer_value, compose(outer_diff_at_w, f.differential))


def elementary_differential(kind: str, w: Quaternion,
                            trunc: SeriesTruncation = DEFAULT_TRUNCATION,
                            diagnostics: Diagnostics | None = None) -> CanonicalSandwich:
    n_terms, bound = differential_order(w.norm(), trunc)
    if diagnostics is not None:
        diagnostics.record_series(n_terms, bound)
    return canonicalize(increment_form(kind, w, n_terms))


def d_elementary(kind: str, f: HDual, trunc: SeriesTruncation = DEFAULT_TRUNCATION,
                 diagnostics: Diagnostics | None = None) -> HDual:
    if kind not in EVALUATORS:
        raise ValueError(f"unknown elementary function {kind!r}")
    w = f.value
    outer = elementary_differential(kind, w, trunc, diagnostics)
    return d_compose(outer, EVALUATORS[kind](w, trunc), f)


def d_log(f: HDual, cfg: LogSolveConfig = DEFAULT_LOG_CONFIG,
          diagnostics: Diagnostics | None = None) -> HDual:
    sol = solve_log_derivative(f.value, cfg)
    if diagnostics is not None:
        diagnostics.condition_numbers.append(sol.condition)
    return d_compose(sol.differential(), sol.log, f)
