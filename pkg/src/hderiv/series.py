"""Power-series evaluation of exp, sin and cos with a certified truncation point.

All three functions have Taylor coefficients bounded by 1/n!, so one remainder
estimate serves all of them: after keeping degrees 0..N the omitted part is at
most sum_{n>N} |z|^n/n!, bounded by a geometric majorant once N + 2 > |z|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .quaternion import ONE, ZERO, Quaternion
from .sandwich import SandwichForm


class TruncationError(ArithmeticError):
    """The term cap was reached before the requested tail bound."""

    def __init__(self, message: str, achieved_bound: float):
        super().__init__(message)
        self.achieved_bound = achieved_bound


@dataclass(frozen=True)
class SeriesTruncation:
    eps: float = 1e-14
    n_max: int = 200

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        if self.n_max < 3:
            raise ValueError("n_max must be at least 3")


DEFAULT_TRUNCATION = SeriesTruncation()

KINDS = ("exp", "sin", "cos")


def coefficient(kind: str, n: int) -> float:
    """Taylor coefficient of z^n."""
    if kind == "exp":
        return 1.0 / math.factorial(n)
    if kind == "sin":
        return 0.0 if n % 2 == 0 else (-1) ** (n // 2) / math.factorial(n)
    if kind == "cos":
        return 0.0 if n % 2 == 1 else (-1) ** (n // 2) / math.factorial(n)
    raise ValueError(f"unknown elementary function {kind!r}")


def remainder_bound(abs_z: float, n: int) -> float:
    """Bound on sum_{k>n} |z|^k/k!; infinite while n + 2 <= |z|."""
    if abs_z == 0.0:
        return 0.0
    if n + 2 <= abs_z:
        return math.inf
    log_first = (n + 1) * math.log(abs_z) - math.lgamma(n + 2)
    return math.exp(log_first) / (1.0 - abs_z / (n + 2))


def truncation_order(abs_z: float, trunc: SeriesTruncation = DEFAULT_TRUNCATION) -> tuple[int, float]:
    """Smallest N whose remainder bound is below eps, with that bound."""
    bound = math.inf
    for n in range(trunc.n_max + 1):
        bound = remainder_bound(abs_z, n)
        if bound < trunc.eps:
            return n, bound
    raise TruncationError(
        f"series for |z|={abs_z:g} not within eps={trunc.eps:g} after "
        f"{trunc.n_max} terms (bound {bound:g})", bound)


def _eval(kind: str, z: Quaternion, trunc: SeriesTruncation) -> Quaternion:
    n_terms, _ = truncation_order(z.norm(), trunc)
    total = ZERO
    power = ONE
    for n in range(n_terms + 1):
        c = coefficient(kind, n)
        if c:
            total = total + power * c
        power = power * z
    return total


def eval_exp(z: Quaternion, trunc: SeriesTruncation = DEFAULT_TRUNCATION) -> Quaternion:
    total = ONE
    term = ONE
    n_terms, _ = truncation_order(z.norm(), trunc)
    for n in range(1, n_terms + 1):
        term = term * z / n
        total = total + term
    return total


def eval_sin(z: Quaternion, trunc: SeriesTruncation = DEFAULT_TRUNCATION) -> Quaternion:
    return _eval("sin", z, trunc)


def eval_cos(z: Quaternion, trunc: SeriesTruncation = DEFAULT_TRUNCATION) -> Quaternion:
    return _eval("cos", z, trunc)


EVALUATORS: dict[str, Callable[[Quaternion, SeriesTruncation], Quaternion]] = {
    "exp": eval_exp,
    "sin": eval_sin,
    "cos": eval_cos,
}


def tail_bound(abs_z: float, abs_h: float, n: int) -> float:
    """Bound on the part of ((z+h)^n - z^n)/n! that is second order in h.

    Valid for |h| < 1: (2^n/n!) |h|^2/(1-|h|), times |z|^(n-2) when |z| >= 1.
    """
    if not 0.0 <= abs_h < 1.0:
        raise ValueError(f"tail bound needs 0 <= |h| < 1, got {abs_h}")
    if n < 2:
        raise ValueError("tail bound is defined for n >= 2")
    bound = 2.0 ** n / math.factorial(n) * abs_h ** 2 / (1.0 - abs_h)
    if abs_z >= 1.0:
        bound *= abs_z ** (n - 2)
    return bound


def powers(z: Quaternion, n: int) -> np.ndarray:
    """Rows z^0 .. z^n as coordinate arrays."""
    out = np.empty((n + 1, 4))
    p = ONE
    for k in range(n + 1):
        out[k] = p.as_tuple()
        p = p * z
    return out


def increment_form(kind: str, z: Quaternion, n_terms: int) -> SandwichForm:
    """First-order part of f(z+h) - f(z) for f = sum_n a_n z^n, n <= n_terms.

    Expanding (z+h)^n and grouping the linear terms by the power of z standing
    to the right of h gives h -> sum_m c_m h z^m with
    c_m = sum_j a_{m+j+1} z^j.
    """
    if n_terms < 1:
        return SandwichForm()
    pw = powers(z, n_terms - 1)
    a = np.array([coefficient(kind, n) for n in range(n_terms + 1)])
    terms = []
    for m in range(n_terms):
        # c_m uses z^j for j = 0 .. n_terms - m - 1
        weights = a[m + 1:n_terms + 1]
        c = weights @ pw[:len(weights)]
        terms.append((Quaternion.from_array(c), Quaternion.from_array(pw[m])))
    return SandwichForm(tuple(terms))


def differential_order(abs_z: float, trunc: SeriesTruncation = DEFAULT_TRUNCATION) -> tuple[int, float]:
    """Degree cutoff for the increment series, with its remainder bound.

    The derivative series has terms n a_n z^(n-1), bounded by
    |z|^(n-1)/(n-1)!, so it needs one degree more than the value series.
    """
    n, bound = truncation_order(abs_z, trunc)
    return n + 1, bound
