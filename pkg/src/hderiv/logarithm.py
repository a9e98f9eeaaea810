"""Principal quaternion logarithm and its H-derivative.

Differentiating z = exp(ln z) with the chain rule gives the implicit equation

    1 = sum_m c_m(w) w' w^m,    c_m(w) = sum_j w^j / (m + j + 1)!

for w = ln z and w' = (ln z)'. The right side is linear in w', so it is solved
as a 4x4 real system built from the sandwich form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quaternion import ONE, DomainError, Quaternion
from .sandwich import CanonicalSandwich, SandwichForm, apply, from_matrix, to_matrix
from .series import TruncationError, powers, remainder_bound

# beyond this the 4x4 solve is not trusted
MAX_CONDITION = 1e12


class BranchPointError(DomainError):
    pass


class SolverError(ArithmeticError):
    def __init__(self, message: str, condition: float):
        super().__init__(message)
        self.condition = condition


@dataclass(frozen=True)
class LogSolveConfig:
    m_max: int = 40
    j_max: int = 40
    eps: float = 1e-10

    def __post_init__(self):
        if self.m_max < 1 or self.j_max < 1:
            raise ValueError("m_max and j_max must be at least 1")
        if not self.eps > 0:
            raise ValueError("eps must be positive")


DEFAULT_LOG_CONFIG = LogSolveConfig()


def principal_log(z: Quaternion) -> Quaternion:
    """ln|z| + u * atan2(|v|, x0) where z = x0 + v and u = v/|v|.

    Negative reals are rejected: every unit imaginary direction gives a valid
    logarithm there and none is preferred.
    """
    r = z.norm()
    if r == 0.0:
        raise DomainError("logarithm of 0")
    x0, v = z.split()
    vn = v.norm()
    if vn == 0.0:
        if x0 > 0.0:
            return Quaternion.real(math.log(x0))
        raise BranchPointError(f"logarithm of negative real {x0:g} has no principal branch")
    return Quaternion.real(math.log(r)) + v * (math.atan2(vn, x0) / vn)


def exp_differential_form(w: Quaternion, cfg: LogSolveConfig = DEFAULT_LOG_CONFIG) -> SandwichForm:
    """The map w' -> sum_{m<=m_max} c_m(w) w' w^m, inner sums cut at j_max."""
    pw = powers(w, max(cfg.m_max, cfg.j_max))
    terms = []
    for m in range(cfg.m_max + 1):
        weights = np.array([1.0 / math.factorial(m + j + 1) for j in range(cfg.j_max + 1)])
        c = weights @ pw[:cfg.j_max + 1]
        terms.append((Quaternion.from_array(c), Quaternion.from_array(pw[m])))
    return SandwichForm(tuple(terms))


@dataclass(frozen=True)
class LogSolution:
    log: Quaternion
    derivative: Quaternion
    matrix: np.ndarray
    condition: float
    residual: float
    truncation_estimate: float

    def differential(self) -> CanonicalSandwich:
        """Differential of ln at z: the inverse of the exp differential at w."""
        return from_matrix(np.linalg.inv(self.matrix))


def solve_log_derivative(z: Quaternion, cfg: LogSolveConfig = DEFAULT_LOG_CONFIG) -> LogSolution:
    w = principal_log(z)
    form = exp_differential_form(w, cfg)
    m = to_matrix(form)
    cond = float(np.linalg.cond(m))
    if not math.isfinite(cond) or cond > MAX_CONDITION:
        raise SolverError(f"log-derivative system is ill-conditioned (cond {cond:.3g})", cond)
    x = np.linalg.solve(m, ONE.to_array())
    wp = Quaternion.from_array(x)
    residual = (apply(form, wp) - ONE).norm()
    if residual >= cfg.eps:
        raise TruncationError(
            f"log-derivative residual {residual:.3g} exceeds eps {cfg.eps:g}; "
            "increase m_max/j_max", residual)
    # every dropped (m, j) pair has m + j + 1 >= min(m_max, j_max) + 2
    dropped = remainder_bound(w.norm(), min(cfg.m_max, cfg.j_max))
    estimate = dropped * wp.norm() * float(np.linalg.norm(np.linalg.inv(m), 2))
    if estimate >= cfg.eps:
        raise TruncationError(
            f"log-derivative truncation estimate {estimate:.3g} exceeds eps {cfg.eps:g}; "
            "increase m_max/j_max", estimate)
    return LogSolution(w, wp, m, cond, residual, estimate)


def log_derivative(z: Quaternion, cfg: LogSolveConfig = DEFAULT_LOG_CONFIG) -> Quaternion:
    return solve_log_derivative(z, cfg).derivative
