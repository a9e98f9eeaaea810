"""Finite-difference oracles: the real-axis partial, one-sided difference
quotients, the Fueter operators and the four-variable Laplacian.

Every function takes a plain callable ``f(q) -> Quaternion``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .quaternion import BASIS, I1, I2, I3, ONE, ZERO, DomainError, Quaternion, inverse

Func = Callable[[Quaternion], Quaternion]


@dataclass(frozen=True)
class DiffConfig:
    step: float = 1e-5
    scheme: str = "central"
    tol: float = 1e-6

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("step must be positive")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.scheme not in ("central", "forward"):
            raise ValueError(f"unknown scheme {self.scheme!r}")


FIRST_ORDER = DiffConfig(step=1e-5)
SECOND_ORDER = DiffConfig(step=1e-3)
# Fueter of a Laplacian: fourth-order differences, so a wide step
NESTED = DiffConfig(step=1e-2, tol=1e-3)

_S = 1.0 / math.sqrt(2.0)
PROBE_DIRECTIONS: tuple[Quaternion, ...] = (
    ONE, I1, I2, I3,
    Quaternion(0.5, 0.5, 0.5, 0.5),
    Quaternion(_S, -_S, 0.0, 0.0),
    Quaternion(0.0, 0.0, _S, _S),
    Quaternion(0.5, 0.5, -0.5, -0.5),
)


def partial(f: Func, z0: Quaternion, k: int, cfg: DiffConfig = FIRST_ORDER) -> Quaternion:
    """Difference approximation of df/dx_k at z0."""
    e = BASIS[k] * cfg.step
    if cfg.scheme == "central":
        return (f(z0 + e) - f(z0 - e)) / (2.0 * cfg.step)
    return (f(z0 + e) - f(z0)) / cfg.step


def fd_partial_x0(f: Func, z0: Quaternion, cfg: DiffConfig = FIRST_ORDER) -> Quaternion:
    return partial(f, z0, 0, cfg)


def directional_quotient(f: Func, z0: Quaternion, direction: Quaternion, side: str,
                         s: float) -> Quaternion:
    """[f(z0+h) - f(z0)] h^-1 (right) or h^-1 [f(z0+h) - f(z0)] (left), h = s*dir."""
    if direction.norm2() == 0.0:
        raise DomainError("direction must be nonzero")
    if s == 0.0:
        raise DomainError("step must be nonzero")
    h = direction * s
    df = f(z0 + h) - f(z0)
    if side == "right":
        return df * inverse(h)
    if side == "left":
        return inverse(h) * df
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def quotient_spread(f: Func, z0: Quaternion, side: str, s: float,
                    directions: Sequence[Quaternion] = PROBE_DIRECTIONS) -> float:
    """Largest pairwise distance between difference quotients over a probe set.

    A one-sided derivative exists only if this tends to 0 with s.
    """
    qs = [directional_quotient(f, z0, d, side, s) for d in directions]
    return max(((a - b).norm() for a, b in itertools.combinations(qs, 2)), default=0.0)


def fueter_apply(f: Func, z0: Quaternion, side: str, cfg: DiffConfig = FIRST_ORDER) -> Quaternion:
    """sum_k (df/dx_k) e_k for side='right', sum_k e_k (df/dx_k) for side='left'."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    central = DiffConfig(step=cfg.step, scheme="central", tol=cfg.tol)
    out = ZERO
    for k, e in enumerate(BASIS):
        d = partial(f, z0, k, central)
        out = out + (d * e if side == "right" else e * d)
    return out


def laplacian(f: Func, z0: Quaternion, cfg: DiffConfig = SECOND_ORDER) -> Quaternion:
    s = cfg.step
    f0 = f(z0) * 2.0
    out = ZERO
    for e in BASIS:
        d = e * s
        out = out + (f(z0 + d) - f0 + f(z0 - d))
    return out / (s * s)


def is_regular(f: Func, z0: Quaternion, side: str, cfg: DiffConfig = FIRST_ORDER) -> bool:
    return fueter_apply(f, z0, side, cfg).norm() <= cfg.tol
