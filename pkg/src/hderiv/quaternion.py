"""Quaternion values and the coordinate-recovery identities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np


class DomainError(ValueError):
    """An operation was asked for a value outside its domain."""


@dataclass(frozen=True, slots=True)
class Quaternion:
    """x0 + x1*i1 + x2*i2 + x3*i3 with double-precision coordinates."""

    x0: float = 0.0
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0

    @classmethod
    def real(cls, r: float) -> Quaternion:
        return cls(float(r), 0.0, 0.0, 0.0)

    @classmethod
    def from_array(cls, a: Iterable[float]) -> Quaternion:
        x0, x1, x2, x3 = (float(v) for v in a)
        return cls(x0, x1, x2, x3)

    def to_array(self) -> np.ndarray:
        return np.array([self.x0, self.x1, self.x2, self.x3])

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x0, self.x1, self.x2, self.x3)

    # arithmetic

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.x0 + other.x0, self.x1 + other.x1,
                              self.x2 + other.x2, self.x3 + other.x3)
        if isinstance(other, (int, float)):
            return Quaternion(self.x0 + other, self.x1, self.x2, self.x3)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.x0 - other.x0, self.x1 - other.x1,
                              self.x2 - other.x2, self.x3 - other.x3)
        if isinstance(other, (int, float)):
            return Quaternion(self.x0 - other, self.x1, self.x2, self.x3)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(other - self.x0, -self.x1, -self.x2, -self.x3)
        return NotImplemented

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.x0, -self.x1, -self.x2, -self.x3)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, other)
        if isinstance(other, (int, float)):
            return Quaternion(self.x0 * other, self.x1 * other,
                              self.x2 * other, self.x3 * other)
        return NotImplemented

    def __rmul__(self, other):
        # reals are central, so the side does not matter for scalars
        if isinstance(other, (int, float)):
            return self.__mul__(other)
        return NotImplemented

    def __truediv__(self, other):
        # only real divisors; quaternion division must pick a side explicitly
        if isinstance(other, (int, float)):
            return Quaternion(self.x0 / other, self.x1 / other,
                              self.x2 / other, self.x3 / other)
        return NotImplemented

    def conj(self) -> Quaternion:
        return Quaternion(self.x0, -self.x1, -self.x2, -self.x3)

    def norm2(self) -> float:
        return self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3

    def norm(self) -> float:
        return math.sqrt(self.norm2())

    __abs__ = norm

    def inverse(self) -> Quaternion:
        return inverse(self)

    def scalar_part(self) -> float:
        return self.x0

    def vector_part(self) -> Quaternion:
        return Quaternion(0.0, self.x1, self.x2, self.x3)

    def split(self) -> tuple[float, Quaternion]:
        """Return (x0, v) with self = x0 + v and v pure imaginary."""
        return self.x0, self.vector_part()

    def is_real(self) -> bool:
        return self.x1 == 0.0 and self.x2 == 0.0 and self.x3 == 0.0

    def close(self, other: Quaternion, tol: float) -> bool:
        """Componentwise comparison with an explicit absolute tolerance."""
        return (abs(self.x0 - other.x0) <= tol and abs(self.x1 - other.x1) <= tol
                and abs(self.x2 - other.x2) <= tol and abs(self.x3 - other.x3) <= tol)

    def __str__(self) -> str:
        return format_quaternion(self)


ZERO = Quaternion()
ONE = Quaternion(1.0)
I1 = Quaternion(0.0, 1.0)
I2 = Quaternion(0.0, 0.0, 1.0)
I3 = Quaternion(0.0, 0.0, 0.0, 1.0)
BASIS = (ONE, I1, I2, I3)


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product with i1 i2 = i3, i2 i3 = i1, i3 i1 = i2."""
    a0, a1, a2, a3 = a.x0, a.x1, a.x2, a.x3
    b0, b1, b2, b3 = b.x0, b.x1, b.x2, b.x3
    return Quaternion(
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def inverse(q: Quaternion) -> Quaternion:
    n2 = q.norm2()
    if n2 == 0.0:
        raise DomainError("no inverse of 0")
    return q.conj() / n2


def pow_int(q: Quaternion, n: int) -> Quaternion:
    if n < 0:
        if q.norm2() == 0.0:
            raise DomainError("negative power of 0")
        return inverse(pow_int(q, -n))
    result = ONE
    for _ in range(n):
        result = result * q
    return result


def real_coordinates(q: Quaternion, method: str = "hausdorff") -> tuple[float, float, float, float]:
    """Recover (x0, x1, x2, x3) using quaternion products only.

    ``hausdorff`` sandwiches q between the units; ``conjugate`` combines q with
    its conjugate. Each formula yields a real quaternion (or a real multiple of
    a unit), and the coordinate is read off from the real part only.
    """
    i1, i2, i3 = I1, I2, I3
    if method == "hausdorff":
        a = i1 * q * i1
        b = i2 * q * i2
        c = i3 * q * i3
        parts = (
            (q - a - b - c) * 0.25,
            inverse(i1 * 4.0) * (q - a + b + c),
            inverse(i2 * 4.0) * (q + a - b + c),
            inverse(i3 * 4.0) * (q + a + b - c),
        )
    elif method == "conjugate":
        qc = q.conj()
        parts = (
            (qc + q) * 0.5,
            (i1 * qc - q * i1) * 0.5,
            (i2 * qc - q * i2) * 0.5,
            (i3 * qc - q * i3) * 0.5,
        )
    else:
        raise ValueError(f"unknown coordinate method {method!r}")
    return tuple(p.x0 for p in parts)  # type: ignore[return-value]


def _fmt_real(x: float) -> str:
    s = np.format_float_positional(x, unique=True, trim="-")
    return "0" if s in ("-0", "0") else s


def format_quaternion(q: Quaternion) -> str:
    """Render as ``a+bi+cj+dk``, dropping zero terms; never scientific notation."""
    out = ""
    for coeff, unit in zip(q.as_tuple(), ("", "i", "j", "k")):
        if coeff == 0.0:
            continue
        s = _fmt_real(coeff)
        if out and not s.startswith("-"):
            out += "+"
        out += s + unit
    return out or "0"
