"""Real-linear maps on the quaternions written as sums of sandwiches A h B.

A :class:`SandwichForm` is a cheap builder with any number of terms. Every
real-linear map on H has a unique :class:`CanonicalSandwich` representation
``h -> 1 h b0 + i1 h b1 + i2 h b2 + i3 h b3``, which is what differentials are
normalized to. Matrices act on coordinate column vectors (x0, x1, x2, x3).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .quaternion import BASIS, ONE, ZERO, Quaternion, format_quaternion

Term = tuple[Quaternion, Quaternion]


def left_matrix(a: Quaternion) -> np.ndarray:
    """Matrix of h -> a h."""
    a0, a1, a2, a3 = a.x0, a.x1, a.x2, a.x3
    return np.array([
        [a0, -a1, -a2, -a3],
        [a1, a0, -a3, a2],
        [a2, a3, a0, -a1],
        [a3, -a2, a1, a0],
    ])


def right_matrix(b: Quaternion) -> np.ndarray:
    """Matrix of h -> h b."""
    b0, b1, b2, b3 = b.x0, b.x1, b.x2, b.x3
    return np.array([
        [b0, -b1, -b2, -b3],
        [b1, b0, b3, -b2],
        [b2, -b3, b0, b1],
        [b3, b2, -b1, b0],
    ])


@dataclass(frozen=True)
class SandwichForm:
    terms: tuple[Term, ...] = ()

    @classmethod
    def of(cls, terms: Iterable[Term]) -> SandwichForm:
        return cls(tuple(terms))

    def __add__(self, other: SandwichForm) -> SandwichForm:
        return SandwichForm(self.terms + other.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({format_quaternion(a)}) h ({format_quaternion(b)})"
                          for a, b in self.terms)


@dataclass(frozen=True)
class CanonicalSandwich:
    b0: Quaternion = ZERO
    b1: Quaternion = ZERO
    b2: Quaternion = ZERO
    b3: Quaternion = ZERO

    @property
    def bs(self) -> tuple[Quaternion, Quaternion, Quaternion, Quaternion]:
        return (self.b0, self.b1, self.b2, self.b3)

    def as_form(self) -> SandwichForm:
        return SandwichForm(tuple(zip(BASIS, self.bs)))

    def close(self, other: CanonicalSandwich, tol: float) -> bool:
        return all(a.close(b, tol) for a, b in zip(self.bs, other.bs))

    def __str__(self) -> str:
        return str(self.as_form())


IDENTITY = CanonicalSandwich(b0=ONE)
ZERO_MAP = CanonicalSandwich()

AnyForm = SandwichForm | CanonicalSandwich


def _form(f: AnyForm) -> SandwichForm:
    return f.as_form() if isinstance(f, CanonicalSandwich) else f


def apply(form: AnyForm, h: Quaternion) -> Quaternion:
    out = ZERO
    for a, b in _form(form).terms:
        out = out + a * h * b
    return out


def trace(form: AnyForm) -> Quaternion:
    """Sum of A_k B_k; the H-derivative carried by a differential."""
    out = ZERO
    for a, b in _form(form).terms:
        out = out + a * b
    return out


def to_matrix(form: AnyForm) -> np.ndarray:
    m = np.zeros((4, 4))
    for a, b in _form(form).terms:
        m += left_matrix(a) @ right_matrix(b)
    return m


def _basis_system() -> np.ndarray:
    # column 4*i + j holds vec(L(e_i) R(e_j)); the 16 maps are a basis of R^{4x4}
    cols = [(left_matrix(ei) @ right_matrix(ej)).ravel()
            for ei in BASIS for ej in BASIS]
    return np.column_stack(cols)


_BASIS_SYSTEM = _basis_system()
_BASIS_SOLVE = np.linalg.inv(_BASIS_SYSTEM)


def from_matrix(m: np.ndarray) -> CanonicalSandwich:
    m = np.asarray(m, dtype=float)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    coeffs = (_BASIS_SOLVE @ m.ravel()).reshape(4, 4)
    return CanonicalSandwich(*(Quaternion.from_array(row) for row in coeffs))


def canonicalize(form: AnyForm) -> CanonicalSandwich:
    if isinstance(form, CanonicalSandwich):
        return form
    return from_matrix(to_matrix(form))


def compose(outer: AnyForm, inner: AnyForm) -> CanonicalSandwich:
    """Canonical form of h -> outer(inner(h))."""
    return from_matrix(to_matrix(outer) @ to_matrix(inner))


def form_from_pairs(lefts: Sequence[Quaternion], rights: Sequence[Quaternion]) -> SandwichForm:
    return SandwichForm(tuple(zip(lefts, rights)))
