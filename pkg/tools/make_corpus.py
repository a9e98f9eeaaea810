"""Regenerate src/hderiv/data/standing_corpus.txt.

Closed forms get points with |z| <= 3; random composites get |z| <= 1.5 so
nested exponentials stay small enough for a 1e-5 central difference.
"""

import sys
from pathlib import Path

import numpy as np

from hderiv.quaternion import Quaternion, format_quaternion

CLOSED_FORMS = [
    # powers, including negative ones
    "z", "z^0", "z^2", "z^3", "z^5", "z^8", "z^-1", "z^-2", "z^-4",
    # elementary functions
    "exp(z)", "sin(z)", "cos(z)",
    # constant factors on either side
    "(2-i) * z^2", "z^2 * (2-i)", "3 * cos(z)",
    # sums, products, quotients
    "exp(z) + sin(z)", "z * exp(z)", "exp(z) * z", "sin(z) * cos(z)",
    "exp(z) / (z^2 + 3)", "inv(z^2 + 3) * exp(z)", "1/(2+i - z)", "inv(2 - z)",
    # chain rule
    "exp(z)^3", "sin(z)^2", "exp(sin(z))", "cos(z^2)", "sin(2j*z + 1)",
    # logarithm
    "ln(z)", "exp(ln(z))", "ln(z)*z^2", "ln(exp(z))",
    "z*z - z^2",
]

LEAVES = ["z", "(1+i)", "(0.5-j)", "2k", "3"]
UNARY = ["exp", "sin", "cos", "inv"]
BINARY = ["+", "-", "*", "/"]


def random_expr(rng, depth):
    if depth == 0:
        return "z" if rng.uniform() < 0.6 else LEAVES[rng.integers(len(LEAVES))]
    r = rng.uniform()
    if r < 0.35:
        return f"{UNARY[rng.integers(len(UNARY))]}({random_expr(rng, depth - 1)})"
    if r < 0.5:
        return f"({random_expr(rng, depth - 1)})^{rng.integers(2, 4)}"
    op = BINARY[rng.integers(len(BINARY))]
    return f"({random_expr(rng, depth - 1)} {op} {random_expr(rng, depth - 1)})"


def point(rng, radius):
    v = rng.normal(size=4)
    v *= radius * rng.uniform(0.3, 1.0) / np.linalg.norm(v)
    return format_quaternion(Quaternion.from_array(np.round(v, 3)))


def main(out):
    rng = np.random.default_rng(2024)
    lines = ["# EXPR ; POINT  (regenerate with tools/make_corpus.py)"]
    for text in CLOSED_FORMS:
        for _ in range(3):
            lines.append(f"{text} ; {point(rng, 3.0)}")
    composites = []
    while len(composites) < 20:
        text = random_expr(rng, 2)
        if "z" in text and text not in composites:
            composites.append(text)
    for text in composites:
        for _ in range(3):
            lines.append(f"{text} ; {point(rng, 1.5)}")
    Path(out).write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/hderiv/data/standing_corpus.txt")
