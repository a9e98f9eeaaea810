"""Acceptance criteria, one test per criterion.

Each criterion returns (passed, detail); the detail line is printed in the
pytest terminal summary. Run standalone with ``python tests/test_acceptance.py``.
"""

import json
import math
import subprocess
import sys
from pathlib import Path

import jsonschema
import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import ACCEPTANCE_LINES, loglog_slope, random_quaternion, random_unit_imaginary  # noqa: E402

from hderiv.check import REPORT_SCHEMA  # noqa: E402
from hderiv.diffops import (  # noqa: E402
    NESTED, PROBE_DIRECTIONS, SECOND_ORDER, DiffConfig, directional_quotient, fd_partial_x0,
    fueter_apply, laplacian,
)
from hderiv.expr import differentiate, evaluate, parse, propagate  # noqa: E402
from hderiv.logarithm import LogSolveConfig, exp_differential_form, principal_log, solve_log_derivative  # noqa: E402
from hderiv.quaternion import I1, I2, ONE, Quaternion, inverse, pow_int  # noqa: E402
from hderiv.sandwich import SandwichForm, apply, compose, from_matrix, to_matrix, trace  # noqa: E402
from hderiv.series import eval_cos, eval_exp, eval_sin  # noqa: E402

SEED = 31415


def rel_err(a: Quaternion, b: Quaternion) -> float:
    return (a - b).norm() / max(1.0, b.norm())


def ac1_power_rule():
    rng = np.random.default_rng(SEED)
    worst_pos = worst_neg = 0.0
    for n in range(0, 9):
        tree = parse(f"z^{n}")
        for _ in range(100):
            z = random_quaternion(rng, 3.0)
            worst_pos = max(worst_pos, rel_err(differentiate(tree, z), pow_int(z, n - 1) * float(n)
                                               if n else Quaternion()))
    for n in range(-1, -5, -1):
        tree = parse(f"z^{n}")
        for _ in range(100):
            z = random_quaternion(rng, 3.0, min_norm=0.5)
            worst_neg = max(worst_neg, rel_err(differentiate(tree, z), pow_int(z, n - 1) * float(n)))
    ok = worst_pos <= 1e-10 and worst_neg <= 1e-9
    return ok, f"max rel err n>=0 {worst_pos:.2e} (tol 1e-10), n<0 {worst_neg:.2e} (tol 1e-9)"


def ac2_elementary():
    rng = np.random.default_rng(SEED + 1)
    cases = (("exp(z)", eval_exp, 1.0), ("sin(z)", eval_cos, 1.0), ("cos(z)", eval_sin, -1.0))
    worst = 0.0
    for text, closed, sign in cases:
        tree = parse(text)
        for _ in range(100):
            z = random_quaternion(rng, 3.0)
            worst = max(worst, (differentiate(tree, z) - closed(z) * sign).norm())
    return worst <= 1e-9, f"max abs err {worst:.2e} (tol 1e-9)"


ORACLE_CORPUS = [
    # sums
    "exp(z) + sin(z)", "z^3 + cos(z)", "z^2 - 2i*z + (1+j)",
    # products, both orders
    "z * exp(z)", "exp(z) * z", "sin(z) * cos(z)", "(2-k) * z^2 * (1+i)", "z * sin(z) * exp(z)",
    # quotients, right and explicit left
    "exp(z) / (z^2 + 3)", "inv(z^2 + 3) * exp(z)", "1/(2+i - z)", "sin(z) / z", "inv(z) * cos(z)",
    "(z + 1) / (z - 2j)",
    # powers of non-variables, negative powers
    "exp(z)^3", "sin(z)^2", "(z^2 + 4)^-1", "z^-3", "(z + i)^4",
    # compositions
    "exp(sin(z))", "sin(exp(z))", "cos(z^2)", "exp(2j*z + 1)", "cos(inv(z + 3))", "sin(z^2 * i) * z",
    # logarithm
    "ln(z)", "ln(z + 3) * z", "exp(ln(z))", "ln(exp(z))", "z^2 * ln(z^2 + 4)",
]


def ac3_oracle_agreement():
    assert len(ORACLE_CORPUS) == 30
    rng = np.random.default_rng(SEED + 2)
    cfg = DiffConfig(step=1e-5)
    worst, where = 0.0, ""
    for text in ORACLE_CORPUS:
        tree = parse(text)
        for _ in range(20):
            z = random_quaternion(rng, 1.5, min_norm=0.5)
            err = (differentiate(tree, z) - fd_partial_x0(lambda q: evaluate(tree, q), z, cfg)).norm()
            if err > worst:
                worst, where = err, f"{text} at {z}"
    return worst <= 1e-6, f"30 expressions x 20 points, max err {worst:.2e} (tol 1e-6) worst: {where}"


REMAINDER_CASES = {
    "exp": ("exp(z)", eval_exp),
    "sin": ("sin(z)", eval_sin),
    "cos": ("cos(z)", eval_cos),
    "z^3": ("z^3", lambda q: q * q * q),
    "inv(2-z)": ("inv(2 - z)", lambda q: inverse(Quaternion(2.0) - q)),
}


def ac4_remainder_order():
    rng = np.random.default_rng(SEED + 3)
    steps = [10.0 ** -k for k in range(1, 6)]
    slopes = {}
    for name, (text, f) in REMAINDER_CASES.items():
        tree = parse(text)
        z = random_quaternion(rng, 1.0)
        diff = propagate(tree, z).differential
        worst = math.inf
        for _ in range(8):
            d = random_quaternion(rng, 1.0, min_norm=0.2)
            d = d / d.norm()
            rems = [(f(z + d * s) - f(z) - apply(diff, d * s)).norm() for s in steps]
            worst = min(worst, loglog_slope(steps, rems))
        slopes[name] = worst
    ok = all(s >= 1.8 for s in slopes.values())
    return ok, "min slopes " + ", ".join(f"{k} {v:.3f}" for k, v in slopes.items()) + " (need >= 1.8)"


def ac5_laplacian():
    rng = np.random.default_rng(SEED + 4)
    worst = 0.0
    for _ in range(10):
        z = random_quaternion(rng, 3.0)
        worst = max(worst, (laplacian(lambda q: q * q, z, SECOND_ORDER) - Quaternion(-4.0)).norm())
    return worst <= 1e-6, f"max |lap(z^2) + 4| {worst:.2e} at step 1e-3 (tol 1e-6)"


def ac6_regularity():
    rng = np.random.default_rng(SEED + 5)
    lap_cube = lambda q: laplacian(lambda p: p * p * p, q, NESTED)
    worst = 0.0
    for _ in range(5):
        z = random_quaternion(rng, 3.0)
        for side in ("right", "left"):
            worst = max(worst, fueter_apply(lap_cube, z, side, NESTED).norm())
    ident = (fueter_apply(lambda q: q, random_quaternion(rng), "right") - Quaternion(-2.0)).norm()
    ok = worst < 1e-3 and ident <= 1e-6
    return ok, f"max |D lap(z^3)| {worst:.2e} (tol 1e-3); |D_r z + 2| {ident:.2e} (tol 1e-6)"


def _admissible(rng, lo=0.1, hi=10.0):
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    return Quaternion.from_array(v * math.exp(rng.uniform(math.log(lo), math.log(hi))))


def ac7_logarithm():
    rng = np.random.default_rng(SEED + 6)
    round_trip = 0.0
    for _ in range(1000):
        z = _admissible(rng)
        round_trip = max(round_trip, (eval_exp(principal_log(z)) - z).norm())
    cfg = LogSolveConfig()
    residual = fd_gap = 0.0
    for _ in range(50):
        z = _admissible(rng, 0.3, 5.0)
        sol = solve_log_derivative(z, cfg)
        residual = max(residual, (apply(exp_differential_form(sol.log, cfg), sol.derivative) - ONE).norm())
        fd_gap = max(fd_gap, (sol.derivative - fd_partial_x0(principal_log, z)).norm())
    slice_gap = 0.0
    for _ in range(50):
        u = random_unit_imaginary(rng)
        z = Quaternion(rng.uniform(-3, 3)) + u * rng.uniform(0.05, 3.0)
        slice_gap = max(slice_gap, (solve_log_derivative(z, cfg).derivative - inverse(z)).norm())
    ok = round_trip <= 1e-10 and residual < 1e-9 and fd_gap <= 1e-6 and slice_gap < 1e-8
    return ok, (f"round trip {round_trip:.2e} (1e-10), residual {residual:.2e} (1e-9), "
                f"vs FD {fd_gap:.2e} (1e-6), slice vs 1/z {slice_gap:.2e} (1e-8)")


def ac8_nonexistence():
    square = lambda q: q * q
    r1 = directional_quotient(square, I2, ONE, "right", 1e-6)
    ri = directional_quotient(square, I2, I1, "right", 1e-6)
    gap = (r1 - ri).norm()
    a, b = Quaternion(1, -2, 0.5, 3), Quaternion(-0.5, 0.25, 1, 0)
    affine = lambda q: a * q + b
    # s = 1e-6 leaves ~3e-10 of cancellation noise in f(z0+h) - f(z0); larger steps show exactness
    spread = 0.0
    for s in (1.0, 1e-1, 1e-2, 1e-3):
        qs = [directional_quotient(affine, I2, d, "right", s) for d in PROBE_DIRECTIONS]
        spread = max(spread, max((q - a).norm() for q in qs))
    tiny = max((directional_quotient(affine, I2, d, "right", 1e-6) - a).norm() for d in PROBE_DIRECTIONS)
    ok = gap >= 1.9 and spread <= 1e-10
    return ok, (f"z^2 quotient gap {gap:.6f} (need >= 1.9); az+b deviation {spread:.2e} for s in 1..1e-3 "
                f"(tol 1e-10), {tiny:.1e} at s=1e-6 (rounding only)")


def _random_form(rng):
    n = int(rng.integers(1, 6))
    return SandwichForm.of((random_quaternion(rng, 2.0), random_quaternion(rng, 2.0)) for _ in range(n))


def ac9_sandwich():
    rng = np.random.default_rng(SEED + 7)
    trace_gap = round_trip = compose_gap = 0.0
    for _ in range(200):
        f, g = _random_form(rng), _random_form(rng)
        trace_gap = max(trace_gap, (trace(f) - apply(f, ONE)).norm())
        m = to_matrix(f)
        round_trip = max(round_trip, float(np.abs(to_matrix(from_matrix(m)) - m).max()))
        product = m @ to_matrix(g)
        compose_gap = max(compose_gap, float(np.abs(to_matrix(compose(f, g)) - product).max())
                          / max(1.0, float(np.abs(product).max())))
    ok = trace_gap == 0.0 and round_trip <= 1e-12 and compose_gap <= 1e-12
    return ok, (f"trace vs apply(1) {trace_gap:.2e} (exact), matrix round trip {round_trip:.2e} (1e-12), "
                f"compose vs product {compose_gap:.2e} (rel 1e-12)")


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "hderiv", *argv], capture_output=True, text=True)


def ac10_cli():
    standing = _cli("check", "--standing", "--json")
    doc = json.loads(standing.stdout)
    jsonschema.validate(doc, REPORT_SCHEMA)
    injected = _cli("check", "exp(z)", "--at", "1+i,0.5j", "--tol", "1e-20")
    malformed = _cli("check", "exp(z", "--at", "1")
    ok = standing.returncode == 0 and injected.returncode == 1 and malformed.returncode == 2
    return ok, (f"standing corpus ({len(doc['results'])} checks) exit {standing.returncode}, "
                f"tol 1e-20 exit {injected.returncode}, malformed exit {malformed.returncode}, JSON valid")


CRITERIA = [
    ("AC1 power rule", ac1_power_rule),
    ("AC2 elementary derivatives", ac2_elementary),
    ("AC3 oracle agreement", ac3_oracle_agreement),
    ("AC4 remainder order", ac4_remainder_order),
    ("AC5 laplacian of z^2", ac5_laplacian),
    ("AC6 regularity of lap(z^3)", ac6_regularity),
    ("AC7 logarithm", ac7_logarithm),
    ("AC8 one-sided quotients", ac8_nonexistence),
    ("AC9 sandwich algebra", ac9_sandwich),
    ("AC10 CLI contract", ac10_cli),
]


@pytest.mark.parametrize("name, criterion", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(name, criterion):
    ok, detail = criterion()
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for name, criterion in CRITERIA:
        ok, detail = criterion()
        failures += not ok
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    sys.exit(1 if failures else 0)
