import math

import numpy as np
from hypothesis import strategies as st

from hderiv.quaternion import Quaternion

# filled by test_acceptance, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []

coord = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False, allow_infinity=False)
quaternions = st.builds(Quaternion, coord, coord, coord, coord)
nonzero_quaternions = quaternions.filter(lambda q: q.norm() > 1e-3)


def random_quaternion(rng: np.random.Generator, radius: float = 3.0, min_norm: float = 0.0) -> Quaternion:
    """Uniform in the 4-ball of the given radius, rejecting norms below min_norm."""
    while True:
        v = rng.normal(size=4)
        v /= np.linalg.norm(v)
        r = radius * rng.uniform() ** 0.25
        if r >= min_norm:
            return Quaternion.from_array(v * r)


def random_unit_imaginary(rng: np.random.Generator) -> Quaternion:
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return Quaternion(0.0, *v)


def assert_quat_close(a: Quaternion, b: Quaternion, tol: float, rel: bool = False):
    scale = max(1.0, b.norm()) if rel else 1.0
    err = (a - b).norm()
    assert err <= tol * scale, f"{a} != {b} (|diff| = {err:.3g}, tol {tol * scale:.3g})"


def loglog_slope(xs, ys) -> float:
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    return float(np.polyfit(lx, ly, 1)[0])
