"""H-derivatives of functions of one quaternion variable."""

from .autodiff import HDual, d_add, d_compose, d_elementary, d_inv, d_log, d_mul, d_pow, d_scale, lift_const, lift_var
from .diffops import DiffConfig, directional_quotient, fd_partial_x0, fueter_apply, laplacian
from .expr import ParseError, differentiate, evaluate, parse, parse_quaternion, render
from .logarithm import LogSolveConfig, log_derivative, principal_log
from .quaternion import I1, I2, I3, ONE, ZERO, DomainError, Quaternion, inverse, mul, pow_int, real_coordinates
from .sandwich import CanonicalSandwich, SandwichForm, apply, canonicalize, compose, from_matrix, to_matrix, trace
from .series import SeriesTruncation, TruncationError, eval_cos, eval_exp, eval_sin, tail_bound

__version__ = "0.1.0"
