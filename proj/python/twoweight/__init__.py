"""Python access to the dyadic two-weight toolkit.

Instances and reports are plain dicts in the same JSON shape the command line
tool reads and writes.
"""

import json
import math

from . import _core
from ._core import ParseError, stein_constant

__version__ = _core.__version__

__all__ = [
    "ParseError",
    "batch",
    "direct_testing_constant",
    "dual_testing_constant",
    "exact_norm",
    "generate",
    "stein_constant",
    "trace",
    "verify",
]


def _exponent(x):
    if isinstance(x, str):
        return x
    return "inf" if math.isinf(x) else repr(float(x))


def _dump(obj):
    if isinstance(obj, dict) and isinstance(obj.get("r"), float) and math.isinf(obj["r"]):
        obj = dict(obj, r="inf")
    return json.dumps(obj, allow_nan=False)


def generate(seed, dimension=1, depth=2, p=2.0, r=2.0, lambda_preset="unit", weights="unit"):
    """A seeded instance as a dict."""
    return json.loads(
        _core.generate(seed, dimension, depth, _exponent(p), _exponent(r), lambda_preset, weights)
    )


def verify(instance, seed=0, restarts=16, iterations=200, tol=1e-9):
    """Testing constants, norm estimates and the theorem checks as a report dict."""
    return json.loads(_core.verify(_dump(instance), seed, restarts, iterations, tol))


def trace(instance, f, a, tol=1e-9):
    """Proof trace for f (one value per leaf) and a (cube id -> value, or a list)."""
    return json.loads(_core.trace(_dump(instance), json.dumps(list(f) if not isinstance(f, dict) else f),
                                  json.dumps(a if isinstance(a, dict) else list(a)), tol))


def direct_testing_constant(instance):
    return _core.direct_testing_constant(_dump(instance))


def dual_testing_constant(instance, seed=0, restarts=16, iterations=200):
    """(lower, upper) bracket for the dual testing constant."""
    return _core.dual_testing_constant(_dump(instance), seed, restarts, iterations)


def exact_norm(instance):
    """The exact operator norm for p = r = 2, otherwise None."""
    return _core.exact_norm(_dump(instance))


def batch(seed=0, count=10, restarts=16, iterations=200, tol=1e-9, threads=0):
    """Batch CSV text for seeds [seed, seed + count)."""
    return _core.batch(seed, count, restarts, iterations, tol, threads)
