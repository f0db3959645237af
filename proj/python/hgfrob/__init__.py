"""Higher-genus and descendent potentials of semisimple Frobenius manifolds."""

import json
from fractions import Fraction

from . import _core
from ._core import Model, NumericalError, ValidationError

__all__ = [
    "Model",
    "NumericalError",
    "ValidationError",
    "acceptance",
    "descendent",
    "frame",
    "genus",
    "hodge_lemma",
    "rmatrix",
    "wk",
]


def _coords(point):
    return [str(Fraction(x)) for x in point]


def _number(text):
    # Real values come back as decimal strings, complex ones as {"re", "im"}.
    value = json.loads(text)
    if isinstance(value, dict):
        return complex(float(value["re"]), float(value["im"])), value
    return float(value), value


def wk(g, indices):
    """Exact psi-class intersection number as a Fraction."""
    return Fraction(_core.wk(g, list(indices)))


def genus(model, point, g, precision=256):
    """F^g at a point. Returns (float approximation, exact decimal string)."""
    return _number(_core.genus(model, _coords(point), g, precision))


def frame(model, point, precision=256):
    return json.loads(_core.frame(model, _coords(point), precision))


def rmatrix(model, point, K, precision=256):
    return json.loads(_core.rmatrix(model, _coords(point), K, precision))


def descendent(model, t, g, precision=256):
    """Descendent potential at the curve point t = [t_0, t_1, ...]."""
    doc = {"Kmax": len(t) - 1, "t": [[str(Fraction(x)) for x in row] for row in t]}
    return _number(_core.descendent(model, json.dumps(doc), g, precision))


def hodge_lemma(count=2, genus=2, degree=4):
    return _core.hodge_lemma(count, genus, degree)


def acceptance(only=()):
    return _core.acceptance(list(only))
