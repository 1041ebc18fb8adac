"""Python access to the foldkit core."""

from fractions import Fraction

from . import _foldkit
from ._foldkit import (
    InputError,
    InternalError,
    crystal_census,
    datum,
    mult,
    repcheck,
    roots,
    run,
    uminus,
)

__all__ = [
    "InputError",
    "InternalError",
    "ch_a",
    "crystal_census",
    "datum",
    "fixed_census",
    "fold",
    "mult",
    "repcheck",
    "roots",
    "run",
    "uminus",
    "verify",
    "weyl_dim",
]


def fold(quiver):
    """Folded datum of a quiver file: labels, form, gcm, type, delta."""
    return _foldkit.fold(str(quiver))


def fixed_census(quiver, weight, depth):
    """Automorphism-fixed crystal nodes of B(weight) per weight, up to height depth."""
    return _foldkit.fixed_census(str(quiver), list(weight), depth)


def weyl_dim(form, weight):
    return int(_foldkit.weyl_dim(form, list(weight)))


def ch_a(quiver, weight, depth, crystal_check=False):
    """Ch^a(W) truncated at V_0 <= depth, as {Fraction exponent: coefficient}."""
    return {Fraction(int(p), int(q)): c for p, q, c in _foldkit.ch_a(str(quiver), list(weight), depth, crystal_check)}


def verify(quiver, weight, depth, crystal_check=False):
    """(verified, report text)."""
    return _foldkit.verify(str(quiver), list(weight), depth, crystal_check)
