"""Quadratic-field class groups, S-unit cohomology and the ambiguous class number formula."""

import json
from fractions import Fraction

from . import _core
from ._core import EffortError, InputError, MathError

__version__ = _core.__version__

__all__ = [
    "EffortError",
    "InputError",
    "MathError",
    "class_group",
    "cohomology_check",
    "explore_h0",
    "field",
    "genus_check",
    "hilbert_symbol",
    "is_global_norm",
    "norm_torus",
    "sweep",
    "units",
    "verify_chevalley",
]


def _s(places):
    if isinstance(places, str):
        return places
    return ",".join(["inf"] + [str(p) for p in places if str(p) not in ("inf", "0")])


def field(d):
    return _core.field(str(d))


def class_group(d, narrow=False):
    return _core.class_group(str(d), narrow)


def units(d, s="inf"):
    return _core.units(str(d), _s(s))


def verify_chevalley(d, s="inf"):
    return _core.verify_chevalley(str(d), _s(s))


def genus_check(d):
    return _core.genus_check(str(d))


def norm_torus(d, s="inf", t_primes=()):
    return _core.norm_torus(str(d), _s(s), [str(p) for p in t_primes])


def explore_h0(d, t_primes, s="inf", degree=0):
    return _core.explore_h0(str(d), _s(s), [str(p) for p in t_primes], degree)


def hilbert_symbol(a, b, p):
    """(a, b)_p for rationals a, b; p is a prime or "inf"."""
    return _core.hilbert_symbol(str(Fraction(a)), str(Fraction(b)), str(p))


def is_global_norm(x, d):
    return _core.is_global_norm(str(Fraction(x)), str(d))


def cohomology_check(group, tower, check):
    return _core.cohomology_check(group, tower, check)


def sweep(dmin=1, dmax=100, policy="infty", s="inf", threads=1, canonical=True):
    """Envelope of a Chevalley sweep over fundamental discriminants with dmin <= |D| <= dmax."""
    return json.loads(_core.sweep(dmin, dmax, policy, _s(s), threads, canonical))
