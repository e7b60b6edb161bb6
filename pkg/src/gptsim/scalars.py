"""Scalar arithmetic contexts: exact rationals or tolerance-based floats.

Every computation in this package runs in one of two modes. In exact mode
all numbers are `fractions.Fraction` (integers are accepted and promoted)
and all comparisons are exact. In float mode numbers are Python floats and
comparisons use a `Tolerance`. A single input may not mix the two; the mode
of a computation is inferred from its data and enforced up front.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

EXACT = "exact"
FLOAT = "float"

Number = Fraction | float | int
Vec = tuple


class ModeError(TypeError):
    """Raised when exact and float numbers are mixed in one input."""


@dataclass(frozen=True)
class Tolerance:
    """Comparison thresholds used by every float-mode computation.

    eps_rank governs pivot/rank decisions, eps_feas constraint residuals,
    eps_compare generic value comparisons.
    """

    eps_rank: float = 1e-9
    eps_feas: float = 1e-9
    eps_compare: float = 1e-9

    def __post_init__(self):
        for name in ("eps_rank", "eps_feas", "eps_compare"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOLERANCE = Tolerance()


def infer_mode(values: Iterable) -> str:
    """Classify a flat iterable of numbers as exact or float.

    Integers are mode-neutral and count as exact unless a float appears.
    Mixing Fraction and float raises ModeError.
    """
    saw_fraction = False
    saw_float = False
    for v in values:
        if isinstance(v, bool):
            raise ModeError("booleans are not scalars")
        if isinstance(v, Fraction):
            saw_fraction = True
        elif isinstance(v, int):
            pass
        elif isinstance(v, float):
            saw_float = True
        else:
            raise ModeError(f"unsupported scalar type {type(v).__name__}")
    if saw_fraction and saw_float:
        raise ModeError("mixed exact/float arithmetic is forbidden")
    return FLOAT if saw_float else EXACT


def join_modes(*modes: str) -> str:
    """Combine inferred modes of several inputs, rejecting a mix."""
    out = EXACT
    for m in modes:
        if m not in (EXACT, FLOAT):
            raise ValueError(f"unknown mode {m!r}")
        if m == FLOAT:
            out = FLOAT
    # A genuine mix is caught at infer_mode level (Fraction vs float); two
    # inputs of different pure modes are coerced by the caller explicitly.
    if EXACT in modes and FLOAT in modes:
        raise ModeError("inputs disagree on arithmetic mode; convert explicitly")
    return out


def as_exact(x: Number) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise ModeError(f"cannot use {x!r} in exact mode; floats must be converted explicitly")


def as_float(x: Number) -> float:
    return float(x)


def coerce_vector(v: Sequence[Number], mode: str) -> Vec:
    conv = as_exact if mode == EXACT else as_float
    return tuple(conv(x) for x in v)


def to_float_vector(v: Sequence[Number]) -> Vec:
    return tuple(float(x) for x in v)


def vdot(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch {len(a)} vs {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def vadd(a: Sequence, b: Sequence) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: Sequence) -> Vec:
    return tuple(c * x for x in a)


def vzero(dim: int, mode: str) -> Vec:
    z = Fraction(0) if mode == EXACT else 0.0
    return (z,) * dim


def is_zero_vector(v: Sequence, mode: str, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    if mode == EXACT:
        return all(x == 0 for x in v)
    return all(abs(x) <= tol.eps_compare for x in v)


def norm2_squared(v: Sequence):
    return sum(x * x for x in v)


def norm2(v: Sequence) -> float:
    return math.sqrt(float(norm2_squared(v)))


def norm1(v: Sequence):
    return sum(abs(x) for x in v)


def values_of(vectors: Iterable[Sequence]) -> list:
    """Flatten an iterable of vectors for mode inference."""
    out = []
    for v in vectors:
        out.extend(v)
    return out
