"""State spaces, effects, observables, and their structural predicates.

A state space is polytopic: it is given by its extreme states in a
(d+1)-dimensional ambient space together with the unit functional, with the
convention that the unit coefficient sits in the last ambient slot and
extreme states have last coordinate one. Effects are dual vectors evaluated
by the dot product; observables are finite labelled families of effects
summing to the unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from . import geometry
from .scalars import (
    DEFAULT_TOLERANCE,
    EXACT,
    Tolerance,
    coerce_vector,
    infer_mode,
    join_modes,
    to_float_vector,
    values_of,
    vdot,
    vscale,
    vsub,
)


@dataclass(frozen=True)
class StateSpace:
    """Polytopic state space: extreme states plus the unit functional."""

    name: str
    ambient_dim: int
    extreme_states: tuple
    unit: tuple

    def __post_init__(self):
        object.__setattr__(self, "extreme_states",
                           tuple(tuple(s) for s in self.extreme_states))
        object.__setattr__(self, "unit", tuple(self.unit))
        for s in self.extreme_states:
            if len(s) != self.ambient_dim:
                raise ValueError("state dimension does not match ambient_dim")
        if len(self.unit) != self.ambient_dim:
            raise ValueError("unit dimension does not match ambient_dim")

    @property
    def mode(self) -> str:
        return infer_mode(values_of(self.extreme_states) + list(self.unit))

    def as_float(self) -> "StateSpace":
        return StateSpace(self.name, self.ambient_dim,
                          tuple(to_float_vector(s) for s in self.extreme_states),
                          to_float_vector(self.unit))


@dataclass(frozen=True)
class Effect:
    """Dual-space coefficient vector; e(s) is the dot product with s."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    def __call__(self, state: Sequence):
        return vdot(self.coeffs, state)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def as_float(self) -> "Effect":
        return Effect(to_float_vector(self.coeffs))


def zero_effect(dim: int, mode: str = EXACT) -> Effect:
    z = Fraction(0) if mode == EXACT else 0.0
    return Effect((z,) * dim)


def unit_effect(space: StateSpace) -> Effect:
    return Effect(space.unit)


@dataclass(frozen=True)
class Observable:
    """Finite outcome-labelled family of effects summing to the unit."""

    outcomes: tuple  # of (label, Effect)
    space: Optional[StateSpace] = None

    def __post_init__(self):
        fixed = []
        for label, eff in self.outcomes:
            if not isinstance(eff, Effect):
                eff = Effect(tuple(eff))
            fixed.append((str(label), eff))
        object.__setattr__(self, "outcomes", tuple(fixed))

    @property
    def labels(self) -> tuple:
        return tuple(label for label, _ in self.outcomes)

    @property
    def effects(self) -> tuple:
        return tuple(eff for _, eff in self.outcomes)

    def effect(self, label: str) -> Effect:
        for lab, eff in self.outcomes:
            if lab == label:
                return eff
        raise KeyError(label)

    @property
    def n_outcomes(self) -> int:
        return len(self.outcomes)

    @property
    def dim(self) -> int:
        return self.outcomes[0][1].dim

    @property
    def mode(self) -> str:
        return infer_mode(values_of(e.coeffs for e in self.effects))

    def unit_coeffs(self) -> tuple:
        if self.space is not None:
            return tuple(self.space.unit)
        total = self.effects[0].coeffs
        for eff in self.effects[1:]:
            total = tuple(a + b for a, b in zip(total, eff.coeffs))
        return total

    def as_float(self) -> "Observable":
        return Observable(tuple((lab, eff.as_float()) for lab, eff in self.outcomes),
                          self.space.as_float() if self.space is not None else None)

    def relabelled(self, mapping: dict) -> "Observable":
        return Observable(tuple((mapping.get(lab, lab), eff)
                                for lab, eff in self.outcomes), self.space)


def observable(space: Optional[StateSpace], items) -> Observable:
    """Build an Observable from (label, coefficient-vector) pairs."""
    return Observable(tuple((lab, Effect(tuple(vec))) for lab, vec in items), space)


@dataclass(frozen=True)
class SpaceDiagnostics:
    valid: bool
    issues: tuple


def validate_state_space(space: StateSpace,
                         tol: Tolerance = DEFAULT_TOLERANCE) -> SpaceDiagnostics:
    """Check normalization, spanning, and irredundancy of the extreme states.

    Diagnostics only; never raises.
    """
    issues = []
    mode = space.mode
    eps = 0 if mode == EXACT else tol.eps_compare
    if not space.extreme_states:
        return SpaceDiagnostics(False, ("no extreme states",))
    for k, s in enumerate(space.extreme_states):
        val = vdot(space.unit, s)
        if abs(val - 1) > eps:
            issues.append(f"state {k}: unit(s) = {val}, expected 1")
    r = geometry.rank(space.extreme_states, tol=tol, mode=mode)
    if r != space.ambient_dim:
        issues.append(
            f"extreme states span a {r}-dimensional subspace of the "
            f"{space.ambient_dim}-dimensional ambient space")
    seen = {}
    for k, s in enumerate(space.extreme_states):
        key = s if mode == EXACT else tuple(round(x / tol.eps_compare) for x in s)
        if key in seen:
            issues.append(f"state {k} duplicates state {seen[key]}")
        else:
            seen[key] = k
    if len(space.extreme_states) > 2:
        for k, s in enumerate(space.extreme_states):
            others = [t for i, t in enumerate(space.extreme_states) if i != k]
            res = geometry.in_convex_hull(s, others, mode=mode, tol=tol)
            if res.inside:
                issues.append(f"state {k} is a convex combination of the others")
    return SpaceDiagnostics(not issues, tuple(issues))


def is_valid_effect(effect: Effect, space: StateSpace,
                    tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True iff 0 <= e(s) <= 1 on every extreme state."""
    if effect.dim != space.ambient_dim:
        raise ValueError("effect dimension does not match state space")
    mode = join_modes(space.mode, infer_mode(effect.coeffs))
    eps = 0 if mode == EXACT else tol.eps_compare
    for s in space.extreme_states:
        v = effect(s)
        if v < -eps or v > 1 + eps:
            return False
    return True


def is_valid_observable(obs: Observable, space: Optional[StateSpace] = None,
                        tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Labels distinct, effects valid (when a space is known), sum equals u."""
    space = space if space is not None else obs.space
    labels = obs.labels
    if len(set(labels)) != len(labels):
        return False
    mode = obs.mode
    eps = 0 if mode == EXACT else tol.eps_feas
    if space is not None:
        if any(not is_valid_effect(e, space, tol) for e in obs.effects):
            return False
        unit = space.unit
        total = [sum(e.coeffs[i] for e in obs.effects) for i in range(obs.dim)]
        return all(abs(a - b) <= eps for a, b in zip(total, unit))
    return True


def trivial_observable(space: StateSpace, dist) -> Observable:
    """Observable with effects t(x) * u for the given (label, weight) pairs."""
    total = sum(w for _, w in dist)
    if total != 1 and abs(float(total) - 1.0) > 1e-12:
        raise ValueError("trivial observable weights must sum to 1")
    return Observable(tuple((lab, Effect(vscale(w, space.unit))) for lab, w in dist),
                      space)


def mix_observables(observables: Sequence[Observable], weights) -> Observable:
    """Convex mixture on the union outcome set, without tracking the choice.

    Observables are zero-extended to the union of their label sets (order of
    first appearance) before the weighted sum.
    """
    if len(observables) != len(weights):
        raise ValueError("one weight per observable required")
    labels = []
    for obs in observables:
        for lab in obs.labels:
            if lab not in labels:
                labels.append(lab)
    dim = observables[0].dim
    mode = infer_mode(values_of(e.coeffs for o in observables for e in o.effects)
                      + list(weights))
    zero = (Fraction(0) if mode == EXACT else 0.0,) * dim
    out = []
    for lab in labels:
        acc = zero
        for w, obs in zip(weights, observables):
            if lab in obs.labels:
                acc = tuple(a + w * c for a, c in zip(acc, obs.effect(lab).coeffs))
        out.append((lab, Effect(acc)))
    return Observable(tuple(out), observables[0].space)


@lru_cache(maxsize=None)
def dual_cone_rays(space: StateSpace, tol: Tolerance = DEFAULT_TOLERANCE) -> tuple:
    """Canonical extreme rays of the positive dual cone {e : e(s) >= 0}."""
    return tuple(geometry.extreme_rays(space.extreme_states, mode=space.mode, tol=tol))


def is_indecomposable(effect: Effect, space: StateSpace,
                      tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True iff the effect spans an extreme ray of the positive dual cone.

    Tight-state rank test: the extreme states annihilated by the effect must
    have rank exactly ambient_dim - 1. Zero effects are rejected.
    """
    mode = join_modes(space.mode, infer_mode(effect.coeffs))
    eps = 0 if mode == EXACT else tol.eps_compare
    if all(abs(x) <= eps for x in effect.coeffs):
        raise ValueError("indecomposability is defined for nonzero effects only")
    tight = [s for s in space.extreme_states if abs(effect(s)) <= eps]
    return geometry.rank(tight, tol=tol, mode=mode) == space.ambient_dim - 1


def decompose_into_indecomposables(effect: Effect, space: StateSpace,
                                   tol: Tolerance = DEFAULT_TOLERANCE) -> list:
    """Write a valid effect as a finite sum of indecomposable effects.

    Rays are processed in their canonical (sorted) order and each
    coefficient is maximized greedily, so the decomposition is
    deterministic. The zero effect decomposes into the empty list.
    """
    mode = join_modes(space.mode, infer_mode(effect.coeffs))
    eps = 0 if mode == EXACT else tol.eps_compare
    if all(abs(x) <= eps for x in effect.coeffs):
        return []
    if is_indecomposable(effect, space, tol):
        return [effect]
    rays = dual_cone_rays(space, tol)
    res = geometry.conic_decompose(effect.coeffs, rays, mode=mode, tol=tol)
    if not res.inside:
        raise ValueError("effect lies outside the positive dual cone")
    parts = [Effect(vscale(c, r)) for c, r in zip(res.coefficients, rays) if c > eps]
    return parts


def is_informationally_complete(obs: Observable, space: Optional[StateSpace] = None,
                                tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True iff the effect coefficient vectors span the ambient space."""
    dim = (space or obs.space).ambient_dim if (space or obs.space) else obs.dim
    return geometry.rank([e.coeffs for e in obs.effects], tol=tol) == dim
