"""Classical channels between outcome sets and the postprocessing preorder.

A postprocessing is a row-stochastic matrix from a source outcome set to a
target outcome set. Applying it to an observable mixes the source effects
into target effects. Whether one observable is a postprocessing of another
is a single LP feasibility question over the channel entries; the returned
certificate is either the witnessing channel or a Farkas refutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .lp import FEASIBLE, LinearProgram, lp_solve, make_program
from .scalars import (
    DEFAULT_TOLERANCE,
    EXACT,
    Tolerance,
    infer_mode,
    join_modes,
    to_float_vector,
    values_of,
)
from .spaces import Effect, Observable
from . import geometry

RELATED = "related"
UNRELATED = "unrelated"


@dataclass(frozen=True)
class Postprocessing:
    """Row-stochastic transition matrix between outcome label sets."""

    source: tuple
    target: tuple
    matrix: tuple  # rows indexed by source, columns by target

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(str(x) for x in self.source))
        object.__setattr__(self, "target", tuple(str(y) for y in self.target))
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in self.matrix))
        if len(self.matrix) != len(self.source):
            raise ValueError("one matrix row per source label required")
        for r in self.matrix:
            if len(r) != len(self.target):
                raise ValueError("one matrix column per target label required")

    def entry(self, x: str, y: str):
        return self.matrix[self.source.index(x)][self.target.index(y)]

    @property
    def mode(self) -> str:
        return infer_mode(values_of(self.matrix))

    def as_float(self) -> "Postprocessing":
        return Postprocessing(self.source, self.target,
                              tuple(to_float_vector(r) for r in self.matrix))

    def is_stochastic(self, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        eps = 0 if self.mode == EXACT else tol.eps_compare
        for row in self.matrix:
            if any(v < -eps or v > 1 + eps for v in row):
                return False
            if abs(sum(row) - 1) > eps:
                return False
        return True


def identity_channel(labels: Sequence[str], mode: str = EXACT) -> Postprocessing:
    one = Fraction(1) if mode == EXACT else 1.0
    zero = Fraction(0) if mode == EXACT else 0.0
    labels = tuple(labels)
    return Postprocessing(labels, labels,
                          tuple(tuple(one if i == j else zero for j in range(len(labels)))
                                for i in range(len(labels))))


def merge_channel(labels: Sequence[str], merged: Sequence[str], into: str,
                  mode: str = EXACT) -> Postprocessing:
    """Deterministic channel sending every label in `merged` to `into`."""
    one = Fraction(1) if mode == EXACT else 1.0
    zero = Fraction(0) if mode == EXACT else 0.0
    labels = tuple(labels)
    target = tuple(lab for lab in labels if lab not in set(merged) or lab == into)
    rows = []
    for lab in labels:
        dest = into if lab in set(merged) else lab
        rows.append(tuple(one if t == dest else zero for t in target))
    return Postprocessing(labels, target, tuple(rows))


def compose(later: Postprocessing, earlier: Postprocessing) -> Postprocessing:
    """Channel equal to applying `earlier` first, then `later`."""
    if earlier.target != later.source:
        raise ValueError("channel composition: outcome sets do not match")
    rows = []
    for x in range(len(earlier.source)):
        rows.append(tuple(
            sum(earlier.matrix[x][k] * later.matrix[k][z]
                for k in range(len(earlier.target)))
            for z in range(len(later.target))))
    return Postprocessing(earlier.source, later.target, tuple(rows))


def apply(channel: Postprocessing, obs: Observable) -> Observable:
    """Postprocess an observable: (nu o A)_y = sum_x nu_xy A_x."""
    if channel.source != obs.labels:
        raise ValueError(
            f"channel source labels {channel.source} do not match observable "
            f"labels {obs.labels}")
    dim = obs.dim
    mode = join_modes(obs.mode, channel.mode)
    zero = Fraction(0) if mode == EXACT else 0.0
    outcomes = []
    for yi, y in enumerate(channel.target):
        acc = [zero] * dim
        for xi, _ in enumerate(channel.source):
            w = channel.matrix[xi][yi]
            if w == 0:
                continue
            c = obs.effects[xi].coeffs
            for i in range(dim):
                acc[i] += w * c[i]
        outcomes.append((y, Effect(tuple(acc))))
    return Observable(tuple(outcomes), obs.space)


@dataclass(frozen=True)
class RelationCertificate:
    """Outcome of a postprocessing-relation query B = nu o A."""

    verdict: str
    channel: Optional[Postprocessing] = None
    farkas: Optional[tuple] = None
    program: Optional[LinearProgram] = None
    tolerance: Optional[Tolerance] = None

    @property
    def related(self) -> bool:
        return self.verdict == RELATED


def relation_program(target: Observable, source: Observable) -> LinearProgram:
    """LP over channel entries nu_xy deciding target = nu o source."""
    xs, ys = source.labels, target.labels
    nx, ny = len(xs), len(ys)
    dim = source.dim
    mode = join_modes(source.mode, target.mode)
    one = Fraction(1) if mode == EXACT else 1.0
    zero = Fraction(0) if mode == EXACT else 0.0
    nvars = nx * ny

    def idx(xi, yi):
        return xi * ny + yi

    rows, rhs = [], []
    for xi in range(nx):
        row = [zero] * nvars
        for yi in range(ny):
            row[idx(xi, yi)] = one
        rows.append(tuple(row))
        rhs.append(one)
    for yi in range(ny):
        for i in range(dim):
            row = [zero] * nvars
            for xi in range(nx):
                row[idx(xi, yi)] = source.effects[xi].coeffs[i]
            rows.append(tuple(row))
            rhs.append(target.effects[yi].coeffs[i])
    return make_program(rows=rows, rhs=rhs)


def is_postprocessing_of(target: Observable, source: Observable,
                         tol: Tolerance = DEFAULT_TOLERANCE) -> RelationCertificate:
    """Decide whether `target` can be obtained from `source` by a channel."""
    if source.space is not None and target.space is not None \
            and source.space != target.space:
        raise ValueError("observables live on different state spaces")
    mode = join_modes(source.mode, target.mode)
    program = relation_program(target, source)
    out = lp_solve(program, mode=mode, tol=tol)
    record_tol = None if mode == EXACT else tol
    if out.verdict == FEASIBLE:
        ny = len(target.labels)
        matrix = tuple(tuple(out.solution[xi * ny + yi] for yi in range(ny))
                       for xi in range(len(source.labels)))
        channel = Postprocessing(source.labels, target.labels, matrix)
        return RelationCertificate(RELATED, channel=channel, program=program,
                                   tolerance=record_tol)
    return RelationCertificate(UNRELATED, farkas=out.farkas, program=program,
                               tolerance=record_tol)


def replay_relation(cert: RelationCertificate, target: Observable,
                    source: Observable, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Re-check a relation certificate against the pair it was issued for."""
    mode = join_modes(source.mode, target.mode)
    eps = 0 if mode == EXACT else tol.eps_feas
    if cert.related:
        if not cert.channel.is_stochastic(tol):
            return False
        recon = apply(cert.channel, source)
        for (la, ea), (lb, eb) in zip(recon.outcomes, target.outcomes):
            if la != lb:
                return False
            if any(abs(a - b) > eps for a, b in zip(ea.coeffs, eb.coeffs)):
                return False
        return True
    from .lp import verify_farkas
    return verify_farkas(relation_program(target, source), cert.farkas, tol=tol,
                         mode=mode)


def are_equivalent(a: Observable, b: Observable,
                   tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Postprocessing equivalence: channels exist in both directions."""
    return (is_postprocessing_of(b, a, tol).related
            and is_postprocessing_of(a, b, tol).related)


def _proportionality_groups(obs: Observable, tol: Tolerance):
    """Group outcome indices of nonzero effects by their ray direction."""
    mode = obs.mode
    eps = 0 if mode == EXACT else tol.eps_compare
    zero_idx, groups = [], []
    for i, eff in enumerate(obs.effects):
        if all(abs(x) <= eps for x in eff.coeffs):
            zero_idx.append(i)
            continue
        placed = False
        for grp in groups:
            rep = obs.effects[grp[0]].coeffs
            if geometry.rank([rep, eff.coeffs], tol=tol, mode=mode) == 1:
                grp.append(i)
                placed = True
                break
        if not placed:
            groups.append([i])
    return zero_idx, groups


def minimally_sufficient(obs: Observable, tol: Tolerance = DEFAULT_TOLERANCE) -> Observable:
    return minimally_sufficient_with_channels(obs, tol)[0]


def minimally_sufficient_with_channels(obs: Observable,
                                       tol: Tolerance = DEFAULT_TOLERANCE):
    """Merge proportional effects into a pairwise linearly independent form.

    Returns (merged, forward, backward) where forward maps the original
    outcomes onto the merged ones (merged = forward o original) and backward
    splits them again proportionally (original = backward o merged). Zero
    effects are dropped; each group merges into its lexicographically
    smallest label; the result is sorted by label.
    """
    mode = obs.mode
    one = Fraction(1) if mode == EXACT else 1.0
    zero = Fraction(0) if mode == EXACT else 0.0
    zero_idx, groups = _proportionality_groups(obs, tol)
    reps = []
    for grp in groups:
        label = min(obs.labels[i] for i in grp)
        coeffs = obs.effects[grp[0]].coeffs
        for i in grp[1:]:
            coeffs = tuple(a + b for a, b in zip(coeffs, obs.effects[i].coeffs))
        reps.append((label, Effect(coeffs), grp))
    reps.sort(key=lambda t: t[0])
    merged = Observable(tuple((lab, eff) for lab, eff, _ in reps), obs.space)

    target = merged.labels
    fwd_rows = []
    for i, lab in enumerate(obs.labels):
        dest = None
        for rlab, _, grp in reps:
            if i in grp:
                dest = rlab
                break
        if dest is None:
            dest = reps[0][0] if reps else lab  # zero effect, routed anywhere
        fwd_rows.append(tuple(one if t == dest else zero for t in target))
    forward = Postprocessing(obs.labels, target, tuple(fwd_rows))

    back_rows = []
    for rlab, eff, grp in reps:
        total = eff.coeffs
        j = max(range(len(total)), key=lambda k: abs(total[k]))
        row = []
        for i, lab in enumerate(obs.labels):
            if i in grp:
                row.append(obs.effects[i].coeffs[j] / total[j])
            else:
                row.append(zero)
        back_rows.append(tuple(row))
    backward = Postprocessing(target, obs.labels, tuple(back_rows))
    return merged, forward, backward


def is_postprocessing_clean(obs: Observable, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True iff every nonzero effect is indecomposable."""
    from .spaces import is_indecomposable

    if obs.space is None:
        raise ValueError("postprocessing cleanness needs the state space")
    mode = obs.mode
    eps = 0 if mode == EXACT else tol.eps_compare
    for eff in obs.effects:
        if all(abs(x) <= eps for x in eff.coeffs):
            continue
        if not is_indecomposable(eff, obs.space, tol):
            return False
    return True


def binarization(obs: Observable, label: str) -> Observable:
    """Dichotomic coarse-graining (A_label, u - A_label) of an observable."""
    eff = obs.effect(label)
    unit = obs.unit_coeffs()
    comp = Effect(tuple(u - c for u, c in zip(unit, eff.coeffs)))
    return Observable((("+", eff), ("-", comp)), obs.space)
