"""Convex geometry primitives built on the LP core.

Rank via pivoted elimination, convex-hull membership with separating
functionals, deterministic conic decomposition, and extreme-ray enumeration
for low-dimensional inequality cones.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .lp import FEASIBLE, INFEASIBLE, lp_solve, make_program
from .scalars import (
    DEFAULT_TOLERANCE,
    EXACT,
    FLOAT,
    Tolerance,
    infer_mode,
    values_of,
    vdot,
    vscale,
    vsub,
)

INSIDE = "inside"
OUTSIDE = "outside"


def rank(vectors: Sequence[Sequence], tol: Tolerance = DEFAULT_TOLERANCE,
         mode: Optional[str] = None) -> int:
    """Rank of a list of equal-length vectors by elimination with pivoting.

    Exact over rationals; in float mode a pivot below eps_rank (relative to
    the largest entry) counts as zero. An empty list has rank 0.
    """
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return 0
    dims = {len(v) for v in vectors}
    if len(dims) != 1:
        raise ValueError("rank: vectors must share one dimension")
    if mode is None:
        mode = infer_mode(values_of(vectors))
    rows = [list(v) for v in vectors]
    if mode == EXACT:
        rows = [[Fraction(x) for x in r] for r in rows]
        thresh = 0
    else:
        rows = [[float(x) for x in r] for r in rows]
        scale = max((abs(x) for r in rows for x in r), default=0.0)
        thresh = tol.eps_rank * max(scale, 1.0)
    n_rows, n_cols = len(rows), len(rows[0])
    r = 0
    for col in range(n_cols):
        piv, piv_val = -1, thresh
        for i in range(r, n_rows):
            if abs(rows[i][col]) > piv_val:
                piv, piv_val = i, abs(rows[i][col])
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        for i in range(r + 1, n_rows):
            f = rows[i][col] / prow[col]
            if f != 0:
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        r += 1
        if r == n_rows:
            break
    return r


def null_space_vector(vectors: Sequence[Sequence], tol: Tolerance = DEFAULT_TOLERANCE,
                      mode: Optional[str] = None):
    """One nonzero kernel vector of the stack of row vectors, or None.

    Deterministic: full elimination, first free column set to one, first
    nonzero entry made positive.
    """
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return None
    if mode is None:
        mode = infer_mode(values_of(vectors))
    n_cols = len(vectors[0])
    if mode == EXACT:
        rows = [[Fraction(x) for x in v] for v in vectors]
        thresh = 0
    else:
        rows = [[float(x) for x in v] for v in vectors]
        scale = max((abs(x) for r in rows for x in r), default=0.0)
        thresh = tol.eps_rank * max(scale, 1.0)
    pivots = []  # (row, col)
    r = 0
    for col in range(n_cols):
        piv, piv_val = -1, thresh
        for i in range(r, len(rows)):
            if abs(rows[i][col]) > piv_val:
                piv, piv_val = i, abs(rows[i][col])
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        for i in range(len(rows)):
            if i == r:
                continue
            f = rows[i][col] / prow[col]
            if f != 0:
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append((r, col))
        r += 1
    pivot_cols = {c for (_, c) in pivots}
    free = [c for c in range(n_cols) if c not in pivot_cols]
    if not free:
        return None
    one = Fraction(1) if mode == EXACT else 1.0
    zero = Fraction(0) if mode == EXACT else 0.0
    fc = free[0]
    out = [zero] * n_cols
    out[fc] = one
    for (i, c) in pivots:
        out[c] = -rows[i][fc] / rows[i][c]
    for x in out:
        if x != 0:
            if x < 0:
                out = [-v for v in out]
            break
    return tuple(out)


@dataclass(frozen=True)
class HullResult:
    """Convex-hull membership verdict with its certificate.

    Inside: convex coefficients over the generators. Outside: a functional
    phi with phi(point) > max over generators; `gap` is that margin.
    """

    verdict: str
    coefficients: Optional[tuple] = None
    functional: Optional[tuple] = None
    gap: Optional[object] = None
    tolerance: Optional[Tolerance] = None

    @property
    def inside(self) -> bool:
        return self.verdict == INSIDE


def in_convex_hull(point: Sequence, generators: Sequence[Sequence],
                   mode: Optional[str] = None,
                   tol: Tolerance = DEFAULT_TOLERANCE) -> HullResult:
    """Decide membership of `point` in the convex hull of `generators`."""
    point = tuple(point)
    generators = [tuple(g) for g in generators]
    if not generators:
        raise ValueError("in_convex_hull: generators must be nonempty")
    for g in generators:
        if len(g) != len(point):
            raise ValueError("in_convex_hull: dimension mismatch")
    if mode is None:
        mode = infer_mode(values_of(generators + [point]))
    dim = len(point)
    one = Fraction(1) if mode == EXACT else 1.0
    rows = []
    for i in range(dim):
        rows.append(tuple(g[i] for g in generators))
    rows.append((one,) * len(generators))
    rhs = point + (one,)
    program = make_program(rows=rows, rhs=rhs)
    out = lp_solve(program, mode=mode, tol=tol)
    if out.verdict == FEASIBLE:
        return HullResult(INSIDE, coefficients=tuple(out.solution),
                          tolerance=None if mode == EXACT else tol)
    # Farkas y = (phi, phi0) with phi.g + phi0 <= 0 for all g and
    # phi.point + phi0 > 0, so phi separates the point from the hull.
    phi = out.farkas[:dim]
    phi0 = out.farkas[dim]
    gap = vdot(phi, point) - max(vdot(phi, g) for g in generators)
    return HullResult(OUTSIDE, functional=phi, gap=gap,
                      tolerance=None if mode == EXACT else tol)


def replay_hull(result: HullResult, point: Sequence, generators: Sequence[Sequence],
                tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Check a HullResult against the instance it claims to certify."""
    mode = infer_mode(values_of(list(generators) + [list(point)]))
    eps = 0 if mode == EXACT else tol.eps_feas
    if result.inside:
        lam = result.coefficients
        if len(lam) != len(generators) or any(c < -eps for c in lam):
            return False
        if abs(sum(lam) - 1) > eps:
            return False
        recon = [sum(c * g[i] for c, g in zip(lam, generators))
                 for i in range(len(point))]
        return all(abs(a - b) <= eps for a, b in zip(recon, point))
    phi = result.functional
    return vdot(phi, point) - max(vdot(phi, g) for g in generators) > eps


@dataclass(frozen=True)
class ConicResult:
    """Conic decomposition of a vector over given rays, or a refutation."""

    verdict: str  # inside | outside
    coefficients: Optional[tuple] = None
    functional: Optional[tuple] = None
    tolerance: Optional[Tolerance] = None

    @property
    def inside(self) -> bool:
        return self.verdict == INSIDE


def conic_decompose(v: Sequence, rays: Sequence[Sequence],
                    mode: Optional[str] = None,
                    tol: Tolerance = DEFAULT_TOLERANCE) -> ConicResult:
    """Write v as a nonnegative combination of the rays, deterministically.

    The coefficient of each ray is maximized greedily in the order the rays
    are given, which yields a decomposition supported on at most dim rays
    (each positive step moves the residual to a strictly smaller face).
    Failure returns a separating functional phi with phi(v) > 0 >= phi(ray).
    """
    v = tuple(v)
    rays = [tuple(r) for r in rays]
    if not rays:
        raise ValueError("conic_decompose: rays must be nonempty")
    if mode is None:
        mode = infer_mode(values_of(rays + [v]))
    eps = 0 if mode == EXACT else tol.eps_compare
    for r in rays:
        if len(r) != len(v):
            raise ValueError("conic_decompose: dimension mismatch")
        if all(x == 0 for x in r):
            raise ValueError("conic_decompose: zero ray")
    dim = len(v)
    rows = [tuple(r[i] for r in rays) for i in range(dim)]

    feas = lp_solve(make_program(rows=rows, rhs=v), mode=mode, tol=tol)
    if feas.verdict == INFEASIBLE:
        return ConicResult(OUTSIDE, functional=feas.farkas,
                           tolerance=None if mode == EXACT else tol)

    zero = Fraction(0) if mode == EXACT else 0.0
    one = Fraction(1) if mode == EXACT else 1.0
    coeffs = [zero] * len(rays)
    residual = v
    greedy_ok = True
    for k in range(len(rays)):
        sub_rows = [tuple(r[i] for r in rays[k:]) for i in range(dim)]
        sub_obj = [one] + [zero] * (len(rays) - k - 1)
        out = lp_solve(make_program(rows=sub_rows, rhs=residual, objective=sub_obj),
                       mode=mode, tol=tol)
        if out.verdict != FEASIBLE:
            # unbounded coefficient: the ray span contains a line, so the
            # greedy maximum does not exist
            greedy_ok = False
            break
        c = out.solution[0]
        if c > eps:
            coeffs[k] = c
            residual = vsub(residual, vscale(c, rays[k]))
        if all(abs(x) <= eps for x in residual):
            break
    if not greedy_ok or any(abs(x) > eps for x in residual):
        # Fall back to the basic feasible solution, which is supported on at
        # most dim rays and reconstructs v by construction.
        coeffs = list(feas.solution)
    return ConicResult(INSIDE, coefficients=tuple(coeffs),
                       tolerance=None if mode == EXACT else tol)


def replay_conic(result: ConicResult, v: Sequence, rays: Sequence[Sequence],
                 tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    mode = infer_mode(values_of(list(rays) + [list(v)]))
    eps = 0 if mode == EXACT else tol.eps_feas
    if result.inside:
        if any(c < -eps for c in result.coefficients):
            return False
        recon = [sum(c * r[i] for c, r in zip(result.coefficients, rays))
                 for i in range(len(v))]
        return all(abs(a - b) <= eps for a, b in zip(recon, v))
    phi = result.functional
    if not vdot(phi, v) > eps:
        return False
    return all(vdot(phi, r) <= eps for r in rays)


MAX_RAY_DIM = 4


def extreme_rays(inequalities: Sequence[Sequence],
                 mode: Optional[str] = None,
                 tol: Tolerance = DEFAULT_TOLERANCE) -> list:
    """Extreme rays of the cone {x : a.x >= 0 for every inequality vector a}.

    Facet-intersection enumeration for ambient dimension <= 4: every
    (dim-1)-subset of inequality vectors with rank dim-1 contributes its
    kernel direction when one orientation satisfies all inequalities and the
    tight set has rank exactly dim-1. Rays are canonicalized (last
    coordinate scaled to 1 when nonzero, otherwise unit norm, with a
    rational fallback in exact mode) and deduplicated.
    """
    ineqs = [tuple(a) for a in inequalities]
    if not ineqs:
        raise ValueError("extreme_rays: need at least one inequality")
    dim = len(ineqs[0])
    if dim > MAX_RAY_DIM:
        raise ValueError(f"extreme_rays: ambient dimension {dim} exceeds limit {MAX_RAY_DIM}")
    if any(len(a) != dim for a in ineqs):
        raise ValueError("extreme_rays: dimension mismatch")
    if mode is None:
        mode = infer_mode(values_of(ineqs))
    eps = 0 if mode == EXACT else tol.eps_compare
    found = {}
    for subset in itertools.combinations(range(len(ineqs)), dim - 1):
        sub = [ineqs[i] for i in subset]
        if rank(sub, tol=tol, mode=mode) != dim - 1:
            continue
        direction = null_space_vector(sub, tol=tol, mode=mode)
        if direction is None:
            continue
        for cand in (direction, vscale(-1, direction)):
            vals = [vdot(a, cand) for a in ineqs]
            if all(x >= -eps for x in vals):
                tight = [ineqs[i] for i, x in enumerate(vals) if abs(x) <= eps]
                if rank(tight, tol=tol, mode=mode) == dim - 1:
                    ray = canonical_ray(cand, mode, tol)
                    found[_ray_key(ray, mode, tol)] = ray
                break
    return sorted(found.values())


def canonical_ray(ray: Sequence, mode: str, tol: Tolerance = DEFAULT_TOLERANCE):
    """Scale a ray to its canonical representative."""
    ray = tuple(ray)
    eps = 0 if mode == EXACT else tol.eps_compare
    last = ray[-1]
    if abs(last) > eps:
        return tuple(x / last for x in ray)
    sq = sum(x * x for x in ray)
    if mode == FLOAT:
        n = math.sqrt(sq)
        scaled = tuple(x / n for x in ray)
    else:
        root = _rational_sqrt(sq)
        if root is not None:
            scaled = tuple(x / root for x in ray)
        else:
            big = max(ray, key=abs)
            scaled = tuple(x / abs(big) for x in ray)
    for x in scaled:
        if x != 0:
            if x < 0:
                scaled = tuple(-v for v in scaled)
            break
    return scaled


def _rational_sqrt(q):
    q = Fraction(q)
    num = math.isqrt(q.numerator)
    den = math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def _ray_key(ray, mode, tol):
    if mode == EXACT:
        return ray
    grid = 1.0 / tol.eps_compare
    return tuple(round(x * grid) for x in ray)
