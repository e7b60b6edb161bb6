"""Simulability of observables by mixing-and-postprocessing schemes.

An observable A is simulable from a set of simulators when it can be written
as A_y = sum_i p_i (nu_i o B_i)_y for a probability distribution p and
channels nu_i. Substituting M_i = p_i * nu_i linearizes the bilinear form
exactly, so membership is one LP feasibility problem: nonnegative variables
M_i[x,y] with constant row sums c_i inside each simulator, sum_i c_i = 1,
and effect-matching equalities. Feasible solutions are unfolded back into
weights and channels; infeasibility yields a Farkas certificate. Both are
replayable.

The module also hosts the derived notions: simulation irreducibility,
decomposition into irreducibles (the constructive splitting argument),
noise content, the minimal simulation number over an explicit simulator
pool, the dichotomic convex-hull conditions, closure-law diagnostics, and
compatibility via a joint observable on the product outcome set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import geometry
from .lp import FEASIBLE, LinearProgram, lp_solve, make_program, verify_farkas
from .postprocessing import (
    Postprocessing,
    apply,
    compose,
    identity_channel,
    minimally_sufficient,
    minimally_sufficient_with_channels,
)
from .scalars import (
    DEFAULT_TOLERANCE,
    EXACT,
    Tolerance,
    infer_mode,
    join_modes,
    values_of,
    vscale,
)
from .spaces import (
    Effect,
    Observable,
    decompose_into_indecomposables,
    dual_cone_rays,
    is_indecomposable,
    mix_observables,
)

SIMULABLE = "simulable"
NOT_SIMULABLE = "not_simulable"


@dataclass(frozen=True)
class SimulationCertificate:
    """Either explicit (weights, channels) or a Farkas refutation."""

    verdict: str
    weights: Optional[tuple] = None
    channels: Optional[tuple] = None
    farkas: Optional[tuple] = None
    tolerance: Optional[Tolerance] = None

    @property
    def simulable(self) -> bool:
        return self.verdict == SIMULABLE


def _common_mode(target: Observable, simulators: Sequence[Observable]) -> str:
    return infer_mode(values_of(
        [e.coeffs for e in target.effects]
        + [e.coeffs for b in simulators for e in b.effects]))


def _check_same_space(target: Observable, simulators: Sequence[Observable]):
    if not simulators:
        raise ValueError("simulators must be nonempty")
    spaces = {obs.space for obs in [target, *simulators]}
    if len(spaces) > 1:
        raise ValueError("mixed state spaces rejected")
    dims = {obs.dim for obs in [target, *simulators]}
    if len(dims) > 1:
        raise ValueError("observables live in different ambient dimensions")


def simulation_program(target: Observable,
                       simulators: Sequence[Observable]) -> LinearProgram:
    """The feasibility LP whose solutions are scaled simulation schemes.

    Variables are the blocks M_i[x,y] >= 0 followed by the weights c_i; the
    constraints are constant row sums within each simulator, total weight
    one, and effect matching.
    """
    mode = _common_mode(target, simulators)
    one = Fraction(1) if mode == EXACT else 1.0
    zero = Fraction(0) if mode == EXACT else 0.0
    ny = target.n_outcomes
    dim = target.dim

    offsets = []
    pos = 0
    for sim in simulators:
        offsets.append(pos)
        pos += sim.n_outcomes * ny
    c0 = pos
    nvars = pos + len(simulators)

    rows, rhs = [], []
    for i, sim in enumerate(simulators):
        for xi in range(sim.n_outcomes):
            row = [zero] * nvars
            for yi in range(ny):
                row[offsets[i] + xi * ny + yi] = one
            row[c0 + i] = -one
            rows.append(tuple(row))
            rhs.append(zero)
    row = [zero] * nvars
    for i in range(len(simulators)):
        row[c0 + i] = one
    rows.append(tuple(row))
    rhs.append(one)
    for yi in range(ny):
        for d in range(dim):
            row = [zero] * nvars
            for i, sim in enumerate(simulators):
                for xi in range(sim.n_outcomes):
                    row[offsets[i] + xi * ny + yi] = sim.effects[xi].coeffs[d]
            rows.append(tuple(row))
            rhs.append(target.effects[yi].coeffs[d])
    return make_program(rows=rows, rhs=rhs)


def is_simulable(target: Observable, simulators: Sequence[Observable],
                 tol: Tolerance = DEFAULT_TOLERANCE) -> SimulationCertificate:
    """Decide membership of `target` in the simulation set of `simulators`."""
    simulators = list(simulators)
    _check_same_space(target, simulators)
    mode = _common_mode(target, simulators)
    program = simulation_program(target, simulators)
    out = lp_solve(program, mode=mode, tol=tol)
    record_tol = None if mode == EXACT else tol
    if out.verdict != FEASIBLE:
        return SimulationCertificate(NOT_SIMULABLE, farkas=out.farkas,
                                     tolerance=record_tol)

    one = Fraction(1) if mode == EXACT else 1.0
    ny = target.n_outcomes
    pos = 0
    weights, channels = [], []
    n_m = sum(sim.n_outcomes * ny for sim in simulators)
    for i, sim in enumerate(simulators):
        block = out.solution[pos:pos + sim.n_outcomes * ny]
        pos += sim.n_outcomes * ny
        ci = out.solution[n_m + i]
        weights.append(ci)
        if ci == 0:
            uniform = one / ny
            matrix = tuple((uniform,) * ny for _ in range(sim.n_outcomes))
        else:
            matrix = tuple(tuple(block[xi * ny + yi] / ci for yi in range(ny))
                           for xi in range(sim.n_outcomes))
        channels.append(Postprocessing(sim.labels, target.labels, matrix))
    return SimulationCertificate(SIMULABLE, weights=tuple(weights),
                                 channels=tuple(channels), tolerance=record_tol)


def replay_simulation(cert: SimulationCertificate, target: Observable,
                      simulators: Sequence[Observable],
                      tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Re-check a simulation certificate against its instance."""
    simulators = list(simulators)
    mode = _common_mode(target, simulators)
    eps = 0 if mode == EXACT else tol.eps_feas
    if cert.simulable:
        if len(cert.weights) != len(simulators):
            return False
        if any(w < -eps or w > 1 + eps for w in cert.weights):
            return False
        if abs(sum(cert.weights) - 1) > eps:
            return False
        for chan in cert.channels:
            if not chan.is_stochastic(tol):
                return False
        dim = target.dim
        zero = Fraction(0) if mode == EXACT else 0.0
        for yi, (label, eff) in enumerate(target.outcomes):
            acc = [zero] * dim
            for w, chan, sim in zip(cert.weights, cert.channels, simulators):
                if w == 0:
                    continue
                for xi in range(sim.n_outcomes):
                    f = w * chan.matrix[xi][yi]
                    if f == 0:
                        continue
                    c = sim.effects[xi].coeffs
                    for d in range(dim):
                        acc[d] += f * c[d]
            if any(abs(a - b) > eps for a, b in zip(acc, eff.coeffs)):
                return False
        return True
    program = simulation_program(target, simulators)
    return verify_farkas(program, cert.farkas, tol=tol, mode=mode)


def observable_key(obs: Observable) -> tuple:
    """Hashable identity of an observable: its labelled effect table."""
    return tuple((lab, eff.coeffs) for lab, eff in obs.outcomes)


def deduplicate_simulators(simulators: Sequence[Observable]) -> list:
    """Remove exact duplicates, keeping first occurrences in order."""
    seen = set()
    out = []
    for sim in simulators:
        key = observable_key(sim)
        if key not in seen:
            seen.add(key)
            out.append(sim)
    return out


def pad_certificate(cert: SimulationCertificate, original: Sequence[Observable],
                    reduced: Sequence[Observable]) -> SimulationCertificate:
    """Lift a certificate over deduplicated simulators back to the full list.

    Each original entry receives the reduced entry's channel; weights go to
    the first occurrence and zero elsewhere.
    """
    if not cert.simulable:
        return cert
    reduced_keys = [observable_key(s) for s in reduced]
    weights, channels = [], []
    used = set()
    for sim in original:
        k = observable_key(sim)
        idx = reduced_keys.index(k)
        if idx in used:
            weights.append(cert.weights[idx] * 0)
        else:
            used.add(idx)
            weights.append(cert.weights[idx])
        channels.append(cert.channels[idx])
    return SimulationCertificate(SIMULABLE, weights=tuple(weights),
                                 channels=tuple(channels), tolerance=cert.tolerance)


def merge_duplicate_simulators(weights, channels, simulators) -> tuple:
    """Combine certificate entries that use the same simulator observable.

    Weights add; channels merge as the weight-average, matching the
    multiplicity-reduction argument for repeated simulators.
    """
    order = []
    grouped = {}
    for w, chan, sim in zip(weights, channels, simulators):
        k = observable_key(sim)
        if k not in grouped:
            grouped[k] = [w * 0, None, sim]
            order.append(k)
        grouped[k][0] = grouped[k][0] + w
    for w, chan, sim in zip(weights, channels, simulators):
        k = observable_key(sim)
        total = grouped[k][0]
        if total == 0:
            if grouped[k][1] is None:
                grouped[k][1] = chan
            continue
        scaled = tuple(tuple((w / total) * v for v in row) for row in chan.matrix)
        if grouped[k][1] is None:
            grouped[k][1] = Postprocessing(chan.source, chan.target, scaled)
        else:
            prev = grouped[k][1]
            summed = tuple(tuple(a + b for a, b in zip(ra, rb))
                           for ra, rb in zip(prev.matrix, scaled))
            grouped[k][1] = Postprocessing(chan.source, chan.target, summed)
    new_w, new_c, new_s = [], [], []
    for k in order:
        w, chan, sim = grouped[k]
        new_w.append(w)
        new_c.append(chan)
        new_s.append(sim)
    return tuple(new_w), tuple(new_c), new_s


def is_simulation_irreducible(obs: Observable,
                              tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Criterion on the minimally sufficient form: linearly independent
    indecomposable effects."""
    if obs.space is None:
        raise ValueError("simulation irreducibility needs the state space")
    hat = minimally_sufficient(obs, tol)
    mode = hat.mode
    for eff in hat.effects:
        if not is_indecomposable(eff, obs.space, tol):
            return False
    vecs = [e.coeffs for e in hat.effects]
    return geometry.rank(vecs, tol=tol, mode=mode) == len(vecs)


@dataclass(frozen=True)
class IrreducibleDecomposition:
    observables: tuple
    certificate: SimulationCertificate
    splits: int


def decompose_to_irreducibles(target: Observable,
                              tol: Tolerance = DEFAULT_TOLERANCE,
                              refiner=None) -> IrreducibleDecomposition:
    """Simulate `target` from finitely many simulation-irreducible observables.

    Constructive route: refine every effect into indecomposable summands,
    pass to the minimally sufficient form, and while the effects stay
    linearly dependent with coefficients beta, split off
    C_i = (1 - beta_i/max beta) B_i and D_i = (1 - beta_i/min beta) B_i,
    mixing them with weight max beta / (max beta - min beta). Channels and
    weights are composed along the recursion so the returned certificate
    replays against the input.

    The default refiner decomposes effects over the dual-cone extreme rays
    of the target's (polytopic) state space; qubit observables pass the
    spectral refiner instead.
    """
    if refiner is None:
        if target.space is None:
            raise ValueError("decomposition needs the state space or a refiner")
        refiner = lambda eff: decompose_into_indecomposables(eff, target.space, tol)
    mode = target.mode
    eps = 0 if mode == EXACT else tol.eps_compare
    one = Fraction(1) if mode == EXACT else 1.0

    refined_outcomes = []
    sources = []
    for label, eff in target.outcomes:
        parts = refiner(eff)
        for j, part in enumerate(parts):
            refined_outcomes.append((f"{label}.{j}", part))
            sources.append(label)
    if not refined_outcomes:
        raise ValueError("cannot decompose an all-zero observable")
    refined = Observable(tuple(refined_outcomes), target.space)
    zero = Fraction(0) if mode == EXACT else 0.0
    fwd_rows = [tuple(one if lab == src else zero for lab in target.labels)
                for src in sources]
    merge_to_target = Postprocessing(refined.labels, target.labels, tuple(fwd_rows))

    splits = 0

    def process(obs: Observable) -> list:
        nonlocal splits
        hat, _, back = minimally_sufficient_with_channels(obs, tol)
        vecs = [e.coeffs for e in hat.effects]
        if geometry.rank(vecs, tol=tol, mode=mode) == len(vecs):
            return [(one, hat, back)]
        cols = [tuple(v[d] for v in vecs) for d in range(len(vecs[0]))]
        beta = geometry.null_space_vector(cols, tol=tol, mode=mode)
        kappa_plus = max(beta)
        kappa_minus = min(beta)
        assert kappa_plus > eps and kappa_minus < -eps, \
            "dependence coefficients must take both signs"
        lam = kappa_plus / (kappa_plus - kappa_minus)
        c_obs = Observable(
            tuple((lab, Effect(vscale(one - b / kappa_plus, eff.coeffs)))
                  for (lab, eff), b in zip(hat.outcomes, beta)), obs.space)
        d_obs = Observable(
            tuple((lab, Effect(vscale(one - b / kappa_minus, eff.coeffs)))
                  for (lab, eff), b in zip(hat.outcomes, beta)), obs.space)
        splits += 1
        out = []
        for w, leaf, chan in process(c_obs):
            out.append((lam * w, leaf, compose(back, chan)))
        for w, leaf, chan in process(d_obs):
            out.append(((one - lam) * w, leaf, compose(back, chan)))
        return out

    parts = process(refined)
    weights = tuple(w for w, _, _ in parts)
    leaves = [leaf for _, leaf, _ in parts]
    channels = tuple(compose(merge_to_target, chan) for _, _, chan in parts)
    weights, channels, leaves = merge_duplicate_simulators(weights, channels, leaves)
    cert = SimulationCertificate(
        SIMULABLE, weights=weights, channels=channels,
        tolerance=None if mode == EXACT else tol)
    if not replay_simulation(cert, target, leaves, tol):
        raise AssertionError("irreducible decomposition certificate failed to replay")
    return IrreducibleDecomposition(tuple(leaves), cert, splits)


@dataclass(frozen=True)
class NoiseContentResult:
    """Largest trivial weight in any convex decomposition of the observable."""

    value: object
    trivial_weights: tuple
    residual: Optional[Observable]
    tolerance: Optional[Tolerance] = None


def noise_content(target: Observable,
                  tol: Tolerance = DEFAULT_TOLERANCE) -> NoiseContentResult:
    """Maximize lambda with A = lambda N + (1 - lambda) B, N trivial.

    The LP variables are m_x = lambda * t(x) jointly, which keeps the
    program linear; for each outcome and extreme state the residual
    A_x - m_x u must stay in the positive cone.
    """
    if target.space is None:
        raise ValueError("noise content needs the state space")
    space = target.space
    mode = join_modes(target.mode, space.mode)
    one = Fraction(1) if mode == EXACT else 1.0
    zero = Fraction(0) if mode == EXACT else 0.0
    n = target.n_outcomes
    K = len(space.extreme_states)
    nvars = n + n * K  # m_x then one slack per (outcome, state)
    rows, rhs = [], []
    for xi in range(n):
        for k, s in enumerate(space.extreme_states):
            row = [zero] * nvars
            row[xi] = one
            row[n + xi * K + k] = one
            rows.append(tuple(row))
            rhs.append(target.effects[xi](s))
    objective = tuple([one] * n + [zero] * (n * K))
    out = lp_solve(make_program(rows=rows, rhs=rhs, objective=objective),
                   mode=mode, tol=tol)
    assert out.verdict == FEASIBLE, "noise content LP is always feasible"
    m = out.solution[:n]
    lam = sum(m)
    record_tol = None if mode == EXACT else tol
    if lam == 0 or (mode != EXACT and lam <= tol.eps_compare):
        uniform = one / n
        return NoiseContentResult(zero if mode == EXACT else 0.0,
                                  (uniform,) * n, target, record_tol)
    t_weights = tuple(mx / lam for mx in m)
    if lam == 1 or (mode != EXACT and abs(lam - 1) <= tol.eps_compare):
        residual = Observable(
            tuple((lab, Effect(vscale(tw, space.unit)))
                  for (lab, _), tw in zip(target.outcomes, t_weights)), space)
        return NoiseContentResult(lam, t_weights, residual, record_tol)
    residual = Observable(
        tuple((lab, Effect(tuple((c - mx * u) / (one - lam)
                                 for c, u in zip(eff.coeffs, space.unit))))
              for (lab, eff), mx in zip(target.outcomes, m)), space)
    return NoiseContentResult(lam, t_weights, residual, record_tol)


def smin(targets: Sequence[Observable], pool: Sequence[Observable],
         k_max: int = 4, tol: Tolerance = DEFAULT_TOLERANCE) -> Optional[int]:
    """Smallest k <= k_max with a k-subset of the pool simulating every target.

    Exhaustive search in increasing k, subsets in lexicographic order.
    Returns None when no subset of size <= k_max works (unknown above
    k_max); the value is exact relative to the pool.
    """
    if not pool:
        raise ValueError("pool must be nonempty")
    pool = list(pool)
    for k in range(1, min(k_max, len(pool)) + 1):
        for subset in itertools.combinations(pool, k):
            if all(is_simulable(t, list(subset), tol).simulable for t in targets):
                return k
    return None


def _require_dichotomic(simulators: Sequence[Observable]):
    for sim in simulators:
        if sim.n_outcomes != 2:
            raise ValueError("simulators must all be dichotomic")


def dichotomic_hull_necessary(target: Observable,
                              simulators: Sequence[Observable],
                              tol: Tolerance = DEFAULT_TOLERANCE) -> dict:
    """Necessary condition for simulability from dichotomic observables.

    Each target effect must lie in conv({B_i effects} u {o, u}); any outside
    verdict certifies non-simulability (the converse fails in general).
    """
    simulators = list(simulators)
    _check_same_space(target, simulators)
    _require_dichotomic(simulators)
    mode = _common_mode(target, simulators)
    unit = target.unit_coeffs()
    zero = tuple(0 * u for u in unit)
    gens = [e.coeffs for sim in simulators for e in sim.effects] + [zero, tuple(unit)]
    return {lab: geometry.in_convex_hull(eff.coeffs, gens, mode=mode, tol=tol)
            for lab, eff in target.outcomes}


@dataclass(frozen=True)
class HullSimulationOutcome:
    certificate: SimulationCertificate
    method: str


def dichotomic_hull_sufficient(target: Observable,
                               simulators: Sequence[Observable],
                               tol: Tolerance = DEFAULT_TOLERANCE) -> HullSimulationOutcome:
    """Constructive simulability from convex-hull coefficients.

    Tries, in order: a single simulator with linearly independent effects; a
    dichotomic simulator family with {u, B_i(+)} linearly independent; a
    dichotomic target with arbitrary simulators. When a hypothesis holds and
    the hull memberships do, the weights and channels come straight from the
    constructive proofs. Otherwise the decision defers to the general LP.
    """
    simulators = list(simulators)
    _check_same_space(target, simulators)
    mode = _common_mode(target, simulators)
    unit = tuple(target.unit_coeffs())
    zero_vec = tuple(0 * u for u in unit)

    cert = _hull_single_independent(target, simulators, unit, zero_vec, mode, tol)
    if cert is not None:
        return HullSimulationOutcome(cert, "single-independent-simulator")
    cert = _hull_independent_dichotomic(target, simulators, unit, zero_vec, mode, tol)
    if cert is not None:
        return HullSimulationOutcome(cert, "independent-dichotomic-simulators")
    cert = _hull_dichotomic_target(target, simulators, unit, zero_vec, mode, tol)
    if cert is not None:
        return HullSimulationOutcome(cert, "dichotomic-target")
    return HullSimulationOutcome(is_simulable(target, simulators, tol), "lp")


def _finish(cert, target, simulators, tol):
    assert replay_simulation(cert, target, simulators, tol), \
        "constructed hull certificate failed to replay"
    return cert


def _hull_single_independent(target, simulators, unit, zero_vec, mode, tol):
    if len(simulators) != 1:
        return None
    sim = simulators[0]
    vecs = [e.coeffs for e in sim.effects]
    if geometry.rank(vecs, tol=tol, mode=mode) != len(vecs):
        return None
    gens = vecs + [zero_vec, unit]
    nx = len(vecs)
    one = Fraction(1) if mode == EXACT else 1.0
    matrix_rows = [[] for _ in range(nx)]
    for _, eff in target.outcomes:
        res = geometry.in_convex_hull(eff.coeffs, gens, mode=mode, tol=tol)
        if not res.inside:
            return None
        lam = res.coefficients
        lam_u = lam[nx + 1]
        for xi in range(nx):
            matrix_rows[xi].append(lam[xi] + lam_u)
    channel = Postprocessing(sim.labels, target.labels,
                             tuple(tuple(r) for r in matrix_rows))
    cert = SimulationCertificate(SIMULABLE, weights=(one,), channels=(channel,),
                                 tolerance=None if mode == EXACT else tol)
    return _finish(cert, target, simulators, tol)


def _hull_independent_dichotomic(target, simulators, unit, zero_vec, mode, tol):
    if any(sim.n_outcomes != 2 for sim in simulators):
        return None
    plus = [sim.effects[0].coeffs for sim in simulators]
    if geometry.rank([unit] + plus, tol=tol, mode=mode) != len(simulators) + 1:
        return None
    m = len(simulators)
    one = Fraction(1) if mode == EXACT else 1.0
    eps = 0 if mode == EXACT else tol.eps_compare
    gens = []
    for sim in simulators:
        gens.extend([sim.effects[0].coeffs, sim.effects[1].coeffs])
    gens += [zero_vec, unit]
    omegas = []  # per outcome y: list of (omega_plus_i, omega_minus_i)
    for _, eff in target.outcomes:
        res = geometry.in_convex_hull(eff.coeffs, gens, mode=mode, tol=tol)
        if not res.inside:
            return None
        lam = res.coefficients
        lam_u = lam[2 * m + 1]
        omegas.append([(lam[2 * i] + lam_u / m, lam[2 * i + 1] + lam_u / m)
                       for i in range(m)])
    weights = []
    for i in range(m):
        w_plus = sum(om[i][0] for om in omegas)
        w_minus = sum(om[i][1] for om in omegas)
        if mode == EXACT:
            if w_plus != w_minus:
                return None
        elif abs(w_plus - w_minus) > 10 * eps:
            return None
        weights.append(w_plus)
    channels = []
    ny = target.n_outcomes
    for i, sim in enumerate(simulators):
        if weights[i] == 0:
            matrix = ((one / ny,) * ny, (one / ny,) * ny)
        else:
            matrix = (tuple(omegas[y][i][0] / weights[i] for y in range(ny)),
                      tuple(omegas[y][i][1] / weights[i] for y in range(ny)))
        channels.append(Postprocessing(sim.labels, target.labels, matrix))
    cert = SimulationCertificate(SIMULABLE, weights=tuple(weights),
                                 channels=tuple(channels),
                                 tolerance=None if mode == EXACT else tol)
    return _finish(cert, target, simulators, tol)


def _hull_dichotomic_target(target, simulators, unit, zero_vec, mode, tol):
    if target.n_outcomes != 2:
        return None
    m = len(simulators)
    one = Fraction(1) if mode == EXACT else 1.0
    gens = [e.coeffs for sim in simulators for e in sim.effects]
    gens += [unit, zero_vec]
    res = geometry.in_convex_hull(target.effects[0].coeffs, gens, mode=mode, tol=tol)
    if not res.inside:
        return None
    lam = res.coefficients
    n_gen = len(gens)
    lam_u = lam[n_gen - 2]
    eta = []
    pos = 0
    for sim in simulators:
        eta.append([lam[pos + xi] + lam_u / m for xi in range(sim.n_outcomes)])
        pos += sim.n_outcomes
    weights = []
    for i in range(m - 1):
        weights.append(max(eta[i]))
    weights.append(one - sum(weights) if m > 1 else one)
    channels = []
    for i, sim in enumerate(simulators):
        nx = sim.n_outcomes
        if weights[i] == 0:
            row_plus = [0 * one] * nx
        else:
            row_plus = [eta[i][xi] / weights[i] for xi in range(nx)]
        matrix = tuple((rp, one - rp) for rp in row_plus)
        channels.append(Postprocessing(sim.labels, target.labels, matrix))
    cert = SimulationCertificate(SIMULABLE, weights=tuple(weights),
                                 channels=tuple(channels),
                                 tolerance=None if mode == EXACT else tol)
    return _finish(cert, target, simulators, tol)


@dataclass(frozen=True)
class ClosureDiagnostics:
    checks: int
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def check_closure_laws(sample: Sequence[Observable], base: Sequence[Observable],
                       tol: Tolerance = DEFAULT_TOLERANCE) -> ClosureDiagnostics:
    """Verify closure-operator behaviour of the simulation map on a sample.

    Checks: every base member simulates from the base; mixtures and
    postprocessings of simulable sample members stay simulable; and the
    transitivity surrogate (simulable A adjoined to the base adds nothing).
    """
    sample = list(sample)
    base = list(base)
    mode = _common_mode(sample[0] if sample else base[0], base)
    half = Fraction(1, 2) if mode == EXACT else 0.5
    checks = 0
    violations = []
    for i, b in enumerate(base):
        checks += 1
        if not is_simulable(b, base, tol).simulable:
            violations.append(f"(sim1) base member {i} not simulable from base")
    in_sim = [is_simulable(a, base, tol).simulable for a in sample]
    for i in range(len(sample) - 1):
        if not (in_sim[i] and in_sim[i + 1]):
            continue
        checks += 1
        mixed = mix_observables([sample[i], sample[i + 1]], [half, half])
        if not is_simulable(mixed, base, tol).simulable:
            violations.append(f"(sim6) mixture of samples {i},{i + 1} escapes sim(base)")
    for i, a in enumerate(sample):
        if not in_sim[i]:
            continue
        checks += 1
        post = apply(_coarse_channel(a.labels, mode), a)
        if not is_simulable(post, base, tol).simulable:
            violations.append(f"(sim7) postprocessing of sample {i} escapes sim(base)")
    for i, a in enumerate(sample):
        if not in_sim[i]:
            continue
        c = sample[(i + 1) % len(sample)]
        checks += 1
        if is_simulable(c, base + [a], tol).simulable and not in_sim[(i + 1) % len(sample)]:
            violations.append(
                f"(sim2) sample {(i + 1) % len(sample)} simulable via adjoined "
                f"sample {i} but not from base alone")
    return ClosureDiagnostics(checks, tuple(violations))


def _coarse_channel(labels, mode) -> Postprocessing:
    """Deterministic non-trivial channel: merge the first two labels."""
    one = Fraction(1) if mode == EXACT else 1.0
    zero = Fraction(0) if mode == EXACT else 0.0
    labels = tuple(labels)
    if len(labels) < 2:
        return identity_channel(labels, mode)
    target = labels[:1] + labels[2:]
    rows = []
    for lab in labels:
        dest = labels[0] if lab in labels[:2] else lab
        rows.append(tuple(one if t == dest else zero for t in target))
    return Postprocessing(labels, target, tuple(rows))


@dataclass(frozen=True)
class MonotonicityDiagnostics:
    holds: bool
    target_noise: object
    simulator_noise: tuple


def noise_monotonicity_check(target: Observable, simulators: Sequence[Observable],
                             tol: Tolerance = DEFAULT_TOLERANCE) -> MonotonicityDiagnostics:
    """Assert the simulated observable is at least as noisy as some simulator."""
    cert = is_simulable(target, simulators, tol)
    if not cert.simulable:
        raise ValueError("noise monotonicity requires a simulable target")
    mode = _common_mode(target, simulators)
    eps = 0 if mode == EXACT else tol.eps_compare
    w_target = noise_content(target, tol).value
    w_sims = tuple(noise_content(b, tol).value for b in simulators)
    return MonotonicityDiagnostics(w_target >= min(w_sims) - eps, w_target, w_sims)


@dataclass(frozen=True)
class CompatibilityResult:
    compatible: bool
    joint: Optional[Observable] = None
    marginal_channels: Optional[tuple] = None
    farkas: Optional[tuple] = None
    tolerance: Optional[Tolerance] = None


def is_compatible(targets: Sequence[Observable],
                  tol: Tolerance = DEFAULT_TOLERANCE) -> CompatibilityResult:
    """Joint-observable existence on the product outcome set.

    The joint effects are parameterized as nonnegative combinations of the
    dual-cone extreme rays, so positivity is automatic and the marginal
    requirements are linear equalities. Equivalent to smin(targets) <= 1.
    """
    targets = list(targets)
    if not targets:
        raise ValueError("targets must be nonempty")
    space = targets[0].space
    if space is None:
        raise ValueError(
            "compatibility needs a polytopic state space; qubit inputs are "
            "handled by the polyhedral bracket in the catalog module")
    if any(t.space != space for t in targets):
        raise ValueError("mixed state spaces rejected")
    mode = _common_mode(targets[0], targets)
    one = Fraction(1) if mode == EXACT else 1.0
    zero = Fraction(0) if mode == EXACT else 0.0
    rays = dual_cone_rays(space, tol)
    R = len(rays)
    dim = space.ambient_dim
    joint_outcomes = list(itertools.product(*[t.labels for t in targets]))
    n_joint = len(joint_outcomes)
    nvars = n_joint * R
    rows, rhs = [], []
    for ti, t in enumerate(targets):
        for lab_i, lab in enumerate(t.labels):
            for d in range(dim):
                row = [zero] * nvars
                for w, omega in enumerate(joint_outcomes):
                    if omega[ti] != lab:
                        continue
                    for r_i, ray in enumerate(rays):
                        row[w * R + r_i] = ray[d]
                rows.append(tuple(row))
                rhs.append(t.effects[lab_i].coeffs[d])
    out = lp_solve(make_program(rows=rows, rhs=rhs), mode=mode, tol=tol)
    record_tol = None if mode == EXACT else tol
    if out.verdict != FEASIBLE:
        return CompatibilityResult(False, farkas=out.farkas, tolerance=record_tol)
    effects = []
    for w, omega in enumerate(joint_outcomes):
        coeffs = [zero] * dim
        for r_i, ray in enumerate(rays):
            c = out.solution[w * R + r_i]
            if c != 0:
                for d in range(dim):
                    coeffs[d] += c * ray[d]
        effects.append(("|".join(omega), Effect(tuple(coeffs))))
    joint = Observable(tuple(effects), space)
    channels = []
    for ti, t in enumerate(targets):
        rows_c = []
        for omega in joint_outcomes:
            rows_c.append(tuple(one if omega[ti] == lab else zero
                                for lab in t.labels))
        channels.append(Postprocessing(joint.labels, t.labels, tuple(rows_c)))
    return CompatibilityResult(True, joint=joint, marginal_channels=tuple(channels),
                               tolerance=record_tol)
