"""Simulability decisions, certificates, and derived quantities."""

import math
from fractions import Fraction

import pytest

from oracles import polytope_noise_content_direct, qubit_noise_content_grid

from gptsim import qubit as qb
from gptsim.catalog import (
    hexagon_noise_example,
    polygon_irreducibles,
    qubit_suite,
    random_observable,
    square_bit,
    tetrahedron_rational,
)
from gptsim.lp import INFEASIBLE, lp_solve
from gptsim.postprocessing import apply, merge_channel
from gptsim.qubit import as_vector_observable
from gptsim.simulation import (
    check_closure_laws,
    decompose_to_irreducibles,
    deduplicate_simulators,
    dichotomic_hull_necessary,
    dichotomic_hull_sufficient,
    is_compatible,
    is_simulable,
    is_simulation_irreducible,
    noise_content,
    noise_monotonicity_check,
    pad_certificate,
    replay_simulation,
    simulation_program,
    smin,
)
from gptsim.spaces import Effect, observable, trivial_observable

F = Fraction
HALF = F(1, 2)


def test_identity_simulation(sq):
    cert = is_simulable(sq.E, [sq.E])
    assert cert.simulable
    assert replay_simulation(cert, sq.E, [sq.E])


def test_mixed_spaces_rejected(sq, trit):
    with pytest.raises(ValueError):
        is_simulable(sq.E, [trit.distinguishing])


def test_c_half_mixture_simulable(suite):
    sims = [as_vector_observable(suite.X).as_float(),
            as_vector_observable(suite.Y).as_float()]
    target = as_vector_observable(suite.ct(1.0 / math.sqrt(2.0)))
    cert = is_simulable(target, sims)
    assert cert.simulable
    assert replay_simulation(cert, target, sims)


def test_ct_above_threshold_not_simulable(suite):
    sims = [as_vector_observable(suite.X).as_float(),
            as_vector_observable(suite.Y).as_float()]
    target = as_vector_observable(suite.ct(0.8))
    cert = is_simulable(target, sims)
    assert not cert.simulable
    assert replay_simulation(cert, target, sims)
    # the same LP, checked at the solver level
    out = lp_solve(simulation_program(target, sims))
    assert out.verdict == INFEASIBLE


def test_hexagon_quarter_certificate_weights():
    ex = hexagon_noise_example(0.25)
    cert = ex.certificate
    assert cert.simulable
    assert max(abs(w - 1.0 / 3.0) for w in cert.weights) < 1e-9


def test_deduplicate_and_certificate_lift(suite):
    x = as_vector_observable(suite.X)
    y = as_vector_observable(suite.Y)
    sims = [x, x, y]
    reduced = deduplicate_simulators(sims)
    assert reduced == [x, y]
    target = as_vector_observable(suite.X)
    cert_red = is_simulable(target, reduced)
    cert_full = pad_certificate(cert_red, sims, reduced)
    assert replay_simulation(cert_full, target, sims)
    assert is_simulable(target, sims).simulable == \
        is_simulable(target, reduced).simulable


def test_irreducibility_verdicts(sq, suite):
    assert is_simulation_irreducible(sq.E)
    assert qb.is_simulation_irreducible(suite.tetrahedron)
    quarter = F(1, 4)
    a4 = observable(None, [("+1", (2 * quarter, F(0), F(0), quarter)),
                           ("-1", (-2 * quarter, F(0), F(0), quarter)),
                           ("+2", (F(0), 2 * quarter, F(0), quarter)),
                           ("-2", (F(0), -2 * quarter, F(0), quarter))])
    # postprocessing clean (all rank one) yet reducible
    from gptsim.qubit import QubitEffect, QubitObservable
    a4_q = QubitObservable((("+1", QubitEffect(F(-1, 2), (HALF, 0, 0))),
                            ("-1", QubitEffect(F(-1, 2), (-HALF, 0, 0))),
                            ("+2", QubitEffect(F(-1, 2), (0, HALF, 0))),
                            ("-2", QubitEffect(F(-1, 2), (0, -HALF, 0)))))
    assert qb.is_postprocessing_clean(a4_q)
    assert not qb.is_simulation_irreducible(a4_q)


def test_decompose_four_outcome_mixture_into_x_and_y():
    from gptsim.qubit import QubitEffect, QubitObservable, spectral_refiner

    a4 = QubitObservable((("+1", QubitEffect(-0.5, (0.5, 0, 0))),
                          ("-1", QubitEffect(-0.5, (-0.5, 0, 0))),
                          ("+2", QubitEffect(-0.5, (0, 0.5, 0))),
                          ("-2", QubitEffect(-0.5, (0, -0.5, 0)))))
    vec = as_vector_observable(a4)
    dec = decompose_to_irreducibles(vec, refiner=spectral_refiner)
    assert len(dec.observables) == 2
    assert sorted(float(w) for w in dec.certificate.weights) == [0.5, 0.5]
    directions = set()
    for leaf in dec.observables:
        for eff in leaf.effects:
            big = max(range(4), key=lambda d: abs(eff.coeffs[d]))
            if big < 3:
                directions.add(big)
    assert directions == {0, 1}  # one leaf along x, one along y
    assert replay_simulation(dec.certificate, vec, list(dec.observables))


def test_decompose_irreducible_is_singleton(sq):
    dec = decompose_to_irreducibles(sq.E)
    assert len(dec.observables) == 1
    assert dec.splits == 0


def test_decompose_hexagon_trivial(hexagon):
    third = 1.0 / 3.0
    triv = trivial_observable(hexagon.space, [("a", third), ("b", third),
                                              ("c", 1.0 - 2 * third)])
    dec = decompose_to_irreducibles(triv)
    assert replay_simulation(dec.certificate, triv, list(dec.observables))
    for leaf in dec.observables:
        assert is_simulation_irreducible(leaf)


def test_decompose_split_budget(sq, rng):
    # each split drops one nonzero outcome of the refined form
    from gptsim.spaces import decompose_into_indecomposables

    for _ in range(5):
        obs = random_observable(sq.space, rng)
        refined_size = sum(
            len(decompose_into_indecomposables(eff, sq.space))
            for eff in obs.effects)
        dec = decompose_to_irreducibles(obs)
        assert dec.splits <= max(0, refined_size - 1)


def test_noise_content_values(sq, hexagon, suite):
    triv = trivial_observable(sq.space, [("a", HALF), ("b", HALF)])
    assert noise_content(triv).value == 1
    assert noise_content(sq.E).value == 0
    # sharp qubit observables carry no intrinsic trivial noise
    assert qb.noise_content(suite.Z) == 0.0
    assert abs(qb.noise_content(suite.Z) - qubit_noise_content_grid(suite.Z)) < 1e-4
    # direct oracle agreement on the polytopic side
    for lam in (0.1, 0.25, 0.5):
        ex = hexagon_noise_example(lam)
        got = noise_content(ex.observable).value
        want = polytope_noise_content_direct(ex.observable)
        assert abs(got - want) < 1e-9
        assert got >= lam - 1e-9


def test_noise_content_residual_replays(sq, rng):
    for _ in range(5):
        obs = random_observable(sq.space, rng)
        res = noise_content(obs)
        lam = res.value
        if res.residual is None or lam == 1:
            continue
        for (lab, eff), tw in zip(obs.outcomes, res.trivial_weights):
            recon = tuple(lam * tw * u + (1 - lam) * b
                          for u, b in zip(sq.space.unit,
                                          res.residual.effect(lab).coeffs))
            assert all(a == b for a, b in zip(recon, eff.coeffs))


def test_smin_examples(sq, suite, rng):
    xyz = [as_vector_observable(o) for o in (suite.X, suite.Y, suite.Z)]
    assert smin(xyz, xyz, k_max=3) == 3
    ab = [as_vector_observable(suite.X).as_float(),
          as_vector_observable(suite.Y).as_float()]
    ct7 = as_vector_observable(suite.ct(0.7))
    assert smin([ab[0], ab[1], ct7], ab, k_max=2) == 2
    targets = [random_observable(sq.space, rng) for _ in range(10)]
    assert smin(targets, [sq.E, sq.F], k_max=2) <= 2


def test_smin_unknown_above_kmax(suite):
    xyz = [as_vector_observable(o) for o in (suite.X, suite.Y, suite.Z)]
    assert smin(xyz, xyz, k_max=2) is None


def test_hull_necessary(suite, hexagon):
    ex = hexagon_noise_example(0.25)
    results = dichotomic_hull_necessary(ex.observable, list(ex.simulators))
    assert all(r.inside for r in results.values())

    rat = tetrahedron_rational()
    binar = [rat[f"C{i}"] for i in (1, 2, 3, 4)]
    inside = dichotomic_hull_necessary(rat["B"], binar)
    assert all(r.inside for r in inside.values())
    # ... and yet the tetrahedron is not simulable from its binarizations:
    # the hull condition is necessary, not sufficient
    assert not is_simulable(rat["B"], binar).simulable

    sims = [as_vector_observable(suite.X).as_float(),
            as_vector_observable(suite.Y).as_float()]
    c9 = as_vector_observable(suite.ct(0.9))
    outside = dichotomic_hull_necessary(c9, sims)
    assert any(not r.inside for r in outside.values())
    assert not is_simulable(c9, sims).simulable


def test_hull_sufficient_patterns(sq, suite):
    # (c) single simulator with linearly independent effects
    rat = tetrahedron_rational()
    out = dichotomic_hull_sufficient(rat["B"], [rat["B"]])
    assert out.method == "single-independent-simulator"
    assert out.certificate.simulable

    # (b) dichotomic simulators with independent plus effects: the octahedron
    xyz = [as_vector_observable(o).as_float()
           for o in (suite.X, suite.Y, suite.Z)]
    inner = as_vector_observable(
        qubit_suite().ct(0.7))  # passes the octahedron test
    out = dichotomic_hull_sufficient(inner, xyz)
    assert out.method == "independent-dichotomic-simulators"
    assert out.certificate.simulable
    assert replay_simulation(out.certificate, inner, xyz)

    # (a) dichotomic target, arbitrary simulators
    mid = observable(sq.space, [
        ("+", tuple(HALF * (a + b) for a, b in zip(sq.E.effects[0].coeffs,
                                                   sq.F.effects[0].coeffs))),
        ("-", tuple(HALF * (a + b) for a, b in zip(sq.E.effects[1].coeffs,
                                                   sq.F.effects[1].coeffs)))])
    out = dichotomic_hull_sufficient(mid, [sq.E, sq.F])
    assert out.certificate.simulable
    assert replay_simulation(out.certificate, mid, [sq.E, sq.F])


def test_hull_sufficient_defers_to_lp(suite):
    rat = tetrahedron_rational()
    binar = [rat[f"C{i}"] for i in (1, 2, 3, 4)]
    out = dichotomic_hull_sufficient(rat["B"], binar)
    assert out.method == "lp"
    assert not out.certificate.simulable


def test_closure_laws_small(sq, rng):
    sample = [random_observable(sq.space, rng) for _ in range(6)]
    diag = check_closure_laws(sample, [sq.E, sq.F])
    assert diag.ok


def test_closure_base_without_target(suite):
    x = as_vector_observable(suite.X)
    y = as_vector_observable(suite.Y)
    diag = check_closure_laws([y], [x])
    assert diag.ok  # sim1 holds; Y is simply not in sim({X})
    assert not is_simulable(y, [x]).simulable


def test_noise_monotonicity(sq, hexagon):
    ex = hexagon_noise_example(0.25)
    diag = noise_monotonicity_check(ex.observable, list(ex.simulators))
    assert diag.holds
    diag = noise_monotonicity_check(sq.E, [sq.E])
    assert diag.holds
    assert diag.target_noise == min(diag.simulator_noise)
    triv = trivial_observable(sq.space, [("a", HALF), ("b", HALF)])
    assert noise_monotonicity_check(triv, [sq.E, sq.F]).holds
    with pytest.raises(ValueError):
        noise_monotonicity_check(sq.E, [sq.F])


def test_compatibility(sq, trit, rng):
    g = trit.distinguishing
    a = random_observable(trit.space, rng)
    b = random_observable(trit.space, rng)
    res = is_compatible([a, b])
    assert res.compatible
    for chan, target in zip(res.marginal_channels, (a, b)):
        assert apply(chan, res.joint).effects == target.effects

    res = is_compatible([sq.E, sq.F])
    assert not res.compatible
    assert res.farkas is not None

    nu = merge_channel(sq.E.labels, ("+", "-"), "+")
    post = apply(nu, sq.E)
    assert is_compatible([sq.E, post]).compatible
