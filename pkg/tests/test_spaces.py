"""State spaces, effects, and structural predicates."""

from fractions import Fraction

import pytest

from gptsim.spaces import (
    Effect,
    Observable,
    StateSpace,
    decompose_into_indecomposables,
    dual_cone_rays,
    is_indecomposable,
    is_informationally_complete,
    is_valid_effect,
    is_valid_observable,
    mix_observables,
    observable,
    trivial_observable,
    unit_effect,
    validate_state_space,
)

F = Fraction
HALF = F(1, 2)


def test_square_bit_space_valid(sq):
    diag = validate_state_space(sq.space)
    assert diag.valid
    # the defining parallelogram identity
    s1, s2, s3, s4 = sq.space.extreme_states
    assert tuple(a + b for a, b in zip(s1, s3)) == tuple(a + b for a, b in zip(s2, s4))


def test_duplicate_state_flagged(sq):
    bad = StateSpace("dup", 3, sq.space.extreme_states + (sq.space.extreme_states[0],),
                     sq.space.unit)
    diag = validate_state_space(bad)
    assert not diag.valid
    assert any("duplicate" in msg for msg in diag.issues)


def test_bad_normalization_flagged(sq):
    states = ((F(1), F(1), F(9, 10)),) + sq.space.extreme_states[1:]
    diag = validate_state_space(StateSpace("bad", 3, states, sq.space.unit))
    assert not diag.valid
    assert any("unit(s)" in msg for msg in diag.issues)


def test_unit_and_zero_are_valid_effects(sq):
    assert is_valid_effect(unit_effect(sq.space), sq.space)
    assert is_valid_effect(Effect((0, 0, 0)), sq.space)


def test_hexagon_extreme_effect_validity(hexagon):
    e1 = Effect(hexagon.extreme_effects[0])
    assert is_valid_effect(e1, hexagon.space)
    scaled = Effect(tuple(1.5 * x for x in e1.coeffs))
    assert not is_valid_effect(scaled, hexagon.space)
    # the scaled effect exceeds one exactly on the state maximizing e1
    top = max(e1(s) for s in hexagon.space.extreme_states)
    assert 1.5 * top > 1


def test_indecomposable_square_bit(sq):
    assert is_indecomposable(sq.E.effects[0], sq.space)
    assert not is_indecomposable(unit_effect(sq.space), sq.space)


def test_indecomposable_scaling_invariance(hexagon):
    e1 = Effect(tuple(F(2, 3) * 1.0 * x for x in hexagon.extreme_effects[0]))
    assert is_indecomposable(e1, hexagon.space)


def test_indecomposable_rejects_zero(sq):
    with pytest.raises(ValueError):
        is_indecomposable(Effect((0, 0, 0)), sq.space)


def test_decompose_singleton_for_indecomposable(sq):
    parts = decompose_into_indecomposables(sq.E.effects[0], sq.space)
    assert parts == [sq.E.effects[0]]


def test_decompose_square_bit_unit(sq):
    parts = decompose_into_indecomposables(unit_effect(sq.space), sq.space)
    assert len(parts) == 2
    total = tuple(sum(p.coeffs[d] for p in parts) for d in range(3))
    assert total == sq.space.unit
    choices = ({sq.E.effects[0].coeffs, sq.E.effects[1].coeffs},
               {sq.F.effects[0].coeffs, sq.F.effects[1].coeffs})
    assert {p.coeffs for p in parts} in choices
    for p in parts:
        assert is_indecomposable(p, sq.space)


def test_decompose_hexagon_unit_replays(hexagon):
    parts = decompose_into_indecomposables(Effect(hexagon.unit), hexagon.space)
    assert 0 < len(parts) <= 3
    total = [sum(p.coeffs[d] for p in parts) for d in range(3)]
    assert max(abs(a - b) for a, b in zip(total, hexagon.unit)) < 1e-9
    for p in parts:
        assert is_indecomposable(p, hexagon.space)


def test_dual_rays_are_indecomposable_and_sums_are_not(sq, hexagon, pentagon, trit):
    for space in (sq.space, hexagon.space, pentagon.space, trit.space):
        rays = dual_cone_rays(space)
        for r in rays:
            assert is_indecomposable(Effect(r), space)
        mixed = Effect(tuple(a + b for a, b in zip(rays[0], rays[1])))
        assert not is_indecomposable(mixed, space)


def test_informationally_complete(sq):
    halves = observable(sq.space, [
        ("1", tuple(HALF * x for x in sq.E.effects[0].coeffs)),
        ("2", tuple(HALF * x for x in sq.E.effects[1].coeffs)),
        ("3", tuple(HALF * x for x in sq.F.effects[0].coeffs)),
        ("4", tuple(HALF * x for x in sq.F.effects[1].coeffs)),
    ])
    assert is_valid_observable(halves)
    assert is_informationally_complete(halves)
    assert not is_informationally_complete(sq.E)


def test_informationally_complete_qubit_mixture():
    # equal mixture of four dichotomic observables along independent
    # operators: informationally complete in the four-dimensional effect
    # space even though it is effectively dichotomic.
    eighth = F(1, 8)
    outcomes = []
    directions = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for j, d in enumerate(directions):
        for sign in (1, -1):
            vec = tuple(eighth * sign * x for x in d) + (eighth,)
            outcomes.append((f"{sign:+d}{j + 1}", vec))
    outcomes.append(("+4", (F(0), F(0), F(0), F(1, 4))))
    outcomes.append(("-4", (F(0), F(0), F(0), F(0))))
    obs = observable(None, outcomes)
    assert is_informationally_complete(obs)


def test_valid_observable_complements(sq, rng):
    from gptsim.catalog import random_observable

    for _ in range(10):
        obs = random_observable(sq.space, rng)
        assert is_valid_observable(obs)
        unit = sq.space.unit
        for eff in obs.effects:
            comp = Effect(tuple(u - c for u, c in zip(unit, eff.coeffs)))
            assert is_valid_effect(comp, sq.space)


def test_mix_observables_union_labels(sq):
    mixed = mix_observables([sq.E, sq.F], [HALF, HALF])
    assert mixed.labels == ("+", "-")
    assert is_valid_observable(mixed)
    tri = trivial_observable(sq.space, [("x", HALF), ("y", HALF)])
    both = mix_observables([sq.E, tri], [HALF, HALF])
    assert both.labels == ("+", "-", "x", "y")
    assert is_valid_observable(both)
