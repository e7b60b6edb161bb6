"""Command-line interface.

Verdicts always live in the JSON payload, never in the exit code: 0 means
the computation completed (whatever the answer), 1 is reserved for a failed
reproduction run, 2 for input errors, and 3 for solver nontermination.
Output is deterministic for a fixed (command, config, seed): the timing
block reports LP work counters rather than wall-clock time.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import lp
from .catalog import (
    hexagon_noise_example,
    irreducible_count_formula,
    octahedron_test,
    polygon,
    polygon_irreducibles,
    qubit_compatibility_bracket,
    qubit_suite,
    xyz_threshold_bracket,
)
from .geometry import extreme_rays
from .lp import SolverLimitError
from .qubit import as_vector_observable
from .scalars import EXACT, FLOAT, ModeError, Tolerance
from .serialize import (
    certificate_from_json,
    certificate_to_json,
    csv_text,
    detect_mode,
    dump_json,
    encode_vector,
    load_json,
    load_observables,
    load_space,
    observable_to_json,
    qubit_observable_to_json,
    space_to_json,
)
from .simulation import (
    decompose_to_irreducibles,
    is_simulable,
    is_simulation_irreducible,
    noise_content,
    replay_simulation,
    smin,
)
from .spaces import Observable, validate_state_space
from .reproduce import CRITERIA, run_all, run_criterion
from . import qubit as qb


def _tolerance(args) -> Tolerance:
    if args.eps is None:
        return Tolerance()
    return Tolerance(eps_rank=args.eps, eps_feas=args.eps, eps_compare=args.eps)


def _config(args) -> dict:
    return {
        "mode": args.mode,
        "eps": args.eps,
        "format": args.format,
        "seed": args.seed,
        "k_max": getattr(args, "k_max", None),
        "facets": getattr(args, "facets", None),
        "jobs": args.jobs,
    }


def _emit(args, payload: dict, csv_body: str = None) -> int:
    envelope = {
        "command": sys.argv[1:],
        "config": _config(args),
        "payload": payload,
        "timing": {"lp_solves": lp.stats["solves"], "lp_pivots": lp.stats["pivots"]},
    }
    if args.format == "csv" and csv_body is not None:
        sys.stdout.write(csv_body)
    else:
        print(dump_json(envelope))
    return 0


def _load_group(path, space=None):
    """Load observables; qubit documents come back in both forms."""
    observables, space, is_qubit = load_observables(path, space)
    if is_qubit:
        return [as_vector_observable(o) for o in observables], observables, space
    return observables, None, space


def _wants_float(args, *observable_groups) -> bool:
    if args.mode == FLOAT:
        return True
    if args.mode == EXACT:
        return False
    modes = {o.mode for group in observable_groups for o in group}
    return FLOAT in modes


# -- space ---------------------------------------------------------------

def cmd_space(args) -> int:
    space = load_space(args.file)
    tol = _tolerance(args)
    if args.action == "validate":
        diag = validate_state_space(space, tol)
        return _emit(args, {"valid": diag.valid, "issues": list(diag.issues)})
    rays = extreme_rays(space.extreme_states, mode=space.mode, tol=tol)
    return _emit(args, {"rays": [encode_vector(r) for r in rays]},
                 csv_text(["ray"], [[" ".join(map(str, encode_vector(r)))]
                                    for r in rays]))


# -- sim -------------------------------------------------------------------

def cmd_sim(args) -> int:
    tol = _tolerance(args)
    space = load_space(args.space) if args.space else None
    targets, qubit_targets, space = _load_group(args.target, space)
    if space is not None and qubit_targets is None:
        targets = [Observable(t.outcomes, space) for t in targets]
    target = targets[0]

    if args.action == "check":
        if not args.simulators:
            raise ValueError("sim check needs --simulators FILE")
        sims, _, _ = _load_group(args.simulators, space)
        if _wants_float(args, targets, sims):
            target = target.as_float()
            sims = [s.as_float() for s in sims]
        if args.verify:
            cert = certificate_from_json(load_json(args.verify))
            return _emit(args, {"verified":
                                replay_simulation(cert, target, sims, tol)})
        cert = is_simulable(target, sims, tol)
        return _emit(args, {"verdict": cert.verdict,
                            "certificate": certificate_to_json(cert),
                            "replay": replay_simulation(cert, target, sims, tol)})

    if args.action == "smin":
        if not args.pool:
            raise ValueError("sim smin needs --pool FILE")
        pool, _, _ = _load_group(args.pool, space)
        if _wants_float(args, targets, pool):
            targets = [t.as_float() for t in targets]
            pool = [p.as_float() for p in pool]
        k = smin(targets, pool, k_max=args.k_max, tol=tol)
        return _emit(args, {"smin": k if k is not None
                            else f"unknown above k_max={args.k_max}"})

    if args.mode == FLOAT and target.space is not None:
        target = target.as_float()
    if args.action == "irreducible":
        if qubit_targets is not None:
            verdict = qb.is_simulation_irreducible(qubit_targets[0], tol)
        elif target.space is None:
            raise ValueError("irreducibility needs a state space (--space FILE)")
        else:
            verdict = is_simulation_irreducible(target, tol)
        return _emit(args, {"simulation_irreducible": verdict})
    if args.action == "decompose":
        refiner = None
        if qubit_targets is not None:
            target = target.as_float()
            refiner = qb.spectral_refiner
        elif target.space is None:
            raise ValueError("decomposition needs a polytopic state space")
        dec = decompose_to_irreducibles(target, tol, refiner=refiner)
        return _emit(args, {
            "irreducibles": [observable_to_json(o) for o in dec.observables],
            "certificate": certificate_to_json(dec.certificate),
            "splits": dec.splits,
            "replay": replay_simulation(dec.certificate, target,
                                        list(dec.observables), tol),
        })
    if args.action == "noise":
        if qubit_targets is not None:
            return _emit(args, {"noise_content": qb.noise_content(qubit_targets[0], tol)})
        if target.space is None:
            raise ValueError("noise content needs a state space (--space FILE)")
        res = noise_content(target, tol)
        value = float(res.value) if target.mode == FLOAT else str(res.value)
        return _emit(args, {"noise_content": value,
                            "trivial_weights": encode_vector(res.trivial_weights)})
    raise ValueError(f"unknown sim action {args.action!r}")


# -- polygon -----------------------------------------------------------------

def _count_row(n: int):
    cat = polygon_irreducibles(n)
    formula = irreducible_count_formula(n)
    return (n, cat.dichotomic_count, cat.trichotomic_count, cat.count, formula,
            cat.count == formula)


def cmd_polygon(args) -> int:
    if args.action == "build":
        theory = polygon(args.n)
        payload = {
            "space": space_to_json(theory.space),
            "extreme_effects": [encode_vector(e) for e in theory.extreme_effects],
            "dichotomic_observables": [observable_to_json(o)
                                       for o in theory.dichotomic_observables],
        }
        if theory.f_effects is not None:
            payload["f_effects"] = [encode_vector(e) for e in theory.f_effects]
        return _emit(args, payload)
    if args.action == "irreducibles":
        cat = polygon_irreducibles(args.n)
        payload = {
            "n": args.n,
            "count": cat.count,
            "dichotomic": cat.dichotomic_count,
            "trichotomic": cat.trichotomic_count,
            "formula": irreducible_count_formula(args.n),
            "observables": [observable_to_json(o) for o in cat.observables],
        }
        return _emit(args, payload)
    if args.action == "counts":
        ns = list(range(3, args.n_max + 1))
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                rows = list(pool.map(_count_row, ns))
        else:
            rows = [_count_row(n) for n in ns]
        header = ["n", "dichotomic", "trichotomic", "enumerated", "formula", "match"]
        payload = {"rows": [dict(zip(header, r)) for r in rows],
                   "all_match": all(r[-1] for r in rows)}
        return _emit(args, payload, csv_text(header, rows))
    raise ValueError(f"unknown polygon action {args.action!r}")


# -- qubit -------------------------------------------------------------------

def cmd_qubit(args) -> int:
    tol = _tolerance(args)
    suite = qubit_suite()
    if args.action == "octahedron":
        if args.obs:
            from .serialize import qubit_observable_from_json
            obs = qubit_observable_from_json(load_json(args.obs))
        elif args.t is not None:
            obs = suite.ct(args.t)
        else:
            raise ValueError("octahedron needs --obs FILE or --t VALUE")
        results = octahedron_test(obs, tol)
        return _emit(args, {"per_effect": results,
                            "all_pass": all(results.values())})
    if args.action == "compat-bracket":
        if args.targets == "xyz":
            lo, hi = xyz_threshold_bracket(facets=args.facets, t_tol=args.t_tol,
                                           tol=tol)
            return _emit(args, {"family": "xyz", "facets": args.facets,
                                "lower": lo, "upper": hi, "width": hi - lo})
        observables, _, is_qubit = load_observables(args.targets)
        if not is_qubit:
            raise ValueError("compat-bracket expects qubit observables")
        res = qubit_compatibility_bracket(observables, facets=args.facets, tol=tol)
        return _emit(args, {"verdict": res.verdict,
                            "inner_feasible": res.inner_feasible,
                            "outer_feasible": res.outer_feasible,
                            "facets": res.facets})
    if args.action == "suite":
        payload = {
            "X": qubit_observable_to_json(suite.X),
            "Y": qubit_observable_to_json(suite.Y),
            "Z": qubit_observable_to_json(suite.Z),
            "T": qubit_observable_to_json(suite.T),
            "tetrahedron": qubit_observable_to_json(suite.tetrahedron),
        }
        if args.t is not None:
            payload["Xt"] = qubit_observable_to_json(suite.xt(args.t))
            payload["Yt"] = qubit_observable_to_json(suite.yt(args.t))
            payload["Zt"] = qubit_observable_to_json(suite.zt(args.t))
            payload["Ct"] = qubit_observable_to_json(suite.ct(args.t))
        return _emit(args, payload)
    raise ValueError(f"unknown qubit action {args.action!r}")


# -- reproduce ----------------------------------------------------------------

def cmd_reproduce(args) -> int:
    if args.id == "all":
        results = run_all()
    else:
        if args.id not in CRITERIA:
            print(f"unknown criterion id {args.id!r}; known: {', '.join(CRITERIA)}",
                  file=sys.stderr)
            return 2
        results = [run_criterion(args.id)]
    rows = [(r.id, "pass" if r.passed else "FAIL", r.details) for r in results]
    payload = {"results": [{"id": r.id, "passed": r.passed, "details": r.details}
                           for r in results],
               "all_passed": all(r.passed for r in results)}
    for rid, status, _ in rows:
        print(f"[{status}] {rid}", file=sys.stderr)
    code = _emit(args, payload, csv_text(["id", "status", "details"], rows))
    if not payload["all_passed"]:
        return 1
    return code


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=[EXACT, FLOAT], default=None,
                        help="force the arithmetic mode (default: inferred)")
    common.add_argument("--eps", type=float, default=None,
                        help="override all float-mode tolerances")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--seed", type=int, default=0,
                        help="seed recorded with the run; governs any sampling")
    common.add_argument("--jobs", type=int, default=1,
                        help="parallel workers for enumeration sweeps")

    parser = argparse.ArgumentParser(
        prog="gptsim",
        description="Observable simulability on convex operational state spaces.")
    sub = parser.add_subparsers(dest="group", required=True)

    p_space = sub.add_parser("space", parents=[common],
                             help="validate a state space or list its rays")
    p_space.add_argument("action", choices=["validate", "rays"])
    p_space.add_argument("file")
    p_space.set_defaults(fn=cmd_space)

    p_sim = sub.add_parser("sim", parents=[common], help="simulability decisions")
    p_sim.add_argument("action",
                       choices=["check", "irreducible", "decompose", "smin", "noise"])
    p_sim.add_argument("--target", required=True)
    p_sim.add_argument("--simulators")
    p_sim.add_argument("--pool")
    p_sim.add_argument("--space")
    p_sim.add_argument("--k-max", type=int, default=4, dest="k_max")
    p_sim.add_argument("--verify", help="replay a stored certificate file")
    p_sim.set_defaults(fn=cmd_sim)

    p_poly = sub.add_parser("polygon", parents=[common],
                            help="polygon theories and catalogs")
    p_poly.add_argument("action", choices=["build", "irreducibles", "counts"])
    p_poly.add_argument("--n", type=int, default=5)
    p_poly.add_argument("--n-max", type=int, default=12, dest="n_max")
    p_poly.set_defaults(fn=cmd_polygon)

    p_qubit = sub.add_parser("qubit", parents=[common], help="qubit example suite")
    p_qubit.add_argument("action", choices=["octahedron", "compat-bracket", "suite"])
    p_qubit.add_argument("--obs")
    p_qubit.add_argument("--t", type=float, default=None)
    p_qubit.add_argument("--targets", default="xyz")
    p_qubit.add_argument("--facets", type=int, default=128)
    p_qubit.add_argument("--t-tol", type=float, default=4e-3, dest="t_tol")
    p_qubit.set_defaults(fn=cmd_qubit)

    p_rep = sub.add_parser("reproduce", parents=[common],
                           help="run the acceptance suite")
    p_rep.add_argument("id", nargs="?", default="all")
    p_rep.set_defaults(fn=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    lp.reset_stats()
    try:
        return args.fn(args)
    except SolverLimitError as exc:
        print(f"solver limit: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, ModeError, OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
