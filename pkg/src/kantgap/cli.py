"""Command-line driver.

Subcommands:

* ``gen``      write a problem JSON from a named scenario
* ``solve``    full-transport value, dual value, gap and witness plan
* ``profile``  mass/cost breakpoint table (CSV)
* ``dual``     dual certificate JSON
* ``sweep``    truncated-value table over constant levels (CSV)
* ``covers``   cover/matching/capacity report for a cell set
* ``study``    refinement study table (CSV)
* ``oracle``   brute-force reference values (debugging aid)

Exit codes: 0 on success (an infinite transport value is a legitimate
answer, reported as data), 1 on validation errors, 2 when a *requested*
evaluation is infeasible (for example a mass beyond what the finite cells
carry).  Outputs are deterministic for fixed inputs and seeds.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import modes, problem_io, scenarios
from .dual import dual_value, relaxed_dual_value, verify_feasible
from .errors import InfeasibleMassError, InputError, NotApplicableError, TransportError
from .flow import evaluate_profile, optimal_coupling_at, solve_profile
from .kellerer import (
    capacity_value,
    cover_value,
    kellerer_decompose,
    max_mass_on,
    null_for_all_couplings,
)
from .oracle import brute_cover, brute_primal
from .primal import constant_truncation_sweep, refinement_study
from .problem_io import format_number

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INFEASIBLE = 2


def _write(text: str, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_grid(tokens):
    if not tokens:
        return []
    return [t for t in tokens.split(",") if t]


def _cmd_gen(args) -> int:
    if args.scenario == scenarios.DIAGONAL:
        c, mu, nu = scenarios.example_diagonal(args.n)
    elif args.scenario == scenarios.BAND:
        c, mu, nu = scenarios.closed_inf_band(args.n, args.bandwidth)
    elif args.scenario == scenarios.RANDOM:
        c, mu, nu = scenarios.random_instance(
            args.nx, args.ny, args.inf_density, args.marginals, args.seed
        )
    else:
        raise InputError(f"unknown scenario {args.scenario!r}")
    _write(json.dumps(problem_io.dump_problem(c, mu, nu), indent=2) + "\n", args.output)
    return EXIT_OK


def _cmd_solve(args) -> int:
    c, mu, nu = problem_io.load_problem_file(args.problem)
    profile = solve_profile(c, mu, nu)
    p = evaluate_profile(profile, 1) if modes.geq(profile.max_mass, 1) else None
    rep = dual_value(c, mu, nu)
    eps_grid = [problem_io.parse_number(t) for t in _parse_grid(args.eps_grid)]
    partials = [(e, evaluate_profile(profile, 1 - e)) for e in sorted(eps_grid)]
    if p is None:
        doc = {"P": "inf", "D": "inf"}
        if partials:
            doc["P_eps"] = [[format_number(e), format_number(v)] for e, v in partials]
        if rep.ray is not None:
            doc["improving_ray"] = {
                "d_phi": [format_number(v) for v in rep.ray.d_phi],
                "d_psi": [format_number(v) for v in rep.ray.d_psi],
                "slope": format_number(rep.ray.slope),
            }
        if args.format == "json":
            _write(json.dumps(doc) + "\n", args.output)
        else:
            lines = ["P=inf D=inf gap=0"]
            lines += [f"P_eps[{format_number(e)}]={format_number(v)}" for e, v in partials]
            _write("\n".join(lines) + "\n", args.output)
        return EXIT_OK
    gap = p - rep.value
    witness = optimal_coupling_at(c, mu, nu, 1)
    if args.format == "json":
        doc = {
            "P": format_number(p),
            "D": format_number(rep.value),
            "gap": format_number(gap),
            "witness": problem_io.coupling_entries(witness),
            "phi": [format_number(v) for v in rep.pair.phi],
            "psi": [format_number(v) for v in rep.pair.psi],
        }
        if partials:
            doc["P_eps"] = [[format_number(e), format_number(v)] for e, v in partials]
        _write(json.dumps(doc) + "\n", args.output)
    else:
        lines = [f"P={format_number(p)} D={format_number(rep.value)} gap={format_number(gap)}"]
        lines += [f"P_eps[{format_number(e)}]={format_number(v)}" for e, v in partials]
        for (i, j), m in witness.items():
            lines.append(f"pi[{i},{j}]={format_number(m)}")
        _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _cmd_profile(args) -> int:
    c, mu, nu = problem_io.load_problem_file(args.problem)
    profile = solve_profile(c, mu, nu)
    if args.at is not None:
        m = problem_io.parse_number(args.at)
        value = evaluate_profile(profile, m)
        _write(f"{format_number(value)}\n", args.output)
        return EXIT_OK
    _write(problem_io.profile_csv(profile), args.output)
    return EXIT_OK


def _cmd_dual(args) -> int:
    c, mu, nu = problem_io.load_problem_file(args.problem)
    if args.relaxed:
        rep = relaxed_dual_value(c, mu, nu)
        doc = problem_io.dual_certificate(
            rep.pair, rep.value, verify_feasible(rep.pair, c).ok
        )
        doc["chargeable"] = sorted([i, j] for i, j in rep.chargeable)
    else:
        rep = dual_value(c, mu, nu)
        feasible = verify_feasible(rep.pair, c).ok
        doc = problem_io.dual_certificate(rep.pair, rep.value, feasible)
        if rep.ray is not None:
            doc["improving_ray"] = {
                "d_phi": [format_number(v) for v in rep.ray.d_phi],
                "d_psi": [format_number(v) for v in rep.ray.d_psi],
                "slope": format_number(rep.ray.slope),
            }
    _write(json.dumps(doc) + "\n", args.output)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    c, mu, nu = problem_io.load_problem_file(args.problem)
    grid = [problem_io.parse_number(t) for t in _parse_grid(args.m_grid)]
    if not grid:
        raise InputError("sweep needs --m-grid")
    rows = constant_truncation_sweep(c, mu, nu, grid)
    _write(problem_io.sweep_csv(rows), args.output)
    return EXIT_OK


def _cmd_covers(args) -> int:
    c, mu, nu = problem_io.load_problem_file(args.problem)
    L = problem_io.load_cellset_file(args.cells, c.nx, c.ny)
    m_val, cert = cover_value(L, mu, nu)
    mass, _witness = max_mass_on(L, mu, nu)
    doc = {
        "m": format_number(m_val),
        "cover_rows": sorted(cert.rows),
        "cover_cols": sorted(cert.cols),
        "max_mass": format_number(mass),
        "null_for_all_couplings": null_for_all_couplings(L, mu, nu),
    }
    if L.nx == L.ny:
        gamma, f = capacity_value(L, mu)
        doc["gamma"] = format_number(gamma)
        doc["f"] = [format_number(v) for v in f]
    dec = kellerer_decompose(L, mu, nu)
    if dec.is_null:
        doc["decomposition"] = {
            "null_rows": sorted(dec.null_rows),
            "null_cols": sorted(dec.null_cols),
        }
    else:
        doc["decomposition"] = {"witness": problem_io.coupling_entries(dec.witness)}
    _write(json.dumps(doc) + "\n", args.output)
    return EXIT_OK


def _cmd_study(args) -> int:
    fam = scenarios.family(args.scenario)
    n_list = [int(t) for t in _parse_grid(args.n_list)]
    eps_list = _parse_grid(args.eps_grid)
    m_list = [problem_io.parse_number(t) for t in _parse_grid(args.m_grid)]
    if not n_list or not eps_list or not m_list:
        raise InputError("study needs --n-list, --eps-grid and --m-grid")
    rows = refinement_study(fam, n_list, eps_list, m_list)
    _write(problem_io.study_csv(rows), args.output)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    c, mu, nu = problem_io.load_problem_file(args.problem)
    if args.cover:
        L = problem_io.load_cellset_file(args.cover, c.nx, c.ny)
        _write(f"{format_number(brute_cover(L, mu, nu))}\n", args.output)
        return EXIT_OK
    if args.mass is None:
        raise InputError("oracle needs --mass or --cover")
    m = problem_io.parse_number(args.mass)
    _write(f"{format_number(brute_primal(c, mu, nu, m))}\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kantgap",
        description="Exact finite-instance transport duality laboratory.",
    )
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument(
        "--exact", dest="mode", action="store_const", const="exact", default="exact"
    )
    mode.add_argument("--float", dest="mode", action="store_const", const="float")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("-o", "--output", default=None, help="output file (default stdout)")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    g = sub.add_parser("gen", help="generate a problem JSON")
    g.add_argument("--scenario", required=True,
                   choices=(scenarios.DIAGONAL, scenarios.RANDOM, scenarios.BAND))
    g.add_argument("--n", type=int, default=3)
    g.add_argument("--nx", type=int, default=3)
    g.add_argument("--ny", type=int, default=3)
    g.add_argument("--bandwidth", type=int, default=0)
    g.add_argument("--inf-density", type=float, default=0.0)
    g.add_argument("--marginals", choices=("uniform", "random"), default="uniform")
    g.add_argument("--seed", type=int, default=0)
    common(g)
    g.set_defaults(func=_cmd_gen)

    s = sub.add_parser("solve", help="P, D, gap and a witness plan")
    s.add_argument("problem")
    s.add_argument("--eps-grid", default="",
                   help="also report partial values at these dropped masses")
    common(s)
    s.set_defaults(func=_cmd_solve)

    p = sub.add_parser("profile", help="mass/cost breakpoints as CSV")
    p.add_argument("problem")
    p.add_argument("--at", default=None, help="evaluate at one mass instead")
    common(p)
    p.set_defaults(func=_cmd_profile)

    d = sub.add_parser("dual", help="dual certificate JSON")
    d.add_argument("problem")
    d.add_argument("--relaxed", action="store_true",
                   help="constraints only on chargeable cells")
    common(d)
    d.set_defaults(func=_cmd_dual)

    w = sub.add_parser("sweep", help="truncated values over constant levels")
    w.add_argument("problem")
    w.add_argument("--m-grid", required=True, help="comma-separated levels")
    common(w)
    w.set_defaults(func=_cmd_sweep)

    k = sub.add_parser("covers", help="cover/matching/capacity report")
    k.add_argument("problem")
    k.add_argument("--cells", required=True, help="cell-set JSON file")
    common(k)
    k.set_defaults(func=_cmd_covers)

    t = sub.add_parser("study", help="refinement study table")
    t.add_argument("--scenario", default=scenarios.DIAGONAL,
                   choices=(scenarios.DIAGONAL, scenarios.BAND))
    t.add_argument("--n-list", required=True)
    t.add_argument("--eps-grid", required=True,
                   help='comma-separated; "1/n" style entries scale with n')
    t.add_argument("--m-grid", required=True)
    common(t)
    t.set_defaults(func=_cmd_study)

    o = sub.add_parser("oracle", help="brute-force reference values")
    o.add_argument("problem")
    o.add_argument("--mass", default=None)
    o.add_argument("--cover", default=None, help="cell-set JSON file")
    common(o)
    o.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    modes.set_mode(args.mode)
    try:
        return args.func(args)
    except (InfeasibleMassError, NotApplicableError) as exc:
        if getattr(args, "format", "text") == "json":
            sys.stdout.write(json.dumps({"infeasible": str(exc)}) + "\n")
        else:
            sys.stderr.write(f"infeasible: {exc}\n")
        return EXIT_INFEASIBLE
    except (TransportError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
