"""Command-line front end: spectrum | state | wavefunction | check | commutator.

Exit status is 0 when everything passes, 1 when a check fails and 2 for usage
errors.  Output is deterministic for identical arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from riqm import ladder
from riqm.coeff import E_CHARGE, INV_A0, frac_str
from riqm.opcore.identities import UnknownIdentity, check_identity, identity_keys
from riqm.verify.differential import differential_commutator_oracle
from riqm.verify.ode import node_count_exact, node_count_grid, ode_residual
from riqm.verify.quadrature import orthonormality_report, radial_overlap
from riqm.verify.report import NORM_TOL, ResidualReport
from riqm.wavefn import RouteMismatch, evaluate, full_wavefunction, sample_csv

FAULT_SHIFT = E_CHARGE * E_CHARGE * INV_A0 * Fraction(1, 100)
SUITES = ("commutators", "factorization", "chains", "wavefunctions", "all")


class UsageError(Exception):
    pass


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# spectrum ---------------------------------------------------------------------

def spectrum_rows(dim: int, n_max: int) -> list[dict]:
    if n_max < 1:
        raise UsageError("n_max must be at least 1")
    rows = []
    for n in range(1, n_max + 1):
        e = ladder.energy_in_rydberg_units(ladder.energy(dim, n))
        lo = 0 if dim == 3 else -(n - 1)
        rows.append({"n": n, "sector_min": lo, "sector_max": n - 1, "E": frac_str(e),
                     "degeneracy": n if dim == 3 else 2 * n - 1})
    return rows


def cmd_spectrum(args) -> int:
    rows = spectrum_rows(args.dim, args.n_max)
    if args.format == "json":
        text = _dumps({"dim": args.dim, "energy_unit": "e^2/a0", "levels": rows})
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    _emit(text, args.output)
    return 0


# state ------------------------------------------------------------------------

def state_report(dim: int, n: int, sector: int) -> dict:
    chain = ladder.run_chain(dim, n, sector)
    norm = ladder.compute_norm(dim, n, sector)
    lag = ladder.laguerre_identify(chain)
    ratios = ladder.check_coefficient_ratios(chain)
    checks = {
        "ratio_law": ratios.holds,
        "laguerre": lag.holds,
        "norm_forms_agree": norm.forms_agree,
        "eigenstate": ladder.check_eigenstate(dim, n, sector).is_zero(),
        "factorization": ladder.check_factorization(dim, sector).is_zero(),
        "intertwining": ladder.check_intertwining(dim, sector).holds,
    }
    return {
        "chain": chain.to_json(),
        "state": chain.state.to_json(),
        "norm": norm.to_json(),
        "laguerre": lag.to_json(),
        "energy": frac_str(ladder.energy_in_rydberg_units(ladder.energy(dim, n))),
        "checks": checks,
    }


def cmd_state(args) -> int:
    try:
        report = state_report(args.dim, args.n, args.sector)
    except ladder.SectorError as exc:
        raise UsageError(str(exc)) from None
    _emit(_dumps(report), args.output)
    return 0 if all(report["checks"].values()) else 1


# wavefunction -------------------------------------------------------------------

def parse_grid(spec: str) -> np.ndarray:
    try:
        lo, hi, count = spec.split(":")
        pts = np.linspace(float(lo), float(hi), int(count))
    except ValueError:
        raise UsageError(f"grid must look like start:stop:count, got {spec!r}") from None
    if len(pts) < 1 or pts[0] < 0:
        raise UsageError("grid needs at least one non-negative point")
    return pts


def cmd_wavefunction(args) -> int:
    sector = args.sector if args.sector is not None else abs(args.m)
    try:
        wf = full_wavefunction(args.n, sector, args.m, args.dim)
    except ladder.SectorError as exc:
        raise UsageError(str(exc)) from None
    xs = parse_grid(args.grid)
    if args.dim == 3:
        points = [(x, args.theta, args.phi) for x in xs]
    else:
        points = [(x, args.phi) for x in xs]
    if args.format == "csv":
        text = sample_csv(wf, points)
    else:
        samples = []
        for p in points:
            v = evaluate(wf, p)
            samples.append([*map(float, p), v.real, v.imag])
        text = _dumps({"descriptor": wf.descriptor(), "samples": samples})
    _emit(text, args.output)
    return 0


# commutator -----------------------------------------------------------------------

def cmd_commutator(args) -> int:
    try:
        report = check_identity(args.identity)
    except UnknownIdentity as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        _emit(_dumps(report.to_json()), args.output)
    else:
        _emit(f"{args.identity}: holds={report.holds}\nresidual: {report.residual}\n", args.output)
    return 0 if report.holds else 1


# check ------------------------------------------------------------------------------

def _exact(case: str, residual_terms: int, **detail) -> ResidualReport:
    # exact checks report the number of surviving terms; tolerance 1 means "must be zero"
    return ResidualReport(case, float(residual_terms), 1.0, dict(detail, exact=True))


def suite_commutators(seed: int, fault: bool) -> list[ResidualReport]:
    out = []
    for i, key in enumerate(identity_keys()):
        rep = check_identity(key)
        out.append(_exact(f"commutators/exact/{key}", len(rep.residual)))
        corrupt = fault and i == 0
        orc = differential_commutator_oracle(key, seed=seed, corrupt=corrupt)
        out.append(ResidualReport(f"commutators/oracle/{key}", orc.residual, orc.tolerance,
                                  orc.detail))
    return out


def suite_factorization(max_sector: int, fault: bool) -> list[ResidualReport]:
    out = []
    shift = FAULT_SHIFT if fault else None
    for dim in (3, 2):
        for s in range(max_sector + 1):
            f = ladder.check_factorization(dim, s, shift if s == 0 else None)
            out.append(_exact(f"factorization/{dim}d/s{s}", len(f)))
            it = ladder.check_intertwining(dim, s)
            out.append(_exact(f"intertwining/{dim}d/s{s}", len(it.intertwining)))
            out.append(_exact(f"wrong_order/{dim}d/s{s}", len(it.wrong_order)))
    return out


def suite_chains(n_max: int, neg_n_max: int, fault: bool) -> list[ResidualReport]:
    out = []
    for dim in (3, 2):
        for n in range(1, n_max + 1):
            for s in range(n):
                tag = f"{dim}d/n{n}/s{s}"
                chain = ladder.run_chain(dim, n, s)
                out.append(_exact(f"chains/ratio/{tag}",
                                  0 if ladder.check_coefficient_ratios(chain).holds else 1))
                lag = ladder.laguerre_identify(chain)
                out.append(_exact(f"chains/laguerre/{tag}", len(lag.mismatches),
                                  mismatches=list(lag.mismatches)))
                norm = ladder.compute_norm(dim, n, s)
                out.append(_exact(f"chains/norm/{tag}", 0 if norm.forms_agree else 1))
                shift = None
                if fault and (dim, n, s) == (3, 2, 0):
                    shift = FAULT_SHIFT
                res = ladder.check_eigenstate(dim, n, s, shift)
                out.append(_exact(f"chains/eigenstate/{tag}", len(res.poly)))
    for n in range(1, neg_n_max + 1):
        for m in range(n):
            rep = ladder.check_negative_m(n, m)
            out.append(_exact(f"chains/negative_m/n{n}/m{m}", 0 if rep.holds else 1))
    return out


def suite_wavefunctions(n_max: int, fault: bool) -> list[ResidualReport]:
    out = []
    for dim in (3, 2):
        for n in range(1, n_max + 1):
            for s in range(n):
                tag = f"{dim}d/n{n}/s{s}"
                try:
                    wf = full_wavefunction(n, s, s if dim == 2 else 0, dim)
                except RouteMismatch as exc:
                    out.append(_exact(f"wavefunctions/routes/{tag}", 1, error=str(exc)))
                    continue
                out.append(_exact(f"wavefunctions/routes/{tag}", 0))
                v, err = radial_overlap(wf, wf)
                out.append(ResidualReport(f"wavefunctions/norm/{tag}", abs(v - 1), NORM_TOL,
                                          {"error_estimate": err}))
                factor = 1.01 if fault and (dim, n, s) == (3, 1, 0) else 1.0
                ode = ode_residual(wf, energy_factor=factor)
                out.append(ResidualReport(f"wavefunctions/ode/{tag}", ode.residual,
                                          ode.tolerance, ode.detail))
                want = n - s - 1
                exact_nodes, grid_nodes = node_count_exact(wf), node_count_grid(wf)
                bad = int(exact_nodes != want) + int(grid_nodes != want)
                out.append(_exact(f"wavefunctions/nodes/{tag}", bad, expected=want,
                                  exact=exact_nodes, grid=grid_nodes))
        for s in range(n_max):
            rep = orthonormality_report(dim, s, n_max)
            out.append(ResidualReport(f"wavefunctions/{rep.case}", rep.residual, rep.tolerance,
                                      rep.detail))
    return out


def run_suite(suite: str, seed: int, n_max: int, fault: bool = False) -> list[ResidualReport]:
    out = []
    if suite in ("commutators", "all"):
        out += suite_commutators(seed, fault)
    if suite in ("factorization", "all"):
        out += suite_factorization(8, fault)
    if suite in ("chains", "all"):
        out += suite_chains(max(n_max, 8), n_max, fault)
    if suite in ("wavefunctions", "all"):
        out += suite_wavefunctions(n_max, fault)
    return out


def cmd_check(args) -> int:
    if args.n_max < 1:
        raise UsageError("n_max must be at least 1")
    reports = run_suite(args.suite, args.seed, args.n_max, args.inject_fault)
    cases = sorted((r.to_json() for r in reports), key=lambda d: d["case"])
    failures = [c["case"] for c in cases if not c["pass"]]
    doc = {"suite": args.suite, "seed": args.seed, "n_max": args.n_max,
           "cases": cases, "failures": failures, "pass": not failures}
    _emit(_dumps(doc), args.output)
    if failures:
        sys.stderr.write(f"{len(failures)} check(s) failed\n")
    return 1 if failures else 0


# parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="riqm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=("json", "csv"), default="json"):
        sp.add_argument("--dim", type=int, choices=(2, 3), default=3)
        sp.add_argument("--format", choices=fmt, default=default)
        sp.add_argument("--output", "-o", default=None)

    sp = sub.add_parser("spectrum", help="energy levels in e^2/a0 units")
    common(sp, default="csv")
    sp.add_argument("--n-max", type=int, default=6)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("state", help="ladder chain, normalization and checks for one state")
    common(sp, fmt=("json",))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--sector", type=int, required=True)
    sp.set_defaults(func=cmd_state)

    sp = sub.add_parser("wavefunction", help="sample a closed-form wavefunction")
    common(sp, default="csv")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--sector", type=int, default=None, help="l in 3D (defaults to |m|)")
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--grid", default="0:20:41", help="start:stop:count in units of a0")
    sp.add_argument("--theta", type=float, default=0.0)
    sp.add_argument("--phi", type=float, default=0.0)
    sp.set_defaults(func=cmd_wavefunction)

    sp = sub.add_parser("check", help="run verification suites")
    sp.add_argument("suite", choices=SUITES)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--n-max", type=int, default=6)
    sp.add_argument("--output", "-o", default=None)
    sp.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("commutator", help="normal-order a catalog identity")
    sp.add_argument("identity")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--output", "-o", default=None)
    sp.set_defaults(func=cmd_commutator)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"riqm: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
