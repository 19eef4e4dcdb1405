"""Command-line entry point.

Exit codes: 0 when every check passes, 2 when a certificate fails,
1 on usage or input errors.  Output is written once, at the end, to
``--out`` (or stdout); identical arguments give identical bytes.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import chains, geometry, gram, lift, nonconvex, spectra
from .errors import (CapExceeded, NonUniformCovering, RieszForgeError, SectionTooLarge,
                     SingularGamma)
from .gamma import ClusterPartition, build_gamma, cluster_bounds, frame_bounds
from .rational import fmt, frac, parse_matrix, parse_rational_list
from .serialize import (InputError, domain_from_json, domain_to_json, load_json,
                        spectrum_from_json, stack_from_json, to_csv, to_json)

COMMANDS = ("domains", "tiling", "gamma", "octagon", "rhombus", "theorem31", "gram-verify",
            "chain", "report")

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    out: Optional[str] = None
    format: str = "json"
    levels: list[int] = field(default_factory=lambda: [2, 3, 4])
    radius: list[Fraction] = field(default_factory=lambda: [Fraction(2)])
    trials: int = 100
    seed: int = 0
    tol: Optional[float] = None
    jobs: int = 1
    timing: bool = False
    domain: Optional[str] = None
    spectrum: Optional[str] = None
    stack: Optional[str] = None
    lattice: Optional[str] = None
    grid: int = 256
    offsets: Optional[str] = None
    vertices: Optional[str] = None
    a: Fraction = Fraction(1)
    b: Fraction = Fraction(1)
    A: float = 16.0
    B: float = 16.0
    alpha: float = 2.0
    beta: float = 2.0
    name: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.tol is not None and not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if self.trials < 1:
            raise UsageError("--trials must be at least 1")
        if any(r <= 0 for r in self.radius):
            raise UsageError("--radius must be positive")


@dataclass
class Outcome:
    ok: bool
    payload: dict
    columns: tuple = ()
    rows: list = field(default_factory=list)
    message: str = ""


# ---------------------------------------------------------------------------
# input resolution
# ---------------------------------------------------------------------------


def _builtin_domains(cfg: RunConfig) -> dict[str, Callable[[], geometry.SignedDomain]]:
    return {
        "unit-square": geometry.unit_square,
        "square4": lambda: geometry.square(4),
        "octagon": geometry.octagon,
        "figure3": geometry.figure3_domain,
        "rhombus": lambda: geometry.rhombus(cfg.a, cfg.b),
        **{f"D{N}": (lambda N=N: geometry.dyadic_approximant(N).domain()) for N in range(2, 6)},
    }


def resolve_domain(cfg: RunConfig, text: Optional[str]) -> geometry.SignedDomain:
    if text is None:
        raise UsageError("--domain is required")
    if Path(text).exists():
        return domain_from_json(load_json(text), Path(text).stem)
    table = _builtin_domains(cfg)
    if text in table:
        return table[text]().with_name(text)
    raise InputError(f"{text}: no such file or built-in domain ({', '.join(table)})")


def resolve_spectrum(cfg: RunConfig, text: Optional[str]) -> spectra.FrequencySet:
    if text is None:
        raise UsageError("--spectrum is required")
    if Path(text).exists():
        return spectrum_from_json(load_json(text))
    if text in ("Z1", "Z2"):
        return spectra.integer_grid(int(text[1]))
    if text == "octagon":
        return spectra.octagon_spectrum()
    if text == "rhombus":
        return spectra.rhombus_spectrum(cfg.a, cfg.b)
    if text.startswith("level"):
        return spectra.main_spectrum(int(text[5:]))
    raise InputError(f"{text}: no such file or built-in spectrum (Z1, Z2, octagon, rhombus, levelN)")


def _tol(cfg: RunConfig, default: float) -> float:
    return cfg.tol if cfg.tol is not None else default


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_domains(cfg: RunConfig) -> Outcome:
    table = _builtin_domains(cfg)
    if cfg.name:
        if cfg.name not in table:
            raise UsageError(f"unknown built-in domain {cfg.name!r}")
        d = table[cfg.name]()
        return Outcome(True, domain_to_json(d))
    rows = []
    for name, make in table.items():
        d = make()
        rows.append({"name": name, "dimension": d.dimension, "cells": len(d.cells),
                     "measure": d.measure, "valid": d.validate(20_000, cfg.seed)})
    ok = all(r["valid"] for r in rows)
    return Outcome(ok, {"domains": rows}, ("name", "dimension", "cells", "measure", "valid"), rows)


def cmd_tiling(cfg: RunConfig) -> Outcome:
    d = resolve_domain(cfg, cfg.domain)
    if cfg.lattice is None:
        raise UsageError("--lattice is required")
    try:
        lat = geometry.Lattice(parse_matrix(cfg.lattice))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --lattice: {exc}") from exc
    try:
        k = geometry.tiling_level(d, lat, grid=cfg.grid)
    except NonUniformCovering as exc:
        return Outcome(False, {"level": None, "error": str(exc)}, message=f"non-uniform covering: {exc}")
    payload = {"domain": d.name, "lattice": [[fmt(v) for v in r] for r in lat.basis],
               "measure": d.measure, "covolume": lat.covolume, "level": k}
    return Outcome(True, payload, ("level",), [(k,)], message=f"level {k}")


def cmd_gamma(cfg: RunConfig) -> Outcome:
    part = None
    if cfg.offsets is not None or cfg.vertices is not None:
        if cfg.offsets is None or cfg.vertices is None:
            raise UsageError("--offsets and --vertices go together")
        g = build_gamma(parse_rational_list(cfg.offsets), parse_rational_list(cfg.vertices))
    else:
        if len(cfg.levels) != 1:
            raise UsageError("gamma takes a single --levels value")
        N = cfg.levels[0]
        if N > nonconvex.DEFAULT_CAP:
            raise CapExceeded(f"level {N} exceeds the cap {nonconvex.DEFAULT_CAP}")
        g = nonconvex.gamma_matrix(N)
        part = ClusterPartition(tuple(tuple(c) for c in nonconvex.column_clusters(N)), 0.0)
    try:
        report = frame_bounds(g)
    except SingularGamma as exc:
        return Outcome(False, {"nonsingular": False, "error": str(exc)}, message=str(exc))
    ids = ()
    payload = {"M": g.size, "bounds": report.bounds.as_dict(), "nonsingular": report.nonsingular,
               "eigenvalues": list(report.eigenvalues), "sigma": list(report.sigma)}
    if part is not None:
        cl = cluster_bounds(g, part)
        ids = cl.cluster_ids
        payload["cluster_eigenvalues"] = list(cl.eigenvalues)
        payload["cluster_bounds"] = cl.bounds.as_dict()
        payload["min_cluster_angle"] = cl.min_cluster_angle
    rows = [(i, lam, s, ids[i] if ids else None)
            for i, (lam, s) in enumerate(zip(report.eigenvalues, report.sigma))]
    return Outcome(True, payload, ("index", "lambda", "sigma", "cluster_id"), rows)


def cmd_octagon(cfg: RunConfig) -> Outcome:
    spec, bounds = chains.octagon_construction()
    rows = chains.octagon_sections(cfg.radius, timing=cfg.timing)
    tol = _tol(cfg, 1e-6)
    for r in rows:
        r["lower_ok"] = r["lambda_min"] >= bounds.lower - tol
        r["upper_ok"] = r["lambda_max"] <= bounds.upper + tol
    ok = all(r["lower_ok"] and r["upper_ok"] and r["nested"] for r in rows)
    payload = {"chain": [c.as_dict() for c in chains.octagon_chain()],
               "bounds": bounds.as_dict(), "sections": rows}
    cols = ("radius", "section_size", "lambda_min", "lambda_max", "runtime_ms",
            "lower_ok", "upper_ok", "nested")
    msg = "" if ok else "finite sections leave the chain interval"
    return Outcome(ok, payload, cols, rows, msg)


def cmd_rhombus(cfg: RunConfig) -> Outcome:
    d = geometry.rhombus(cfg.a, cfg.b)
    f = spectra.rhombus_spectrum(cfg.a, cfg.b)
    tol = _tol(cfg, 1e-10)
    rows = []
    for r in cfg.radius:
        g = gram.gram_section(d, spectra.truncate(f, r)).matrix
        off = float(np.max(np.abs(g - np.diag(np.diag(g)))))
        diag_err = float(np.max(np.abs(np.diag(g) - float(d.measure))))
        rows.append({"radius": r, "section_size": g.shape[0], "max_offdiag": off,
                     "diag_error": diag_err, "ok": off <= tol and diag_err <= tol})
    ok = all(r["ok"] for r in rows)
    payload = {"a": cfg.a, "b": cfg.b, "measure": d.measure, "sections": rows}
    return Outcome(ok, payload, ("radius", "section_size", "max_offdiag", "diag_error", "ok"), rows)


def cmd_theorem31(cfg: RunConfig) -> Outcome:
    certs = []
    for N in cfg.levels:
        if N > nonconvex.DEFAULT_CAP:
            raise CapExceeded(f"level {N} exceeds the cap {nonconvex.DEFAULT_CAP}")
        certs.append(nonconvex.level_certificate(N))
    ok = all(c.valid for c in certs)
    payload = {"limit_bounds": [nonconvex.LIMIT_LOWER, nonconvex.LIMIT_UPPER],
               "levels": [c.as_dict() for c in certs], "valid": ok}
    rows = [{"N": c.N, "M": c.M, "A_exact": c.bounds_exact.lower, "B_exact": c.bounds_exact.upper,
             "A_unscaled": c.unscaled.lower, "B_unscaled": c.unscaled.upper,
             "clusters_ok": c.clusters.ok, "gram_ok": c.gram_ok, "nesting_ok": c.nesting_ok,
             "valid": c.valid} for c in certs]
    cols = ("N", "M", "A_exact", "B_exact", "A_unscaled", "B_unscaled", "clusters_ok",
            "gram_ok", "nesting_ok", "valid")
    return Outcome(ok, payload, cols, rows)


def cmd_gram_verify(cfg: RunConfig) -> Outcome:
    f = resolve_spectrum(cfg, cfg.spectrum)
    if cfg.stack is not None:
        T = stack_from_json(load_json(cfg.stack))
        rows = []
        for r in cfg.radius:
            res = lift.gram_cross_validation(T, spectra.truncate(f, r))
            res["radius"] = r
            rows.append(res)
        ok = all(r["max_abs_diff"] <= _tol(cfg, 1e-10) for r in rows)
        return Outcome(ok, {"cross_validation": rows},
                       ("radius", "size", "max_abs_diff", "max_modulus_diff"), rows)
    d = resolve_domain(cfg, cfg.domain)
    tol = _tol(cfg, 1e-9)
    rows = []
    for r in cfg.radius:
        est = gram.section_bounds(d, f, r)
        q = gram.random_quotient_test(d, f, r, cfg.trials, cfg.seed)
        rows.append({"radius": r, "section_size": est.size, "lambda_min": est.lower,
                     "lambda_max": est.upper, "quotient_min": q["min"], "quotient_max": q["max"],
                     "ok": est.lower - tol <= q["min"] and q["max"] <= est.upper + tol})
    ok = all(r["ok"] for r in rows)
    cols = ("radius", "section_size", "lambda_min", "lambda_max", "quotient_min", "quotient_max", "ok")
    return Outcome(ok, {"domain": d.name, "measure": d.measure, "sections": rows}, cols, rows)


def cmd_chain(cfg: RunConfig) -> Outcome:
    recs = chains.complement_chain(cfg.A, cfg.B, cfg.alpha, cfg.beta)
    ok = all(r.applicable for r in recs)
    payload = {"A": cfg.A, "B": cfg.B, "alpha": cfg.alpha, "beta": cfg.beta,
               "sufficient_condition": chains.sufficient_condition(cfg.A, cfg.B, cfg.beta),
               "steps": [r.as_dict() for r in recs]}
    cols = ("step", "system", "domain", "lower", "upper", "applicable", "note")
    return Outcome(ok, payload, cols, [r.as_dict() for r in recs])


def cmd_report(cfg: RunConfig) -> Outcome:
    rep = chains.uniformity_study(cfg.levels, jobs=cfg.jobs)
    rows = [r.as_dict() for r in rep.rows]
    return Outcome(rep.verdict, rep.as_dict(), ("N", "A_N", "B_N", "nested", "symmdiff"), rows,
                   "" if rep.verdict else "; ".join(rep.failing))


HANDLERS = {
    "domains": cmd_domains, "tiling": cmd_tiling, "gamma": cmd_gamma, "octagon": cmd_octagon,
    "rhombus": cmd_rhombus, "theorem31": cmd_theorem31, "gram-verify": cmd_gram_verify,
    "chain": cmd_chain, "report": cmd_report,
}


def run(cfg: RunConfig) -> int:
    try:
        outcome = HANDLERS[cfg.command](cfg)
    except (UsageError, InputError, CapExceeded, SectionTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RieszForgeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.format == "csv" and outcome.columns:
        text = to_csv(outcome.columns, outcome.rows)
    else:
        text = to_json(outcome.payload)
    if cfg.out:
        try:
            Path(cfg.out).write_text(text)
        except OSError as exc:
            print(f"error: cannot write {cfg.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_USAGE
    elif cfg.command != "tiling":
        sys.stdout.write(text)
    if outcome.message:
        # the tiling verdict is the command's primary output
        print(outcome.message, file=sys.stdout if cfg.command == "tiling" else sys.stderr)
    return EXIT_OK if outcome.ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _levels(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad level list {text!r}")


def _radii(text: str) -> list[Fraction]:
    try:
        return parse_rational_list(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad radius list {text!r}")


def _rational(text: str) -> Fraction:
    try:
        return frac(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad rational {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="riesz-forge", description="Exponential Riesz bases and certified frame bounds.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--levels", type=_levels, default=[2, 3, 4], help="comma-separated levels N")
    p.add_argument("--radius", type=_radii, default=[Fraction(2)], help="comma-separated radii")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="fill the runtime_ms column")
    p.add_argument("--domain", help="domain JSON file or built-in name")
    p.add_argument("--spectrum", help="spectrum JSON file or built-in name")
    p.add_argument("--stack", help="stack JSON file (gram-verify cross-validation)")
    p.add_argument("--lattice", help='lattice generators as rows, e.g. "1,0;0,1/4"')
    p.add_argument("--grid", type=int, default=256)
    p.add_argument("--offsets", help="gamma: comma-separated offsets")
    p.add_argument("--vertices", help="gamma: comma-separated vertices")
    p.add_argument("--a", type=_rational, default=Fraction(1))
    p.add_argument("--b", type=_rational, default=Fraction(1))
    p.add_argument("--A", type=float, default=16.0)
    p.add_argument("--B", type=float, default=16.0)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--beta", type=float, default=2.0)
    p.add_argument("--name", help="domains: emit the JSON of one built-in domain")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        cfg = RunConfig(**vars(ns))
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
