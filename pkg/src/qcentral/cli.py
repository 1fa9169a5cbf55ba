"""Command-line front end.

    qcentral multiplier --q 0.5 --t 0.29 --dmax 50
    qcentral eigen --q 0.5 --t 0.3 --ntr 200 --format text
    qcentral theta --q 0.5 --z 0.3,1.2 --dmax 8 --ntr 300
    qcentral fusion --spins 2,3 --q 0.5
    qcentral fusion --words ab,ba
    qcentral structure --matrix F.json
    qcentral schedule --delta 0.1
    qcentral verify --seed 0

Exit codes: 0 success, 1 verification failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import checks, fusion, multipliers, schedule, structure, suq2_model
from .emit import dumps_csv, dumps_json, dumps_text
from .qspecial import QParam, chebyshev_mu, q_hermite, q_pochhammer

__all__ = ["RunConfig", "ConfigError", "build_parser", "config_from_args", "run", "main", "read_matrix"]

SUBCOMMANDS = ("special", "multiplier", "eigen", "theta", "fusion", "structure", "schedule", "verify")
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    q: float = 0.5
    t_or_z: complex = 0.3 + 0j
    d_max: int = 20
    n_tr: int = 300
    power: int = 3
    delta: float = 0.1
    format: str = "json"
    seed: int = checks.DEFAULT_SEED
    matrix: str | None = None
    identity: int | None = None
    spins: tuple[int, int] | None = None
    words: tuple[str, str] | None = None
    N: int | None = None
    dps: int | None = None
    eps: float = 1e-6
    checks: list[str] = field(default_factory=list)

    def validate(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError(f"unknown subcommand {self.subcommand!r}")
        if self.format not in ("json", "csv", "text"):
            raise ConfigError(f"unknown format {self.format!r}")
        try:
            QParam(self.q)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.d_max < 0:
            raise ConfigError("--dmax must be non-negative")
        if self.n_tr < 4:
            raise ConfigError("--ntr must be at least 4")
        if self.power < 1:
            raise ConfigError("--power must be positive")
        if not 0.0 < self.delta < 1.0:
            raise ConfigError("--delta must lie in (0, 1)")
        if self.dps is not None and self.dps < 16:
            raise ConfigError("--dps below 16 is no better than double precision")
        if self.subcommand in ("multiplier", "eigen", "theta") and not -1.0 < self.t_or_z.real < 1.0:
            raise ConfigError(f"Re z must lie in (-1, 1), got {self.t_or_z}")
        if self.subcommand == "structure" and (self.matrix is None) == (self.identity is None):
            raise ConfigError("structure needs exactly one of --matrix or --identity")
        if self.subcommand == "fusion" and not (self.spins or self.words or self.N):
            raise ConfigError("fusion needs --spins, --words or --N")
        if self.N is not None and self.N < 2:
            raise ConfigError("--N must be at least 2")
        bad = [c for c in self.checks if c not in checks.CRITERIA]
        if bad:
            raise ConfigError(f"unknown checks {bad}; choose from {sorted(checks.CRITERIA)}")


def _parse_z(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're,im' or a real number, got {text!r}")


def _parse_pair(cast):
    def parse(text: str):
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 2:
            raise argparse.ArgumentTypeError(f"expected two comma-separated values, got {text!r}")
        try:
            return tuple(cast(p) for p in parts)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None

    return parse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=float, default=0.5, help="deformation parameter, 0 < |q| < 1")
    grp = common.add_mutually_exclusive_group()
    grp.add_argument("--t", type=float, help="real parameter t")
    grp.add_argument("--z", type=_parse_z, help="complex parameter as re,im")
    common.add_argument("--dmax", type=int, default=20)
    common.add_argument("--ntr", type=int, default=300, help="truncation size of l^2(N)")
    common.add_argument("--power", type=int, default=3)
    common.add_argument("--delta", type=float, default=0.1)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=checks.DEFAULT_SEED)
    common.add_argument("--matrix", help="F as JSON {n, rows} or CSV of complex entries")
    common.add_argument("--identity", type=int, help="use F = I_N")
    common.add_argument("--spins", type=_parse_pair(int), help="two spin labels d (spin d/2), e.g. 2,3")
    common.add_argument("--words", type=_parse_pair(str), help="two words over a,b, e.g. ab,ba")
    common.add_argument("--N", type=int, help="classical dimension for the growth table")
    common.add_argument("--dps", type=int, help="mpmath digits for the special-function recurrences")
    common.add_argument("--eps", type=float, default=1e-6, help="cb tolerance for multiplier truncation")
    common.add_argument("--check", action="append", default=[], dest="checks",
                        help="run only this verification check (repeatable)")

    parser = argparse.ArgumentParser(prog="qcentral", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    helps = {
        "special": "Chebyshev, q-Hermite and q-Pochhammer tables",
        "multiplier": "coefficients b_d and the cb-summability report",
        "eigen": "eigenvector certification for the Jacobi operator",
        "theta": "theta_z on the coefficients u^{(d/2)}_{ii}",
        "fusion": "fusion decompositions and dimension growth",
        "structure": "profile of the defining matrix F",
        "schedule": "free-product truncation schedule",
        "verify": "run the verification suite",
    }
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    if ns.z is not None:
        tz = ns.z
    elif ns.t is not None:
        tz = complex(ns.t, 0.0)
    else:
        tz = 0.3 + 0j
    return RunConfig(
        subcommand=ns.subcommand, q=ns.q, t_or_z=tz, d_max=ns.dmax, n_tr=ns.ntr, power=ns.power,
        delta=ns.delta, format=ns.format, seed=ns.seed, matrix=ns.matrix, identity=ns.identity,
        spins=ns.spins, words=ns.words, N=ns.N, dps=ns.dps, eps=ns.eps, checks=list(ns.checks),
    )


def read_matrix(path: str) -> np.ndarray:
    """Read F from JSON ``{"n": N, "rows": [[[re, im], ...], ...]}`` or from CSV."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read matrix file: {exc}") from None
    if p.suffix.lower() == ".csv":
        try:
            rows = [[complex(c.strip().replace(" ", "")) for c in r] for r in csv.reader(text.splitlines()) if r]
        except ValueError as exc:
            raise ConfigError(f"bad CSV matrix entry: {exc}") from None
        return np.array(rows, dtype=complex)
    try:
        data = json.loads(text)
        n = int(data["n"])
        rows = [[complex(*e) if isinstance(e, list) else complex(e) for e in r] for r in data["rows"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"bad JSON matrix file: {exc}") from None
    F = np.array(rows, dtype=complex)
    if F.shape != (n, n):
        raise ConfigError(f"matrix file declares n = {n} but has shape {F.shape}")
    return F


def _real_or_complex(v: complex, real: bool):
    return float(v.real) if real else complex(v)


def _special(cfg: RunConfig):
    q = QParam(cfg.q)
    z = cfg.t_or_z
    x = q.absq**z + q.absq ** (-z)
    real = z.imag == 0
    x = x.real if real else x
    rows = []
    for d in range(cfg.d_max + 1):
        rows.append({
            "d": d,
            "mu_gauge": complex(chebyshev_mu(d, q.gauge, dps=cfg.dps)).real,
            "mu_x": _real_or_complex(complex(chebyshev_mu(d, x, dps=cfg.dps)), real),
            "hermite_x": _real_or_complex(complex(q_hermite(d, x, q.q**2, dps=cfg.dps)), real),
            "pochhammer": float(q_pochhammer(q.q**2, q.q**2, d)),
        })
    payload = {"q": q.q, "t_or_z": z, "x": x, "gauge": q.gauge, "dps": cfg.dps, "rows": rows}
    return payload, rows, EXIT_OK


def _multiplier(cfg: RunConfig):
    q = QParam(cfg.q)
    z = cfg.t_or_z
    real = z.imag == 0
    b = [_real_or_complex(multipliers.b_coeff(q, z, d), real) for d in range(cfg.d_max + 1)]
    payload = {"q": q.q, "t_or_z": z.real if real else z, "power": cfg.power, "d_max": cfg.d_max, "b": b}
    rows = [{"d": d, "b": v} for d, v in enumerate(b)]
    if 0.0 < z.real < 1.0:
        payload["decay_rate"] = multipliers.decay_rate(q, z)
    if real and 0.0 < z.real < 1.0:
        rep = multipliers.summability_report(q, z.real, cfg.power, cfg.d_max)
        payload["summability"] = rep.to_dict()
        for row, term, ps in zip(rows, rep.terms, rep.partial_sums):
            row["term"], row["partial_sum"] = term, ps
        if rep.converges:
            tr = multipliers.truncate_multiplier(q, z.real, cfg.power, cfg.eps)
            payload["truncation"] = {"d_cut": tr.d_cut, "cb_error_bound": tr.cb_error_bound, "eps": tr.eps}
    else:
        payload["summability"] = None
    return payload, rows, EXIT_OK


def _eigen(cfg: RunConfig):
    q = QParam(cfg.q)
    z = cfg.t_or_z
    eta = suq2_model.eta_vector(q, z, cfg.n_tr)
    res, rayleigh = suq2_model.eigen_residual(q, z, cfg.n_tr)
    payload = {
        "q": q.q,
        "t_or_z": z,
        "n_tr": cfg.n_tr,
        "eigenvalue": eta.eigenvalue,
        "rayleigh_quotient": rayleigh,
        "eigenvalue_error": abs(rayleigh - eta.eigenvalue),
        "residual": res,
        "c_z": eta.c_z,
        "tail_bound": eta.tail_bound,
        "decay_length": suq2_model.decay_length(q, z),
    }
    return payload, None, EXIT_OK


def _theta(cfg: RunConfig):
    q = QParam(cfg.q)
    z = cfg.t_or_z
    th = suq2_model.theta_pair(q, z, cfg.d_max, cfg.n_tr)
    rows = []
    for d in range(cfg.d_max + 1):
        ratio = th[d] / th.c_z
        ref = multipliers.b_coeff(q, z, d)
        rows.append({"d": d, "theta": th[d], "ratio": ratio, "b": ref, "rel_error": abs(ratio - ref) / abs(ref)})
    payload = {"q": q.q, "t_or_z": z, "n_tr": cfg.n_tr, "c_z": th.c_z, "rows": rows}
    return payload, rows, EXIT_OK


def _decomposition(element: fusion.FusionElement, q: QParam, n: int):
    rows = []
    for label in sorted(element):
        rows.append({
            "label": str(label),
            "multiplicity": element[label],
            "dim": fusion.classical_dim(label, n),
            "qdim": fusion.qdim(label, q),
        })
    return rows


def _fusion(cfg: RunConfig):
    q = QParam(cfg.q)
    payload: dict = {"q": q.q}
    rows: list = []
    if cfg.spins:
        a, b = (fusion.SpinLabel(d) for d in cfg.spins)
        prod = fusion.fuse_spins(a, b)
        dec = _decomposition(prod, q, 2)
        payload["spins"] = {
            "left": str(a), "right": str(b), "decomposition": dec,
            "integer_spin_part": [str(k) for k in sorted(fusion.integer_spins(prod))],
            "qdim_product": fusion.qdim(a, q) * fusion.qdim(b, q),
            "qdim_sum": prod.total(lambda c: fusion.qdim(c, q)),
        }
        rows += dec
    if cfg.words:
        n = cfg.N or 2
        w, v = (fusion.FreeWord(s if s != "e" else "") for s in cfg.words)
        prod = fusion.fuse_words(w, v)
        dec = _decomposition(prod, q, n)
        payload["words"] = {
            "left": str(w), "right": str(v), "decomposition": dec,
            "qdim_product": fusion.qdim(w, q) * fusion.qdim(v, q),
            "qdim_sum": prod.total(lambda c: fusion.qdim(c, q)),
        }
        rows += dec
    if cfg.N and not cfg.words:
        table, diverges = fusion.dim_growth_table(q, cfg.N, cfg.d_max)
        grow = [vars(r) for r in table]
        payload["dim_growth"] = {"N": cfg.N, "diverges": diverges, "rows": grow}
        rows += grow
    return payload, rows, EXIT_OK


def _structure(cfg: RunConfig):
    F = np.eye(cfg.identity) if cfg.identity is not None else read_matrix(cfg.matrix)
    prof = structure.profile(F)
    return prof.to_dict(), None, EXIT_OK


def _schedule(cfg: RunConfig):
    return schedule.plan(cfg.delta).to_dict(), None, EXIT_OK


def _verify(cfg: RunConfig):
    names = cfg.checks or list(checks.CRITERIA)
    results = []
    for name in names:
        fn = checks.CRITERIA[name]
        results.append(fn(cfg.seed) if name in checks._SEEDED else fn())
    ok = all(r.passed for r in results)
    payload = {
        "seed": cfg.seed,
        "all_passed": ok,
        "checks": [
            {"name": r.name, "passed": r.passed, "worst": r.worst, "tolerance": r.tolerance, "detail": r.detail}
            for r in results
        ],
    }
    rows = [{"name": r.name, "passed": r.passed, "worst": r.worst, "tolerance": r.tolerance} for r in results]
    return payload, rows, EXIT_OK if ok else EXIT_FAIL


_HANDLERS = {
    "special": _special,
    "multiplier": _multiplier,
    "eigen": _eigen,
    "theta": _theta,
    "fusion": _fusion,
    "structure": _structure,
    "schedule": _schedule,
    "verify": _verify,
}


def _key_value_rows(payload: dict) -> list[dict]:
    return [{"key": k, "value": v} for k, v in payload.items() if not isinstance(v, (dict, list)) or k in ("t_or_z", "c_z", "eigenvalue", "rayleigh_quotient")]


def render(cfg: RunConfig, payload: dict, rows) -> str:
    if cfg.format == "json":
        return dumps_json(payload)
    if cfg.subcommand == "verify" and cfg.format == "text":
        lines = [checks.CheckResult(**{**r, "detail": {}}).line() for r in rows]
        return "\n".join(lines) + "\n"
    table = rows if rows is not None else _key_value_rows(payload)
    if cfg.format == "csv":
        return dumps_csv(table)
    return dumps_text(table, title=f"qcentral {cfg.subcommand}")


def run(cfg: RunConfig) -> tuple[int, str]:
    """Validate, dispatch and render; returns (exit status, output text)."""
    cfg.validate()
    try:
        payload, rows, status = _HANDLERS[cfg.subcommand](cfg)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return status, render(cfg, payload, rows)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)  # argparse exits with status 2 on bad flags
    try:
        status, text = run(config_from_args(ns))
    except ConfigError as exc:
        print(f"qcentral: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
