"""Command-line entry point.

Subcommands: demo (defect estimates and deviations for a catalog map), fit
(build the shadowed isometry and, where supported, its norm-one left
inverse), verify (bound checks), suite (the full acceptance run).  Reports
are emitted as JSON or CSV with floats at 17 significant digits, so repeated
runs with the same configuration are byte-identical.

Exit codes: 0 all checks pass, 1 a bound violation was found, 2 usage error,
3 internal or unsupported-construction error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, fields
from typing import Optional

import numpy as np

from . import __version__
from .construct import build_left_inverse_T, build_linear_isometry
from .defect import DEFAULT_SEED, Sampler, estimate_delta, estimate_epsilon
from .errors import NearisoError
from .maps import CATALOG_NAMES, make_hyers_ulam, make_perturbed_isometry, make_ramp_hilbert, make_sharp_l1
from .operators import axis_embedding, isometry_defect, signed_permutation_embedding
from .spaces import SpaceSpec, pnorm_rows
from .suite import run_all
from .verify import BOUND_KINDS, check_bound

_REPORT_COLUMNS = ("kind", "measured", "bound", "margin", "passed", "argmax", "samples")


@dataclass(frozen=True)
class RunConfig:
    command: str
    map_name: Optional[str] = None
    eps: Optional[float] = None
    delta: Optional[float] = None
    p: float = 2.0
    dim: int = 2
    radius: float = 5.0
    step: Optional[float] = None
    count: int = 10000
    seed: int = DEFAULT_SEED
    tol: float = 1e-3
    bound: Optional[str] = None
    format: str = "json"
    out: Optional[str] = None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="neariso",
        description="Numerical laboratory for nearisometries of p-normed spaces.")
    parser.add_argument("--version", action="version", version=f"neariso {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    env_seed = os.environ.get("NEARISO_SEED")
    default_seed = int(env_seed) if env_seed else DEFAULT_SEED

    def add_common(sp, with_map):
        if with_map:
            sp.add_argument("map", choices=CATALOG_NAMES, help="catalog map identifier")
            sp.add_argument("--eps", type=float, default=None, help="claimed distortion budget")
            sp.add_argument("--delta", type=float, default=None, help="claimed covering defect")
            sp.add_argument("--p", type=float, default=2.0, help="norm exponent for perturbed instances")
            sp.add_argument("--dim", type=int, default=2, help="domain dimension for perturbed instances")
        sp.add_argument("--radius", type=float, default=5.0, help="sampling radius")
        sp.add_argument("--step", type=float, default=None, help="grid step on one-dimensional domains")
        sp.add_argument("--count", type=int, default=10000, help="random sample count")
        sp.add_argument("--seed", type=int, default=default_seed,
                        help="seed (default from NEARISO_SEED or 1729)")
        sp.add_argument("--tol", type=float, default=1e-3, help="construction tolerance")
        sp.add_argument("--format", choices=("json", "csv"), default="json", help="report format")
        sp.add_argument("--out", type=str, default=None, help="report output path")

    add_common(sub.add_parser("demo", help="map metadata, defect estimates, deviations"), True)
    add_common(sub.add_parser("fit", help="build the shadowed isometry and left inverse"), True)
    vp = sub.add_parser("verify", help="run bound checks against a catalog map")
    add_common(vp, True)
    vp.add_argument("--bound", choices=BOUND_KINDS, default=None,
                    help="bound kind (default: all kinds applicable to the map)")
    add_common(sub.add_parser("suite", help="run the full acceptance suite"), False)
    return parser


def parse_args(argv) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = {f.name: getattr(ns, "map" if f.name == "map_name" else f.name)
           for f in fields(RunConfig) if hasattr(ns, "map" if f.name == "map_name" else f.name)}
    cfg["command"] = ns.command
    config = RunConfig(**cfg)
    if config.command in ("demo", "fit", "verify"):
        need_delta = config.map_name in ("sharp-l1", "ramp-hilbert")
        if config.eps is None:
            parser.error(f"{config.map_name} needs --eps")
        if need_delta and config.delta is None:
            parser.error(f"{config.map_name} needs --delta")
        if config.eps < 0:
            parser.error("--eps must be nonnegative")
    return config


def _format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        return json.dumps(str(x))  # JSON has no literal for inf/nan
    return format(x, ".17g")


def _canonical_json(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool) or isinstance(obj, np.bool_):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        inner = ",".join(f"{json.dumps(str(k))}:{_canonical_json(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, np.ndarray):
        return _canonical_json(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_canonical_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def render_json(config: RunConfig, reports: list[dict]) -> str:
    doc = {"config": asdict(config), "reports": reports, "version": __version__}
    return _canonical_json(doc) + "\n"


def render_csv(reports: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_REPORT_COLUMNS)
    for rep in reports:
        row = []
        for col in _REPORT_COLUMNS:
            val = rep.get(col)
            if val is None:
                row.append("")
            elif isinstance(val, (bool, np.bool_)):
                row.append("true" if val else "false")
            elif isinstance(val, (float, np.floating)):
                row.append(_format_float(val))
            elif isinstance(val, (int, np.integer)):
                row.append(str(int(val)))
            elif isinstance(val, str):
                row.append(val)
            else:
                row.append(_canonical_json(val))
        writer.writerow(row)
    return buf.getvalue()


def _sampler(config: RunConfig) -> Sampler:
    return Sampler(kind="hybrid", radius=config.radius, step=config.step,
                   count=config.count, seed=config.seed)


def _build_map(config: RunConfig):
    """Returns (map instance, reference isometry)."""
    name = config.map_name
    if name == "hyers-ulam":
        f = make_hyers_ulam(config.eps)
        return f, axis_embedding(f.domain, f.codomain, +1.0)
    if name == "sharp-l1":
        f = make_sharp_l1(config.eps, config.delta)
        return f, axis_embedding(f.domain, f.codomain, +1.0)
    if name == "ramp-hilbert":
        f = make_ramp_hilbert(config.eps, config.delta)
        return f, axis_embedding(f.domain, f.codomain, +1.0)
    if name == "perturbed":
        dom = SpaceSpec(config.dim, config.p)
        cod = SpaceSpec(config.dim + 1, config.p)
        U = signed_permutation_embedding(dom, cod, seed=config.seed)
        return make_perturbed_isometry(dom, cod, U, config.eps, seed=config.seed + 7), U
    raise ValueError(f"unknown map {name!r}")


def _space_dict(space: SpaceSpec) -> dict:
    return {"dim": space.dim, "p": space.p}


def _demo_reports(config: RunConfig) -> list[dict]:
    f, U = _build_map(config)
    sampler = _sampler(config)
    reports = [{
        "kind": "map-metadata", "measured": None, "bound": None, "margin": None,
        "passed": None, "argmax": [], "samples": 0,
        "details": {"name": f.name, "domain": _space_dict(f.domain),
                    "codomain": _space_dict(f.codomain),
                    "claimed_eps": f.claimed_eps, "claimed_delta": f.claimed_delta,
                    "target_subspace_dim": None if f.target_subspace is None
                    else f.target_subspace.dim},
    }]
    eps_rep = estimate_epsilon(f, sampler).to_dict()
    eps_rep["kind"] = "epsilon-defect"
    eps_rep["bound"] = f.claimed_eps
    if f.claimed_eps is not None:
        eps_rep["margin"] = f.claimed_eps - eps_rep["measured"]
    reports.append(eps_rep)
    if f.target_subspace is not None:
        delta_rep = estimate_delta(f, f.target_subspace, sampler).to_dict()
        delta_rep["kind"] = "delta-defect"
        delta_rep["bound"] = f.claimed_delta
        if f.claimed_delta is not None:
            delta_rep["margin"] = f.claimed_delta - delta_rep["measured"]
        reports.append(delta_rep)
    X = sampler.sample(f.domain)
    dev = pnorm_rows(f.evaluate_batch(X) - U.apply_batch(X), f.codomain.p)
    k = int(np.argmax(dev))
    reports.append({"kind": "deviation-sup", "measured": float(dev[k]), "bound": None,
                    "margin": None, "passed": None, "argmax": [X[k].tolist()],
                    "samples": int(X.shape[0])})
    return reports


def _fit_reports(config: RunConfig) -> list[dict]:
    f, _ = _build_map(config)
    phi = build_linear_isometry(f, config.tol)
    defect = isometry_defect(phi)
    reports = [{
        "kind": "isometry-fit", "measured": float(defect), "bound": 2.0 * config.tol,
        "margin": 2.0 * config.tol - float(defect), "passed": True, "argmax": [],
        "samples": 0, "details": {"operator": phi.to_dict()},
    }]
    try:
        T = build_left_inverse_T(f, config.tol)
        ident = float(np.abs(T.matrix @ phi.matrix - np.eye(f.domain.dim)).max())
        reports.append({
            "kind": "left-inverse-fit", "measured": ident, "bound": 1e-9,
            "margin": 1e-9 - ident, "passed": True, "argmax": [], "samples": 0,
            "details": {"operator": T.to_dict()},
        })
        reports.append(check_bound(f, T, "figiel-2eps", _sampler(config)).to_dict())
    except NearisoError as exc:
        reports.append({"kind": "left-inverse-fit", "measured": None, "bound": None,
                        "margin": None, "passed": None, "argmax": [], "samples": 0,
                        "details": {"skipped": str(exc)}})
    return reports


def _default_bound_kinds(f) -> list[str]:
    kinds = []
    if f.claimed_delta is not None:
        kinds.append("delta-onto-2e2d")
        if f.codomain.p == 2.0:
            kinds.extend(["hilbert-2e-d", "hilbert-pythag"])
    if f.codomain.uniformly_convex:
        kinds.append("figiel-2eps")
    return kinds or ["nearsurj-2eps"]


def _verify_reports(config: RunConfig) -> list[dict]:
    f, U = _build_map(config)
    sampler = _sampler(config)
    kinds = [config.bound] if config.bound else _default_bound_kinds(f)
    reports = []
    for kind in kinds:
        if kind == "figiel-2eps":
            A = build_left_inverse_T(f, config.tol)
        elif config.map_name == "perturbed" and kind == "nearsurj-2eps":
            A = build_linear_isometry(f, config.tol)
        else:
            A = U
        reports.append(check_bound(f, A, kind, sampler).to_dict())
    return reports


def execute(config: RunConfig) -> int:
    """Run the configured command, write reports, and return the exit code."""
    try:
        if config.command == "demo":
            reports = _demo_reports(config)
        elif config.command == "fit":
            reports = _fit_reports(config)
        elif config.command == "verify":
            reports = _verify_reports(config)
        elif config.command == "suite":
            reports = [res.to_dict() for res in run_all(config.seed)]
        else:
            raise ValueError(f"unknown command {config.command!r}")
    except NearisoError as exc:
        sys.stderr.write(f"error: {exc}\n")
        if config.out:
            doc = render_json(config, [{"kind": "error", "measured": None, "bound": None,
                                        "margin": None, "passed": False, "argmax": [],
                                        "samples": 0, "details": {"error": str(exc)}}])
            with open(config.out, "w") as fh:
                fh.write(doc)
        return 3
    except ValueError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2

    for rep in reports:
        status = {True: "PASS", False: "FAIL", None: "info"}[rep.get("passed")]
        measured = rep.get("measured")
        bound = rep.get("bound")
        line = f"{status:>4}  {rep['kind']}"
        if measured is not None:
            line += f"  measured={_format_float(measured)}"
        if bound is not None:
            line += f"  bound={_format_float(bound)}"
        print(line)

    payload = render_json(config, reports) if config.format == "json" else render_csv(reports)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(payload)
    elif config.format == "json":
        print(payload, end="")
    else:
        print(payload, end="")
    return 0 if all(rep.get("passed") in (True, None) for rep in reports) else 1


def main(argv=None) -> int:
    return execute(parse_args(argv if argv is not None else sys.argv[1:]))


if __name__ == "__main__":
    sys.exit(main())
