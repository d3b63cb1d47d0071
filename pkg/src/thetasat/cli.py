"""Command line front end: ``thetasat <command> [options]``."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import __version__
from .containers import UniformHypergraph, build_containers, tau_for
from .errors import DomainError, Failure
from .expansion import epsilon_schedule, refine_paths, verify_expansion, x_set
from .graph_core import Graph, sample_gnp
from .hypergraph import simplified_bound_check
from .oracle import copy_edge_sets, deletion_bound, exact_ex, exponent_table, greedy_free, verify_cover
from .pruning import min_degree_core, scale_parameters
from .supersat import SupersatConfig, graph_k, supersaturate

CSV_VERSION = 1
CONFIG_SECTIONS = {"supersat", "experiment", "seed"}
EXPERIMENT_KEYS = {"n", "p_grid", "trials", "a", "b", "exact_cap"}


def _setup_logging() -> None:
    level = os.environ.get("SUPERSAT_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


def load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot read config {path}: {exc}")
    if not isinstance(data, dict):
        raise click.UsageError("config must be a JSON object")
    extra = set(data) - CONFIG_SECTIONS
    if extra:
        raise click.UsageError(f"unknown config sections {sorted(extra)}")
    exp = data.get("experiment", {})
    if set(exp) - EXPERIMENT_KEYS:
        raise click.UsageError(f"unknown experiment keys {sorted(set(exp) - EXPERIMENT_KEYS)}")
    try:
        data["supersat"] = SupersatConfig.from_dict(data.get("supersat", {}))
    except (DomainError, TypeError, ValueError) as exc:
        raise click.UsageError(f"bad supersat config: {exc}")
    return data


def _host(n: int | None, graph: str | None, p: float | None, seed: int) -> Graph:
    if graph:
        try:
            return Graph.from_edgelist(Path(graph).read_text())
        except (OSError, ValueError) as exc:
            raise click.UsageError(f"cannot read graph {graph}: {exc}")
    if n is None:
        raise click.UsageError("give --n or --graph")
    if p is None or p >= 1:
        return Graph.complete(n)
    return sample_gnp(n, Fraction(str(p)), seed)


def _out_dir(out: str | None) -> Path | None:
    if out is None:
        return None
    d = Path(out)
    d.mkdir(parents=True, exist_ok=True)
    return d


def trial_seed(seed: int, n: int, p: Fraction, trial: int) -> int:
    h = hashlib.blake2b(f"{seed}:{n}:{p}:{trial}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big")


@click.group()
@click.version_option(__version__)
@click.option("--config", "config_path", type=click.Path(), default=None, help="JSON config document.")
@click.option("--seed", type=int, default=None, help="Master seed.")
@click.option("--out", type=click.Path(), default=None, help="Directory for artifacts.")
@click.pass_context
def main(ctx, config_path, seed, out):
    """Supersaturation, expansion and random Turan tooling for theta graphs."""
    _setup_logging()
    cfg = load_config(config_path)
    ctx.obj = {
        "config": cfg,
        "seed": seed if seed is not None else int(cfg.get("seed", 0)),
        "out": _out_dir(out),
    }


@main.command()
@click.option("--a", "a", type=int, default=3, show_default=True)
@click.option("--b", "b", type=int, default=3, show_default=True)
@click.option("--n", "n", type=int, default=20, show_default=True, help="Host K_n (or G(n,p) with --p).")
@click.option("--p", "p", type=float, default=None)
@click.option("--graph", type=click.Path(exists=True), default=None, help="Edge-list host file.")
@click.pass_obj
def supersat(obj, a, b, n, p, graph):
    """Run the builder and write the manifest and hyperedges."""
    g = _host(n, graph, p, obj["seed"])
    cfg = obj["config"].get("supersat", SupersatConfig())
    try:
        res = supersaturate(g, a, b, cfg)
    except DomainError as exc:
        raise click.UsageError(str(exc))
    manifest = res.manifest()
    text = json.dumps(manifest, indent=1, sort_keys=True)
    if obj["out"]:
        (obj["out"] / "manifest.json").write_text(text + "\n")
        (obj["out"] / "hyperedges.jsonl").write_text(res.family.union.to_jsonl())
    click.echo(text)
    if res.stop == "Failure":
        click.echo(f"stopped: {res.stop} ({res.steps[-1] if res.steps else ''})", err=True)
        sys.exit(1)


@main.command("verify-expansion")
@click.option("--b", "b", type=int, default=3, show_default=True)
@click.option("--n", "n", type=int, default=16, show_default=True)
@click.option("--p", "p", type=float, default=None)
@click.option("--graph", type=click.Path(exists=True), default=None)
@click.option("--c", "c", type=str, default="1/2", show_default=True, help="Epsilon base.")
@click.option("--fanout", type=int, default=6, show_default=True)
@click.pass_obj
def verify_expansion_cmd(obj, b, n, p, graph, c, fanout):
    """Certificate for the first X vertex and its epsilon report."""
    g = _host(n, graph, p, obj["seed"])
    if g.m == 0:
        raise click.UsageError("host has no edges")
    try:
        eps = epsilon_schedule(b, Fraction(c))
    except (DomainError, ValueError) as exc:
        raise click.UsageError(str(exc))
    core = min_degree_core(g, b)
    gp, labels = g.induced(core.vertices)
    sp = scale_parameters(gp, g.n, graph_k(g, b), b)
    xs = x_set(gp, sp, eps)
    if isinstance(xs, Failure):
        click.echo(f"x_set failed: {xs.detail}", err=True)
        sys.exit(1)
    x = min(xs.X)
    cert = refine_paths(gp, x, xs.t, sp, eps, layers=xs.neighborhoods[x], fanout_floor=fanout, X=xs.X)
    if isinstance(cert, Failure):
        click.echo(f"refinement failed at {cert.step}: {cert.detail}", err=True)
        sys.exit(1)
    rep = verify_expansion(cert, sp, gp)
    if obj["out"]:
        (obj["out"] / "certificate.json").write_text(cert.to_json())
        (obj["out"] / "expansion_report.json").write_text(rep.to_json())
    click.echo(rep.to_json())
    if not rep.all_positive:
        sys.exit(1)


@main.command("check-bounds")
@click.option("--a", "a", type=int, required=True)
@click.option("--b", "b", type=int, required=True)
@click.option("--route", type=click.Choice(["direct", "proof"]), default="direct", show_default=True)
@click.option("--no-grid", is_flag=True, help="Skip the numeric grid evaluation.")
@click.pass_obj
def check_bounds(obj, a, b, route, no_grid):
    """Signature scan of the edge codegree bound; writes a CSV."""
    try:
        rep = simplified_bound_check(a, b, route=route, with_grid=not no_grid)
    except DomainError as exc:
        raise click.UsageError(str(exc))
    buf = io.StringIO()
    buf.write(f"# thetasat check-bounds v{CSV_VERSION} a={a} b={b} route={route}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "size", "e", "f", "g", "p", "forest", "feasible", "worst_exponent", "grid_c"])
    for v in rep.verdicts:
        k = v.key
        w.writerow([k.t, k.size, k.e, k.f, k.g, k.p, int(k.forest), "feasible" if v.feasible else "Infeasible",
                    str(v.worst_exponent), "" if v.grid_c is None else f"{v.grid_c:.6g}"])
    if obj["out"]:
        (obj["out"] / f"bounds_a{a}_b{b}_{route}.csv").write_text(buf.getvalue())
    else:
        click.echo(buf.getvalue(), nl=False)
    at = rep.find(2, 2)
    status = "feasible" if at and all(v.feasible for v in at) else "Infeasible"
    click.echo(f"t=2,p=2: {status}")
    click.echo(f"overall: {'feasible' if rep.feasible else 'Infeasible'} ({len(rep.infeasible())} infeasible signatures)")


@main.command()
@click.option("--N", "N", type=int, default=12, show_default=True, help="Vertices of a random r-graph.")
@click.option("--r", "r", type=int, default=3, show_default=True)
@click.option("--m", "m", type=int, default=20, show_default=True, help="Hyperedges of the random r-graph.")
@click.option("--delta", type=str, default="1/2", show_default=True)
@click.option("--host-n", type=int, default=None, help="Use theta copies in K_n instead (vertices = edges).")
@click.option("--a", "a", type=int, default=2, show_default=True)
@click.option("--b", "b", type=int, default=2, show_default=True)
@click.pass_obj
def containers(obj, N, r, m, delta, host_n, a, b):
    """Build containers and check coverage of independent sets."""
    delta = Fraction(delta)
    if host_n is not None:
        g = Graph.complete(host_n)
        edges = list(g.edges)
        index = {e: i for i, e in enumerate(edges)}
        hyper = [[index[tuple(sorted(e))] for e in c] for c in copy_edge_sets(g, a, b)]
        h = UniformHypergraph.from_edges(len(edges), a * b, hyper)
    else:
        h = UniformHypergraph.random(N, r, m, random.Random(obj["seed"]))
    if h.e == 0:
        raise click.UsageError("the hypergraph has no hyperedges")
    tau = tau_for(h, delta)
    cs = build_containers(h, tau, delta)
    rep = cs.verify(None if h.N <= 20 else 500, random.Random(obj["seed"]))
    verdict = {
        "N": h.N,
        "hyperedges": h.e,
        "tau": str(tau),
        "delta": str(delta),
        "containers": len(cs.containers),
        "checked": rep.checked,
        "uncovered": len(rep.uncovered),
        "max_fingerprint": rep.max_fingerprint,
        "fingerprint_bound": str(rep.fingerprint_bound),
        "loss_ok": rep.loss_ok,
        "exhaustive": rep.exhaustive,
    }
    if host_n is not None:
        v = verify_cover(g, a, b, [[edges[i] for i in c] for c in cs.containers],
                         None if g.m <= 20 else 500, random.Random(obj["seed"]))
        verdict["oracle_covered"] = v.covered
    text = json.dumps(verdict, indent=1)
    if obj["out"]:
        (obj["out"] / "containers.json").write_text(text + "\n")
    click.echo(text)
    if not rep.ok or not verdict.get("oracle_covered", True):
        sys.exit(1)


def experiment_rows(a: int, b: int, n: int, p_grid, trials: int, seed: int, exact_cap: int) -> list[tuple]:
    rows = []
    for p in p_grid:
        p = Fraction(str(p))
        for t in range(trials):
            g = sample_gnp(n, p, trial_seed(seed, n, p, t))
            exact = exact_ex(g, a, b).value if n <= exact_cap else None
            rows.append((n, p, t, g.m, deletion_bound(g, a, b), greedy_free(g, a, b), exact))
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    return rows


@main.command()
@click.option("--a", "a", type=int, default=None, help="F = theta_{a,b}; default C4 (a=b=2).")
@click.option("--b", "b", type=int, default=None)
@click.option("--n", "n", type=int, default=None)
@click.option("--p-grid", type=str, default=None, help="Comma-separated p values.")
@click.option("--trials", type=int, default=None)
@click.option("--exact-cap", type=int, default=None, help="Compute exact values when n <= this.")
@click.pass_obj
def experiment(obj, a, b, n, p_grid, trials, exact_cap):
    """CSV of (n, p, trial, e, deletion, greedy, exact) over G(n,p) samples."""
    exp = obj["config"].get("experiment", {})
    a = a if a is not None else exp.get("a", 2)
    b = b if b is not None else exp.get("b", 2)
    n = n if n is not None else exp.get("n", 10)
    trials = trials if trials is not None else exp.get("trials", 20)
    exact_cap = exact_cap if exact_cap is not None else exp.get("exact_cap", 12)
    if p_grid is not None:
        try:
            grid = [Fraction(s.strip()) for s in p_grid.split(",") if s.strip()]
        except ValueError as exc:
            raise click.UsageError(f"bad --p-grid: {exc}")
    else:
        grid = [Fraction(str(x)) for x in exp.get("p_grid", [i / 10 for i in range(1, 11)])]
    if any(not (0 <= p <= 1) for p in grid) or n < 1 or trials < 1:
        raise click.UsageError("need 0 <= p <= 1, n >= 1 and trials >= 1")
    rows = experiment_rows(a, b, n, grid, trials, obj["seed"], exact_cap)
    buf = io.StringIO()
    buf.write(f"# thetasat experiment v{CSV_VERSION} a={a} b={b} seed={obj['seed']}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "p", "trial", "edges", "deletion", "greedy", "exact"])
    for r in rows:
        w.writerow([r[0], str(r[1]), r[2], r[3], r[4], r[5], "" if r[6] is None else r[6]])
    if obj["out"]:
        (obj["out"] / "experiment.csv").write_text(buf.getvalue())
    else:
        click.echo(buf.getvalue(), nl=False)


@main.command()
@click.option("--a", "a", type=int, required=True)
@click.option("--b", "b", type=int, required=True)
@click.pass_obj
def exponents(obj, a, b):
    """Threshold exponents for theta_{a,b}."""
    try:
        rec = exponent_table(a, b)
    except DomainError as exc:
        raise click.UsageError(str(exc))
    lines = [f"{k}\t{v}" for k, v in rec.rows()]
    lines.append(f"cross_checked\t{rec.cross_checked}")
    text = "\n".join(lines) + "\n"
    if obj["out"]:
        (obj["out"] / f"exponents_a{a}_b{b}.tsv").write_text(text)
    click.echo(text, nl=False)


if __name__ == "__main__":
    main()
