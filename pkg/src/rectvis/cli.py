"""Command line surface: generators, solver dispatch, entropy reports,
adversary runs and the benchmark sweep."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import sys
import time

import click

from . import adversary as adv
from . import entropy as ent
from .baseline import report_bichromatic_pairs, report_participating_sweep
from .core import (
    ComparisonCounter,
    DegenerateInput,
    FastComparator,
    Instance,
    load_points,
    replay_transcript,
    save_points,
    validate_instance,
)
from .families import FAMILIES, BadParams, generate
from .optimal import (
    DEFAULT_DELTA,
    prepare,
    report_pairs_instance_optimal,
    run_instance_optimal,
)
from .oracle import oracle_participating, oracle_visible_pairs

SCHEMA_VERSION = 1
SOLVERS = ("oracle", "sweep", "optimal")

EXIT_VALIDATION = 2
EXIT_INTERNAL = 3


def _digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def solve(inst: Instance, solver: str, problem: str, *, delta: float = DEFAULT_DELTA,
          emptiness: str = "grid") -> dict:
    """Run one solver on one problem; returns participating/pairs, the
    comparison count and per-round stats."""
    counter = ComparisonCounter()
    cmp = FastComparator(inst, counter)
    rounds = []
    pairs = None
    if solver == "oracle":
        # condition to ranks through counted sorts, then evaluate directly
        cmp.sort_ids(0, list(range(inst.n)))
        cmp.sort_ids(1, list(range(inst.n)))
        pairs_set = oracle_visible_pairs(inst)
        participating = oracle_participating(inst)
        if problem == "pairs":
            pairs = pairs_set
    elif solver == "sweep":
        participating = report_participating_sweep(cmp)
        if problem == "pairs":
            pairs = report_bichromatic_pairs(cmp)
    elif solver == "optimal":
        trees, runs = prepare(cmp)
        if problem == "pairs":
            pairs, rstats = report_pairs_instance_optimal(
                cmp, trees, runs, delta=delta, emptiness=emptiness)
            participating = {i for p in pairs for i in p}
            rounds = [r.to_dict() for r in rstats]
        else:
            participating, rstats = run_instance_optimal(
                cmp, trees, runs, delta=delta, emptiness=emptiness)
            rounds = [r.to_dict() for r in rstats]
    else:
        raise click.UsageError(f"unknown solver {solver!r}")
    out = {
        "solver": solver,
        "n": inst.n,
        "participating": sorted(participating),
        "comparisons": counter.count,
        "rounds": rounds,
    }
    if pairs is not None:
        out["pairs"] = sorted(sorted(p) for p in pairs)
    return out


def _emit(report: dict, json_path, human: str) -> None:
    click.echo(human)
    if json_path:
        payload = json.dumps(report, indent=2, sort_keys=True)
        if json_path == "-":
            click.echo(payload)
        else:
            with open(json_path, "w", encoding="utf-8") as fh:
                fh.write(payload + "\n")


class _Fail(click.ClickException):
    def __init__(self, message, code):
        super().__init__(message)
        self.exit_code = code


def _load(input_path, dedupe_ties) -> Instance:
    try:
        return load_points(input_path, tie_break=dedupe_ties)
    except DegenerateInput as exc:
        raise _Fail(f"degenerate input: {exc} (use --dedupe-ties to break ties)",
                    EXIT_VALIDATION)
    except (ValueError, OSError) as exc:
        raise _Fail(str(exc), EXIT_VALIDATION)


def _guard_internal(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (adv.InconsistentState, AssertionError) as exc:
        raise _Fail(f"internal invariant failure: {exc}", EXIT_INTERNAL)


@click.group()
def main():
    """Bichromatic empty-rectangle visibility toolkit."""


@main.command()
@click.option("--family", type=click.Choice(FAMILIES), required=True)
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, default=None, help="cluster count (diag-clusters)")
@click.option("--seed", type=int, default=0)
@click.option("--p-blue", type=float, default=0.5, help="blue fraction (uniform)")
@click.option("--out", type=click.Path(), required=True)
def gen(family, n, k, seed, p_blue, out):
    """Write a generated instance to a point file."""
    try:
        rows = generate(family, n, k=k, seed=seed, p_blue=p_blue)
    except BadParams as exc:
        raise _Fail(str(exc), EXIT_VALIDATION)
    save_points(rows, out)
    click.echo(f"wrote {len(rows)} points to {out}")


def _run_reporting(problem, input_path, solver, delta, emptiness, json_path,
                   dedupe_ties, with_entropy):
    t0 = time.perf_counter()
    inst = _load(input_path, dedupe_ties)
    result = _guard_internal(solve, inst, solver, problem,
                             delta=delta, emptiness=emptiness)
    report = {
        "schema": SCHEMA_VERSION,
        "input_digest": _digest(input_path),
        **result,
        "entropy": None,
    }
    if with_entropy:
        er = ent.entropy_report(inst, set(result["participating"]))
        report["entropy"] = er.to_dict()
    report["wall_time_s"] = round(time.perf_counter() - t0, 6)
    h = len(result["participating"])
    human = (f"{problem}: solver={solver} n={inst.n} h={h} "
             f"comparisons={result['comparisons']}")
    if problem == "pairs":
        human += f" pairs={len(result['pairs'])}"
    _emit(report, json_path, human)


_common = [
    click.argument("input_path", type=click.Path(exists=True, dir_okay=False)),
    click.option("--solver", type=click.Choice(SOLVERS), default="optimal"),
    click.option("--delta", type=float, default=DEFAULT_DELTA, show_default=True),
    click.option("--emptiness", type=click.Choice(["grid", "scan"]), default="grid"),
    click.option("--json", "json_path", type=click.Path(), default=None),
    click.option("--dedupe-ties", is_flag=True, default=False),
    click.option("--with-entropy", is_flag=True, default=False,
                 help="attach the entropy certificate to the report"),
]


def _apply(decorators):
    def wrap(fn):
        for d in reversed(decorators):
            fn = d(fn)
        return fn
    return wrap


@main.command()
@_apply(_common)
def points(input_path, solver, delta, emptiness, json_path, dedupe_ties, with_entropy):
    """Report participating points."""
    _run_reporting("points", input_path, solver, delta, emptiness, json_path,
                   dedupe_ties, with_entropy)


@main.command()
@_apply(_common)
def pairs(input_path, solver, delta, emptiness, json_path, dedupe_ties, with_entropy):
    """Report bichromatic visible pairs."""
    _run_reporting("pairs", input_path, solver, delta, emptiness, json_path,
                   dedupe_ties, with_entropy)


@main.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "json_path", type=click.Path(), default=None)
@click.option("--dedupe-ties", is_flag=True, default=False)
def entropy(input_path, json_path, dedupe_ties):
    """Emit the entropy certificate report."""
    t0 = time.perf_counter()
    inst = _load(input_path, dedupe_ties)
    counter = ComparisonCounter()
    cmp = FastComparator(inst, counter)
    participating = report_participating_sweep(cmp)
    er = _guard_internal(ent.entropy_report, inst, participating)
    report = {
        "schema": SCHEMA_VERSION,
        "input_digest": _digest(input_path),
        "entropy": er.to_dict(),
        "wall_time_s": round(time.perf_counter() - t0, 6),
    }
    ok = "ok" if er.all_ok else "FAILED"
    human = (f"entropy: n={er.n} h={er.h} H_pikd={er.H_pikd:.4f} "
             f"H_slab={er.H_slab:.4f} certificates={ok}")
    _emit(report, json_path, human)
    if not er.all_ok:
        raise _Fail("entropy certificates failed", EXIT_INTERNAL)


@main.command("adversary")
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--solver", type=click.Choice(["sweep", "optimal"]), default="optimal")
@click.option("--delta", type=float, default=DEFAULT_DELTA)
@click.option("--json", "json_path", type=click.Path(), default=None)
@click.option("--dedupe-ties", is_flag=True, default=False)
def adversary_cmd(input_path, solver, delta, json_path, dedupe_ties):
    """Run a solver through the adversary; report the bad permutation and
    the increment accounting."""
    t0 = time.perf_counter()
    inst = _load(input_path, dedupe_ties)

    def run():
        state = adv.adversary_new(inst)
        counter = ComparisonCounter(record=True)
        cmp = adv.AdversaryComparator(state, counter)
        if solver == "sweep":
            got = report_participating_sweep(cmp)
        else:
            trees, runs = prepare(cmp)
            got, _ = run_instance_optimal(cmp, trees, runs, delta=delta)
        state.check_invariant()
        sigma, counters = adv.adversary_finalize(state)
        permuted = inst.permuted(sigma)
        replay_ok = replay_transcript(permuted, counter.transcript)
        output_ok = got == oracle_participating(permuted)
        return sigma, counters, counter.count, replay_ok, output_ok

    sigma, counters, comparisons, replay_ok, output_ok = _guard_internal(run)
    report = {
        "schema": SCHEMA_VERSION,
        "input_digest": _digest(input_path),
        "solver": solver,
        "n": inst.n,
        "sigma": sigma,
        "counters": counters.to_dict(),
        "comparisons": comparisons,
        "replay_consistent": replay_ok,
        "output_correct": output_ok,
        "wall_time_s": round(time.perf_counter() - t0, 6),
    }
    human = (f"adversary: solver={solver} n={inst.n} queries={counters.queries} "
             f"D={counters.D} D_post={counters.D_post} "
             f"replay={'ok' if replay_ok else 'FAILED'} "
             f"output={'ok' if output_ok else 'FAILED'}")
    _emit(report, json_path, human)
    if not (replay_ok and output_ok):
        raise _Fail("adversary consistency failed", EXIT_INTERNAL)


@main.command()
@click.option("--family", type=click.Choice(FAMILIES), default="diag-clusters")
@click.option("--n", type=int, required=True)
@click.option("--k", "ks", default="2", help="comma separated cluster counts")
@click.option("--seed", type=int, default=0)
@click.option("--solvers", default="optimal,sweep", help="comma separated")
@click.option("--delta", type=float, default=DEFAULT_DELTA)
@click.option("--out", type=click.Path(), default="-")
def bench(family, n, ks, seed, solvers, delta, out):
    """Sweep a family over k and emit a comparisons/entropy CSV."""
    try:
        k_list = [int(k) for k in ks.split(",") if k]
        solver_list = [s.strip() for s in solvers.split(",") if s.strip()]
        for s in solver_list:
            if s not in SOLVERS:
                raise BadParams(f"unknown solver {s!r}")
    except (ValueError, BadParams) as exc:
        raise _Fail(str(exc), EXIT_VALIDATION)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["family", "n", "k", "seed", "solver", "comparisons",
                     "h", "H_pikd", "nH1"])
    for k in k_list:
        try:
            rows = generate(family, n, k=k, seed=seed)
        except BadParams as exc:
            raise _Fail(str(exc), EXIT_VALIDATION)
        inst = validate_instance(rows)
        h = None
        er = None
        for solver in solver_list:
            res = _guard_internal(solve, inst, solver, "points", delta=delta)
            if h is None:
                h = len(res["participating"])
                er = ent.entropy_report(inst, set(res["participating"]),
                                        verify=n <= 1 << 16)
            writer.writerow([family, n, k, seed, solver, res["comparisons"],
                             h, f"{er.H_pikd:.6f}", f"{er.nH1_pikd:.3f}"])
    payload = buf.getvalue()
    if out == "-":
        click.echo(payload, nl=False)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
        click.echo(f"wrote bench CSV to {out}")


if __name__ == "__main__":
    main()
