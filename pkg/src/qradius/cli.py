"""Command-line interface: radius, boundary, sectorial, orlicz, verify, figure, regress.

Exit codes: 0 on success, 1 on domain errors (one machine-parseable line on
stderr), 2 on usage errors. QNR_SEED provides the default seed; explicit
flags always win.
"""

from __future__ import annotations

import functools
import json
import math
import sys
from pathlib import Path

import click
import numpy as np

from . import bounds, harness, linalg, plotting, qrange, sectorial
from .errors import QradiusError
from .orlicz import builtin, complementary, hermite_hadamard_integral, jensen_mean_check, kernel, right_inverse, young_check
from .qrange import QParam


def _parse_q(text: str) -> QParam:
    try:
        parts = text.split(",")
        if len(parts) == 2:
            qc = complex(float(parts[0]), float(parts[1]))
        elif len(parts) == 1:
            qc = complex(float(parts[0]))
        else:
            raise ValueError
    except ValueError:
        raise click.UsageError(f"--q must be a float or 're,im' pair, got {text!r}")
    m = abs(qc)
    if not (0.0 < m <= 1.0):
        raise click.UsageError(f"|q| must lie in (0, 1], got {m:g}")
    return QParam(qc)


def _parse_dims(text: str) -> tuple:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            dims = tuple(range(int(lo), int(hi) + 1))
        else:
            dims = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise click.UsageError(f"--dims must look like '2..6' or '2,3,4', got {text!r}")
    if not dims or any(d < 1 for d in dims):
        raise click.UsageError("dims must be positive")
    return dims


def domain_errors(fn):
    """Map domain exceptions to exit code 1 with a one-line stderr message."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except QradiusError as exc:
            click.echo(exc.one_line(), err=True)
            sys.exit(1)

    return wrapper


seed_option = click.option("--seed", type=int, envvar="QNR_SEED", default=1, show_default=True,
                           help="deterministic seed (env QNR_SEED)")


@click.group()
@click.version_option(package_name="qradius")
def main():
    """q-numerical radius toolkit: radii, range boundaries, sector tests, inequality campaigns."""


@main.command()
@click.option("--matrix", "matrix_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="matrix JSON file {dim, entries}")
@click.option("--q", "q_text", required=True, help="q as float or 're,im'")
@click.option("--restarts", type=int, default=32, show_default=True)
@seed_option
@click.option("--json", "as_json", is_flag=True, help="emit JSON")
@domain_errors
def radius(matrix_path, q_text, restarts, seed, as_json):
    """Estimate the q-numerical radius of a matrix."""
    qp = _parse_q(q_text)
    t = linalg.load_matrix(matrix_path)
    value, witness = qrange.q_numerical_radius(t, qp, restarts=restarts, seed=seed)
    if as_json:
        click.echo(json.dumps({
            "q": [qp.q.real, qp.q.imag], "modulus": qp.modulus, "radius": value,
            "witness": [[z.real, z.imag] for z in witness],
            "restarts": restarts, "seed": seed,
        }, sort_keys=True))
    else:
        click.echo(format(value, ".12g"))


@main.command()
@click.option("--matrix", "matrix_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--q", "q_text", required=True)
@click.option("--directions", type=int, default=256, show_default=True)
@click.option("--restarts", type=int, default=32, show_default=True)
@seed_option
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="write CSV here (default stdout); a PNG is rendered alongside")
@click.option("--no-png", is_flag=True, help="skip the PNG next to --out")
@domain_errors
def boundary(matrix_path, q_text, directions, restarts, seed, out_path, no_png):
    """Outer boundary polygon of the q-numerical range, as theta,h,vertex CSV."""
    qp = _parse_q(q_text)
    t = linalg.load_matrix(matrix_path)
    poly = qrange.boundary_polygon(t, qp, m=directions, restarts=restarts, seed=seed)
    csv_text = harness.serialize_boundary_csv(poly)
    if out_path:
        Path(out_path).write_text(csv_text)
        if not no_png:
            plotting.render_boundary(poly, Path(out_path).with_suffix(".png"))
    else:
        click.echo(csv_text, nl=False)


@main.command("sectorial")
@click.option("--matrix", "matrix_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--q", "q_text", required=True)
@click.option("--directions", type=int, default=256, show_default=True)
@click.option("--restarts", type=int, default=32, show_default=True)
@seed_option
@click.option("--json", "as_json", is_flag=True)
@domain_errors
def sectorial_cmd(matrix_path, q_text, directions, restarts, seed, as_json):
    """Decide q-sectoriality and estimate the sectorial index."""
    qp = _parse_q(q_text)
    a = linalg.load_matrix(matrix_path)
    v = sectorial.sectorial_index_estimate(a, qp, m=directions, restarts=restarts, seed=seed)
    payload = {
        "is_q_sectorial": v.is_q_sectorial,
        "alpha": v.alpha_estimate,
        "alpha_conservative": v.alpha_conservative,
        "min_real_part": v.min_real_part,
        "witness": [v.witness.real, v.witness.imag],
    }
    if as_json:
        click.echo(json.dumps(payload, sort_keys=True))
    elif v.is_q_sectorial:
        click.echo(f"sectorial alpha={v.alpha_estimate:.12g} min_re={v.min_real_part:.12g}")
    else:
        click.echo(f"not-sectorial min_re={v.min_real_part:.12g} "
                   f"witness={v.witness.real:.12g}{v.witness.imag:+.12g}i")


@main.command()
@click.option("--fn", "fn_name", required=True, help="gauge name, e.g. power:2 or exp_minus_one")
@click.option("--op", "op", required=True,
              type=click.Choice(["eval", "kernel", "inverse", "complement", "hh", "young"]))
@click.argument("args", nargs=-1, type=float)
@domain_errors
def orlicz(fn_name, op, args):
    """Evaluate gauge-function machinery; numeric arguments are positional."""
    f = builtin(fn_name)

    def need(n):
        if len(args) != n:
            raise click.UsageError(f"op {op} takes {n} numeric argument(s), got {len(args)}")

    if op == "eval":
        need(1)
        out = {"fn": f.label, "op": "eval", "t": args[0], "value": float(f.phi(args[0]))}
    elif op == "kernel":
        need(1)
        out = {"fn": f.label, "op": "kernel", "u": args[0], "value": kernel(f, args[0])}
    elif op == "inverse":
        need(1)
        out = {"fn": f.label, "op": "inverse", "v": args[0], "value": right_inverse(f, args[0])}
    elif op == "complement":
        need(1)
        pair = complementary(f)
        out = {"fn": f.label, "op": "complement", "s": args[0],
               "psi_name": pair.psi.label, "numeric": pair.numeric,
               "value": float(pair.psi(args[0]))}
    elif op == "hh":
        need(2)
        a, b = args
        out = {"fn": f.label, "op": "hh", "a": a, "b": b,
               "integral": hermite_hadamard_integral(f, a, b),
               "left": float(f.phi((a + b) / 2)),
               "right": (float(f.phi(a)) + float(f.phi(b))) / 2}
    else:  # young
        need(2)
        pair = complementary(f)
        lhs, rhs, slack = young_check(pair, args[0], args[1])
        out = {"fn": f.label, "op": "young", "u": args[0], "v": args[1],
               "lhs": lhs, "rhs": rhs, "slack": slack}
    click.echo(json.dumps(out, sort_keys=True))


@main.command()
@click.option("--bounds", "bounds_text", default="all", show_default=True,
              help="comma-separated bound ids, or 'all'")
@click.option("--trials", type=int, default=200, show_default=True,
              help="size of the generic matrix pool")
@click.option("--dims", "dims_text", default="2..6", show_default=True)
@click.option("--q-grid", "q_grid_text", default="0.1,0.3,0.5,0.7,0.9,1.0", show_default=True)
@click.option("--phi", "phi_names", multiple=True,
              help="gauge names (repeatable); default power:2, exp_minus_one, power_over_p:2")
@seed_option
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None,
              help="write the JSON report here; a PNG chart is rendered alongside")
@click.option("--no-png", is_flag=True, help="skip the PNG next to --report")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="load a campaign config JSON; explicit flags override")
@click.option("--dump-config", is_flag=True, help="print the effective config and exit")
@click.pass_context
@domain_errors
def verify(ctx, bounds_text, trials, dims_text, q_grid_text, phi_names, seed,
           report_path, no_png, config_path, dump_config):
    """Run the inequality verification campaign."""
    base = harness.CampaignConfig.from_json(Path(config_path).read_text()) if config_path else None

    def picked(name, value):
        src = ctx.get_parameter_source(name)
        return src is not None and src.name != "DEFAULT"

    try:
        q_grid = tuple(float(v) for v in q_grid_text.split(","))
    except ValueError:
        raise click.UsageError(f"--q-grid must be comma-separated floats, got {q_grid_text!r}")
    ids = harness.ALL_BOUND_IDS if bounds_text == "all" else tuple(v.strip() for v in bounds_text.split(","))
    cfg = harness.CampaignConfig(
        seed=seed if (base is None or picked("seed", seed)) else base.seed,
        dims=_parse_dims(dims_text) if (base is None or picked("dims_text", dims_text)) else base.dims,
        q_grid=q_grid if (base is None or picked("q_grid_text", q_grid_text)) else base.q_grid,
        trials=trials if (base is None or picked("trials", trials)) else base.trials,
        bound_ids=ids if (base is None or picked("bounds_text", bounds_text)) else base.bound_ids,
        phi_names=tuple(phi_names) if phi_names else (base.phi_names if base else harness.DEFAULT_PHI),
        out_path=report_path if report_path else (base.out_path if base else None),
    )
    if dump_config:
        click.echo(cfg.to_json())
        return
    report = harness.run_campaign(cfg)
    for row in report["results"]:
        click.echo(f"{row['bound_id']:4s} trials={row['trials']:<5d} violations={row['violations']} "
                   f"warnings={row['warnings']} min_slack="
                   f"{'n/a' if row['min_slack'] is None else format(row['min_slack'], '.3e')}")
    total_v = sum(r["violations"] for r in report["results"])
    total_w = sum(r["warnings"] for r in report["results"])
    click.echo(f"total violations={total_v} warnings={total_w}")
    if cfg.out_path and not no_png:
        plotting.render_report(report, Path(cfg.out_path).with_suffix(".png"))


@main.command()
@click.option("--id", "figure_id", required=True, help="fig1, fig4, fig5 or fig6")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="write CSV here (default stdout); a PNG is rendered alongside")
@click.option("--no-png", is_flag=True)
@domain_errors
def figure(figure_id, out_path, no_png):
    """Emit the data series behind a comparison figure."""
    fd = harness.figure_data(figure_id)
    csv_text = harness.serialize_figure_csv(fd)
    if out_path:
        Path(out_path).write_text(csv_text)
        if not no_png:
            plotting.render_figure(fd, Path(out_path).with_suffix(".png"))
    else:
        click.echo(csv_text, nl=False)


@main.command()
@seed_option
@click.option("--json", "as_json", is_flag=True)
@domain_errors
def regress(seed, as_json):
    """Run the fixed worked-example regression; exit 1 if any entry fails."""
    entries = harness.paper_examples_regression(seed=seed)
    if as_json:
        click.echo(json.dumps(entries, sort_keys=True))
    else:
        for e in entries:
            click.echo(f"{'PASS' if e['passed'] else 'FAIL'} {e['name']}: "
                       f"expected={e['expected']} actual={e['actual']} tol={e['tol']}")
    failures = [e for e in entries if not e["passed"]]
    click.echo(f"{len(entries) - len(failures)}/{len(entries)} passed")
    if failures:
        sys.exit(1)


if __name__ == "__main__":
    main()
